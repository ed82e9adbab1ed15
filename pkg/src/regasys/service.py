"""HTTP service wrapping the core library.

Handlers are plain functions over pydantic models, so the CLI can call
them in-process; the FastAPI app is a thin routing layer.  Domain
errors map to status 400 with the error kind in the body.
"""

from __future__ import annotations

import random
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .boolfn import BoolVec
from .errors import RegasysError, ValidationError
from .fixtures import fixture_system_pair
from .files import format_waveform
from .generate import closure_partner, rand_system
from .orbit import orbit
from .schemas import (
    SignalDoc,
    SystemDoc,
    signal_from_core,
    signal_to_core,
    system_from_core,
    system_to_core,
)
from .serial import compose_systems, verify_serial_theorem
from .signals import Signal
from .systems import RegularSystem
from .ticks import parse_rattime


class SimulateRequest(BaseModel):
    system: SystemDoc
    input_index: int = 0
    mu: str = Field(pattern=r"^[01]+$")
    rho_index: int = 0
    horizon: str = Field(pattern=r"^-?[0-9]+(/[0-9]+)?$")


class SimulateResponse(BaseModel):
    orbit: SignalDoc
    waveform_csv: str


class ComposeRequest(BaseModel):
    f: SystemDoc
    h: SystemDoc


class ComposeResponse(BaseModel):
    system: SystemDoc


class VerifyRequest(BaseModel):
    f: SystemDoc
    h: SystemDoc
    mutant: Optional[str] = None


class CaseDoc(BaseModel):
    input_index: int
    lemma6: bool
    lemma8: bool
    theorem22: bool


class VerifyResponse(BaseModel):
    overall: bool
    cases: list[CaseDoc]
    summary: str


class FuzzRequest(BaseModel):
    n: int = Field(default=1, ge=1, le=2)
    m: int = Field(default=1, ge=1, le=2)
    p: int = Field(default=1, ge=1, le=2)
    count: int = Field(default=10, ge=1)
    seed: int = 0
    exhaustive: bool = False


class FuzzResponse(BaseModel):
    overall: bool
    cases_run: int
    failures: list[int]
    seed: int


class ExportRequest(BaseModel):
    signal: SignalDoc
    horizon: str = Field(pattern=r"^-?[0-9]+(/[0-9]+)?$")


class ExportResponse(BaseModel):
    waveform_csv: str


def _pick_rho(system: RegularSystem, input_index: int, mu: BoolVec, rho_index: int):
    if not 0 <= input_index < len(system.inputs):
        raise ValidationError(f"input_index {input_index} out of range")
    key = (mu, input_index)
    if key not in system.computation:
        raise ValidationError(
            f"state {mu} is not an admitted start state for input {input_index}"
        )
    rhos = system.computation[key]
    if not 0 <= rho_index < len(rhos):
        raise ValidationError(f"rho_index {rho_index} out of range")
    return rhos[rho_index]


def handle_simulate(req: SimulateRequest) -> SimulateResponse:
    system = system_to_core(req.system)
    mu = BoolVec.from_string(req.mu)
    rho = _pick_rho(system, req.input_index, mu, req.rho_index)
    u = system.inputs[req.input_index]
    horizon = parse_rattime(req.horizon)
    run = orbit(system.generator, rho, mu, u)
    return SimulateResponse(
        orbit=signal_from_core(run),
        waveform_csv=format_waveform(run, horizon),
    )


def handle_compose(req: ComposeRequest) -> ComposeResponse:
    f = system_to_core(req.f)
    h = system_to_core(req.h)
    return ComposeResponse(system=system_from_core(compose_systems(f, h)))


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    f = system_to_core(req.f)
    h = system_to_core(req.h)
    report = verify_serial_theorem(f, h, mutation=req.mutant)
    data = report.to_dict()
    return VerifyResponse(
        overall=data["overall"],
        cases=[CaseDoc(**c) for c in data["cases"]],
        summary=report.summary(),
    )


def handle_fuzz(req: FuzzRequest) -> FuzzResponse:
    failures: list[int] = []
    if req.exhaustive:
        if (req.n, req.m, req.p) != (1, 1, 1):
            raise ValidationError("the exhaustive sweep is defined at width 1")
        case = 0
        for a in range(16):
            for b in range(16):
                f, h = fixture_system_pair(a, b)
                if not verify_serial_theorem(f, h).overall:
                    failures.append(case)
                case += 1
        return FuzzResponse(
            overall=not failures, cases_run=case, failures=failures, seed=req.seed
        )
    rng = random.Random(req.seed)
    for case in range(req.count):
        f = rand_system(rng, req.n, req.m, input_count=rng.randint(1, 2))
        h = closure_partner(rng, f, req.p)
        if not verify_serial_theorem(f, h).overall:
            failures.append(case)
    return FuzzResponse(
        overall=not failures, cases_run=req.count, failures=failures, seed=req.seed
    )


def handle_export(req: ExportRequest) -> ExportResponse:
    sig: Signal = signal_to_core(req.signal)
    return ExportResponse(waveform_csv=format_waveform(sig, parse_rattime(req.horizon)))


def create_app() -> FastAPI:
    app = FastAPI(title="regasys", version="0.1.0")

    @app.exception_handler(RegasysError)
    async def _domain_error(_: Request, exc: RegasysError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"kind": exc.kind, "message": str(exc)}
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        return handle_simulate(req)

    @app.post("/compose", response_model=ComposeResponse)
    def compose(req: ComposeRequest) -> ComposeResponse:
        return handle_compose(req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        return handle_verify(req)

    @app.post("/fuzz", response_model=FuzzResponse)
    def fuzz(req: FuzzRequest) -> FuzzResponse:
        return handle_fuzz(req)

    @app.post("/export", response_model=ExportResponse)
    def export(req: ExportRequest) -> ExportResponse:
        return handle_export(req)

    return app


app = create_app()
