"""Command-line front end.

Each subcommand assembles a request model, then either calls the
in-process handler or, with --server, posts it to a running service.
Exit codes: 0 success, 1 verification found a counterexample, 2 parse
or argument failure, 3 validation or composition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

import httpx
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from .errors import FormatError, RegasysError
from .files import _read_doc, load_generator
from .schemas import SignalDoc, SystemDoc, generator_from_core
from .serial import MUTATIONS
from .service import (
    ComposeRequest,
    ExportRequest,
    FuzzRequest,
    SimulateRequest,
    VerifyRequest,
    handle_compose,
    handle_export,
    handle_fuzz,
    handle_simulate,
    handle_verify,
)
from .ticks import parse_rattime


@dataclass(frozen=True)
class RunConfig:
    """What a parsed invocation asks for."""

    command: str
    paths: tuple[Path, ...]
    horizon: Optional[Fraction]
    seed: Optional[int]
    output: Optional[Path]


def _load_system_doc(path: str) -> SystemDoc:
    doc = _read_doc(path, SystemDoc)
    if isinstance(doc.generator, str):
        gen = load_generator(Path(path).parent / doc.generator)
        doc = doc.model_copy(update={"generator": generator_from_core(gen)})
    return doc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _post(server: str, route: str, payload: BaseModel) -> dict:
    resp = httpx.post(
        server.rstrip("/") + route,
        json=payload.model_dump(by_alias=True, mode="json"),
        timeout=600.0,
    )
    if resp.status_code == 400:
        body = resp.json()
        kind = body.get("kind", "error")
        message = body.get("message", "")
        if kind == "format":
            raise FormatError(message)
        raise RegasysError(f"{kind}: {message}")
    if resp.status_code != 200:
        raise FormatError(f"server returned {resp.status_code}: {resp.text}")
    return resp.json()


def _dispatch(args: argparse.Namespace, route: str, payload: BaseModel, handler) -> dict:
    if args.server:
        return _post(args.server, route, payload)
    return handler(payload).model_dump(by_alias=True, mode="json")


def cmd_simulate(args: argparse.Namespace) -> int:
    req = SimulateRequest(
        system=_load_system_doc(args.system),
        input_index=args.input_index,
        mu=args.mu,
        rho_index=args.rho_index,
        horizon=args.horizon,
    )
    data = _dispatch(args, "/simulate", req, handle_simulate)
    _emit(data["waveform_csv"], args.out)
    return 0


def cmd_compose(args: argparse.Namespace) -> int:
    req = ComposeRequest(f=_load_system_doc(args.f), h=_load_system_doc(args.h))
    data = _dispatch(args, "/compose", req, handle_compose)
    _emit(json.dumps(data["system"], indent=2) + "\n", args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    req = VerifyRequest(
        f=_load_system_doc(args.f), h=_load_system_doc(args.h), mutant=args.mutant
    )
    data = _dispatch(args, "/verify", req, handle_verify)
    print(data["summary"])
    if args.out:
        report = {"overall": data["overall"], "cases": data["cases"]}
        Path(args.out).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return 0 if data["overall"] else 1


def cmd_fuzz(args: argparse.Namespace) -> int:
    req = FuzzRequest(
        n=args.n,
        m=args.m,
        p=args.p,
        count=args.count,
        seed=args.seed,
        exhaustive=args.exhaustive,
    )
    data = _dispatch(args, "/fuzz", req, handle_fuzz)
    word = "pass" if data["overall"] else "FAIL"
    print(
        f"seed {data['seed']}: {data['cases_run']} cases, {word}"
        + (f", failing cases {data['failures']}" if data["failures"] else "")
    )
    return 0 if data["overall"] else 1


def cmd_export(args: argparse.Namespace) -> int:
    req = ExportRequest(signal=_read_doc(args.signal, SignalDoc), horizon=args.horizon)
    data = _dispatch(args, "/export", req, handle_export)
    _emit(data["waveform_csv"], args.out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regasys",
        description=(
            "Simulate asynchronous Boolean systems over exact rational time "
            "and verify their serial connections"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--server",
            metavar="URL",
            default=None,
            help="post to a running service instead of computing in-process",
        )
        p.add_argument("--out", metavar="PATH", default=None, help="output file")

    p = sub.add_parser("simulate", help="run one orbit and export its waveform")
    p.add_argument("--system", required=True, metavar="PATH")
    p.add_argument("--input-index", type=int, default=0, metavar="K")
    p.add_argument("--mu", required=True, metavar="BITS", help="start state")
    p.add_argument("--rho-index", type=int, default=0, metavar="K")
    p.add_argument("--horizon", required=True, metavar="RAT")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compose", help="write the serial connection of two systems")
    p.add_argument("--f", required=True, metavar="PATH", help="first stage")
    p.add_argument("--h", required=True, metavar="PATH", help="second stage")
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="check the serial connection theorem")
    p.add_argument("--f", required=True, metavar="PATH")
    p.add_argument("--h", required=True, metavar="PATH")
    p.add_argument(
        "--mutant",
        choices=sorted(MUTATIONS),
        default=None,
        help="deliberately miswire the generated route (harness self-test)",
    )
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="verify random or exhaustive system pairs")
    p.add_argument("--n", type=int, default=1, help="first-stage state width")
    p.add_argument("--m", type=int, default=1, help="input width")
    p.add_argument("--p", type=int, default=1, help="second-stage state width")
    p.add_argument("--count", type=_positive_int, default=10, metavar="N")
    p.add_argument("--seed", type=int, required=True, metavar="N")
    p.add_argument("--exhaustive", action="store_true")
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("export", help="export a signal file as a CSV waveform")
    p.add_argument("--signal", required=True, metavar="PATH")
    p.add_argument("--horizon", required=True, metavar="RAT")
    common(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    paths = tuple(
        Path(getattr(args, name))
        for name in ("system", "f", "h", "signal")
        if getattr(args, name, None)
    )
    horizon = getattr(args, "horizon", None)
    return RunConfig(
        command=args.command,
        paths=paths,
        horizon=parse_rattime(horizon) if horizon else None,
        seed=getattr(args, "seed", None),
        output=Path(args.out) if getattr(args, "out", None) else None,
    )


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        config_from_args(args)  # argument-level literals checked up front
        return args.func(args)
    except FormatError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return 2
    except PydanticValidationError as exc:
        print(f"error (format): {exc}", file=sys.stderr)
        return 2
    except RegasysError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return 3
    except httpx.HTTPError as exc:
        print(f"error (transport): {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
