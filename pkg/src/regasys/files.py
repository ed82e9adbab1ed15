"""Loading and saving the JSON document formats and CSV waveforms."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from pydantic import ValidationError as PydanticValidationError

from .boolfn import GeneratorFn
from .errors import FormatError
from .progressive import ProgressiveFn
from .schemas import (
    GeneratorDoc,
    ProgressiveDoc,
    SignalDoc,
    SystemDoc,
    generator_from_core,
    generator_to_core,
    progressive_from_core,
    progressive_to_core,
    signal_from_core,
    signal_to_core,
    system_from_core,
    system_to_core,
)
from .signals import Signal, canonicalize, event_ticks, eval_signal
from .systems import RegularSystem
from .ticks import format_rattime

PathLike = Union[str, Path]


def _read_doc(path: PathLike, model):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return model.model_validate(data)
    except PydanticValidationError as exc:
        raise FormatError(f"{path} does not match the expected shape: {exc}") from exc


def _write_doc(path: PathLike, doc) -> None:
    text = json.dumps(doc.model_dump(by_alias=True, exclude_none=True), indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_signal(path: PathLike) -> Signal:
    return signal_to_core(_read_doc(path, SignalDoc))


def save_signal(path: PathLike, sig: Signal) -> None:
    _write_doc(path, signal_from_core(sig))


def load_progressive(path: PathLike) -> ProgressiveFn:
    return progressive_to_core(_read_doc(path, ProgressiveDoc))


def save_progressive(path: PathLike, rho: ProgressiveFn) -> None:
    _write_doc(path, progressive_from_core(rho))


def load_generator(path: PathLike) -> GeneratorFn:
    return generator_to_core(_read_doc(path, GeneratorDoc))


def save_generator(path: PathLike, gen: GeneratorFn) -> None:
    _write_doc(path, generator_from_core(gen))


def load_system(path: PathLike) -> RegularSystem:
    """Load a system; a string generator is a path relative to the file."""
    path = Path(path)
    doc = _read_doc(path, SystemDoc)
    generator = None
    if isinstance(doc.generator, str):
        generator = load_generator(path.parent / doc.generator)
    return system_to_core(doc, generator)


def save_system(path: PathLike, system: RegularSystem) -> None:
    _write_doc(path, system_from_core(system))


def save_report(path: PathLike, report_dict: dict) -> None:
    Path(path).write_text(
        json.dumps(report_dict, indent=2) + "\n", encoding="utf-8"
    )


def waveform_rows(sig: Signal, horizon: Fraction) -> list[list[str]]:
    """Header plus one row per event strictly below the horizon.

    The first data row carries the initial value with time "-inf".
    """
    sig = canonicalize(sig)
    header = ["time"] + [f"bit_{i}" for i in range(sig.width)]
    rows = [header, ["-inf"] + [str(b) for b in sig.initial.bits]]
    for t in event_ticks(sig).times_below(horizon):
        value = eval_signal(sig, t)
        rows.append([format_rattime(t)] + [str(b) for b in value.bits])
    return rows


def format_waveform(sig: Signal, horizon: Fraction) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerows(waveform_rows(sig, horizon))
    return out.getvalue()


def save_waveform(path: PathLike, sig: Signal, horizon: Fraction) -> None:
    Path(path).write_text(format_waveform(sig, horizon), encoding="utf-8")
