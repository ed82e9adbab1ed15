"""JSON document models and their conversions to core objects.

The on-disk formats use bit strings (most significant coordinate first)
and rational literals ("7/2" or "3").  Pydantic validates shape; core
constructors validate semantics (ordering, widths, coverage).
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .boolfn import BoolVec, GeneratorFn, all_vectors, compose_serial_generator
from .errors import FormatError
from .progressive import ProgressiveFn, ProgressiveTail, make_progressive
from .signals import CONSTANT, PeriodicTail, Signal, canonicalize
from .systems import RegularSystem
from .ticks import format_rattime, parse_rattime

RAT = r"^-?[0-9]+(/[0-9]+)?$"
BITS = r"^[01]+$"


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SwitchDoc(_Doc):
    t: str = Field(pattern=RAT)
    value: str = Field(pattern=BITS)


class PatternEntryDoc(_Doc):
    offset: str = Field(pattern=RAT)
    value: str = Field(pattern=BITS)


class ConstantTailDoc(_Doc):
    kind: Literal["constant"]


class PeriodicTailDoc(_Doc):
    kind: Literal["periodic"]
    start: str = Field(pattern=RAT)
    period: str = Field(pattern=RAT)
    pattern: list[PatternEntryDoc]


class SignalDoc(_Doc):
    width: int
    initial: str = Field(pattern=BITS)
    switches: list[SwitchDoc] = Field(default_factory=list)
    tail: Union[ConstantTailDoc, PeriodicTailDoc] = Field(discriminator="kind")


class ProgressiveTailDoc(_Doc):
    start: str = Field(pattern=RAT)
    period: str = Field(pattern=RAT)
    pattern: list[PatternEntryDoc]


class ProgressiveDoc(_Doc):
    width: int
    prefix: list[SwitchDoc] = Field(default_factory=list)
    tail: ProgressiveTailDoc


class GeneratorRowDoc(_Doc):
    state: str = Field(pattern=BITS)
    input: str = Field(pattern=BITS)
    next_state: str = Field(alias="next", pattern=BITS)


class GeneratorDoc(_Doc):
    state_width: int
    input_width: int
    rows: list[GeneratorRowDoc]
    # present only for serial compositions: the two stage generators.
    # The dense rows above must match their composition; masked updates
    # of a staged generator feed the first stage's masked output to the
    # second stage, which a dense table alone cannot express.
    stages: Optional[list["GeneratorDoc"]] = None


class InitialEntryDoc(_Doc):
    input_index: int
    states: list[str]


class ComputationEntryDoc(_Doc):
    state: str = Field(pattern=BITS)
    input_index: int
    rhos: list[ProgressiveDoc]


class SystemDoc(_Doc):
    generator: Union[GeneratorDoc, str]
    inputs: list[SignalDoc]
    initial_fn: list[InitialEntryDoc]
    computation_fn: list[ComputationEntryDoc]


def signal_to_core(doc: SignalDoc) -> Signal:
    switches = tuple(
        (parse_rattime(s.t), BoolVec.from_string(s.value)) for s in doc.switches
    )
    if isinstance(doc.tail, ConstantTailDoc):
        tail = CONSTANT
    else:
        tail = PeriodicTail(
            parse_rattime(doc.tail.start),
            parse_rattime(doc.tail.period),
            tuple(
                (parse_rattime(e.offset), BoolVec.from_string(e.value))
                for e in doc.tail.pattern
            ),
        )
    return Signal(doc.width, BoolVec.from_string(doc.initial), switches, tail)


def signal_from_core(sig: Signal) -> SignalDoc:
    sig = canonicalize(sig)
    if isinstance(sig.tail, PeriodicTail):
        tail: Union[ConstantTailDoc, PeriodicTailDoc] = PeriodicTailDoc(
            kind="periodic",
            start=format_rattime(sig.tail.start),
            period=format_rattime(sig.tail.period),
            pattern=[
                PatternEntryDoc(offset=format_rattime(t), value=str(v))
                for t, v in sig.tail.pattern
            ],
        )
    else:
        tail = ConstantTailDoc(kind="constant")
    return SignalDoc(
        width=sig.width,
        initial=str(sig.initial),
        switches=[
            SwitchDoc(t=format_rattime(t), value=str(v)) for t, v in sig.switches
        ],
        tail=tail,
    )


def progressive_to_core(doc: ProgressiveDoc) -> ProgressiveFn:
    prefix = tuple(
        (parse_rattime(s.t), BoolVec.from_string(s.value)) for s in doc.prefix
    )
    tail = ProgressiveTail(
        parse_rattime(doc.tail.start),
        parse_rattime(doc.tail.period),
        tuple(
            (parse_rattime(e.offset), BoolVec.from_string(e.value))
            for e in doc.tail.pattern
        ),
    )
    return make_progressive(doc.width, prefix, tail)


def progressive_from_core(rho: ProgressiveFn) -> ProgressiveDoc:
    return ProgressiveDoc(
        width=rho.width,
        prefix=[
            SwitchDoc(t=format_rattime(t), value=str(v)) for t, v in rho.prefix
        ],
        tail=ProgressiveTailDoc(
            start=format_rattime(rho.tail.start),
            period=format_rattime(rho.tail.period),
            pattern=[
                PatternEntryDoc(offset=format_rattime(t), value=str(v))
                for t, v in rho.tail.pattern
            ],
        ),
    )


def generator_to_core(doc: GeneratorDoc) -> GeneratorFn:
    n, m = doc.state_width, doc.input_width
    table: dict[tuple[str, str], BoolVec] = {}
    for row in doc.rows:
        key = (row.state, row.input)
        if key in table:
            raise FormatError(f"duplicate row for state {row.state} input {row.input}")
        table[key] = BoolVec.from_string(row.next_state)
    rows = []
    for state in all_vectors(n):
        for inp in all_vectors(m):
            key = (str(state), str(inp))
            if key not in table:
                raise FormatError(f"missing row for state {key[0]} input {key[1]}")
            rows.append(table[key])
    if len(doc.rows) != len(rows):
        extra = set(table) - {
            (str(s), str(i)) for s in all_vectors(n) for i in all_vectors(m)
        }
        raise FormatError(f"rows outside the table domain: {sorted(extra)}")
    gen = GeneratorFn(n, m, tuple(rows))
    if doc.stages is not None:
        if len(doc.stages) != 2:
            raise FormatError("stages must list exactly the two stage generators")
        first, second = (generator_to_core(stage) for stage in doc.stages)
        staged = compose_serial_generator(first, second)
        if staged.table != gen.table or staged.input_width != m:
            raise FormatError("rows do not match the composition of the stages")
        return staged
    return gen


def generator_from_core(gen: GeneratorFn) -> GeneratorDoc:
    rows = []
    for state in all_vectors(gen.state_width):
        for inp in all_vectors(gen.input_width):
            nxt = gen.table[(state.index << gen.input_width) | inp.index]
            rows.append(
                GeneratorRowDoc(state=str(state), input=str(inp), next=str(nxt))
            )
    stages = None
    if gen.serial_stages is not None:
        stages = [generator_from_core(stage) for stage in gen.serial_stages]
    return GeneratorDoc(
        state_width=gen.state_width,
        input_width=gen.input_width,
        rows=rows,
        stages=stages,
    )


def system_to_core(doc: SystemDoc, generator: Optional[GeneratorFn] = None) -> RegularSystem:
    """Build a system; an inline generator may be overridden by a resolved one."""
    if generator is None:
        if isinstance(doc.generator, str):
            raise FormatError(
                "generator is a path; resolve it before building the system"
            )
        generator = generator_to_core(doc.generator)
    inputs = [signal_to_core(s) for s in doc.inputs]
    initial: list[tuple[BoolVec, ...]] = [() for _ in inputs]
    for entry in doc.initial_fn:
        k = entry.input_index
        if not 0 <= k < len(inputs):
            raise FormatError(f"initial_fn input_index {k} out of range")
        if initial[k]:
            raise FormatError(f"initial_fn lists input_index {k} twice")
        initial[k] = tuple(BoolVec.from_string(s) for s in entry.states)
    computation = {}
    for entry in doc.computation_fn:
        key = (BoolVec.from_string(entry.state), entry.input_index)
        if key in computation:
            raise FormatError(
                f"computation_fn lists state {entry.state} "
                f"input_index {entry.input_index} twice"
            )
        computation[key] = tuple(progressive_to_core(r) for r in entry.rhos)
    return RegularSystem(generator, inputs, initial, computation)


def system_from_core(system: RegularSystem) -> SystemDoc:
    return SystemDoc(
        generator=generator_from_core(system.generator),
        inputs=[signal_from_core(u) for u in system.inputs],
        initial_fn=[
            InitialEntryDoc(input_index=k, states=[str(s) for s in states])
            for k, states in enumerate(system.initial_states)
        ],
        computation_fn=[
            ComputationEntryDoc(
                state=str(state),
                input_index=k,
                rhos=[progressive_from_core(r) for r in rhos],
            )
            for (state, k), rhos in sorted(
                system.computation.items(), key=lambda kv: (kv[0][1], str(kv[0][0]))
            )
        ],
    )
