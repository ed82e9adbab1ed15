"""Systems: a generator with admitted inputs, start states, and schedules.

A system maps each admitted input signal to the set of runs obtained
from every admitted (start state, schedule) pair for that input.  Sets
of signals compare by mutual semantic containment, never by
representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .boolfn import BoolVec, GeneratorFn
from .errors import DimensionError, UnknownInputError, ValidationError
from .orbit import orbit
from .progressive import ProgressiveFn
from .signals import Signal, canonicalize, signals_equal

CompKey = tuple[BoolVec, int]


class RegularSystem:
    """Generator plus, per admitted input, start states and schedules.

    ``initial_states[k]`` lists the admitted start states for input k;
    ``computation[(state, k)]`` lists the admitted schedules for that
    start state under input k.  The computation table must cover exactly
    the admitted (state, input) pairs, with no entry empty.
    """

    def __init__(
        self,
        generator: GeneratorFn,
        inputs: Iterable[Signal],
        initial_states: Iterable[Iterable[BoolVec]],
        computation: Mapping[CompKey, Iterable[ProgressiveFn]],
    ):
        self.generator = generator
        self.inputs = tuple(inputs)
        self.initial_states = tuple(
            tuple(dict.fromkeys(states)) for states in initial_states
        )
        self.computation = {
            key: tuple(rhos) for key, rhos in computation.items()
        }
        n, m = generator.state_width, generator.input_width
        if not self.inputs:
            raise ValidationError("a system needs at least one admitted input")
        for u in self.inputs:
            if u.width != m:
                raise DimensionError(f"input width {u.width} != {m}")
        if len(self.initial_states) != len(self.inputs):
            raise ValidationError(
                f"{len(self.initial_states)} start-state sets for "
                f"{len(self.inputs)} inputs"
            )
        admitted = set()
        for k, states in enumerate(self.initial_states):
            if not states:
                raise ValidationError(f"no start state admitted for input {k}")
            for state in states:
                if state.width != n:
                    raise DimensionError(f"start state width {state.width} != {n}")
                admitted.add((state, k))
        if set(self.computation) != admitted:
            missing = admitted - set(self.computation)
            extra = set(self.computation) - admitted
            raise ValidationError(
                f"computation table must cover exactly the admitted pairs; "
                f"missing {sorted((str(s), k) for s, k in missing)}, "
                f"extra {sorted((str(s), k) for s, k in extra)}"
            )
        for (state, k), rhos in self.computation.items():
            if not rhos:
                raise ValidationError(
                    f"no schedule admitted for state {state} under input {k}"
                )
            for rho in rhos:
                if rho.width != n:
                    raise DimensionError(f"schedule width {rho.width} != {n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RegularSystem):
            return NotImplemented
        return (
            self.generator == other.generator
            and self.inputs == other.inputs
            and self.initial_states == other.initial_states
            and self.computation == other.computation
        )

    def __repr__(self) -> str:
        return (
            f"RegularSystem(n={self.generator.state_width}, "
            f"m={self.generator.input_width}, inputs={len(self.inputs)})"
        )


def find_input(system: RegularSystem, u: Signal) -> Optional[int]:
    """Index of the admitted input semantically equal to ``u``."""
    for k, candidate in enumerate(system.inputs):
        if candidate.width == u.width and signals_equal(candidate, u):
            return k
    return None


@dataclass(frozen=True)
class SignalSet:
    """Finite set of signals, deduplicated semantically."""

    width: int
    members: tuple[Signal, ...]

    @classmethod
    def from_iterable(cls, width: int, signals: Iterable[Signal]) -> "SignalSet":
        kept: list[Signal] = []
        for sig in signals:
            if sig.width != width:
                raise DimensionError(f"member width {sig.width} != {width}")
            sig = canonicalize(sig)
            if not any(signals_equal(sig, other) for other in kept):
                kept.append(sig)
        return cls(width, tuple(kept))

    def contains(self, sig: Signal) -> bool:
        return any(signals_equal(sig, member) for member in self.members)


def sets_equal(a: SignalSet, b: SignalSet) -> bool:
    if a.width != b.width:
        raise DimensionError(f"cannot compare set widths {a.width} and {b.width}")
    return all(b.contains(x) for x in a.members) and all(
        a.contains(y) for y in b.members
    )


def first_missing(a: SignalSet, b: SignalSet) -> Optional[Signal]:
    """A member of one set absent from the other, if any."""
    for x in a.members:
        if not b.contains(x):
            return x
    for y in b.members:
        if not a.contains(y):
            return y
    return None


def evaluate_system(system: RegularSystem, u: Signal) -> SignalSet:
    """All runs for ``u``: one orbit per admitted (state, schedule) pair."""
    k = find_input(system, u)
    if k is None:
        raise UnknownInputError("the signal is not an admitted input of this system")
    runs = []
    for state in system.initial_states[k]:
        for rho in system.computation[(state, k)]:
            runs.append(orbit(system.generator, rho, state, u))
    return SignalSet.from_iterable(system.generator.state_width, runs)


@dataclass(frozen=True)
class StateSpaceReport:
    """Outcome of the admitted-runs check, with a witness on failure."""

    ok: bool
    input_index: Optional[int] = None
    missing: Optional[Signal] = None

    def __bool__(self) -> bool:
        return self.ok


def check_state_space(first: RegularSystem, second: RegularSystem) -> StateSpaceReport:
    """Does the second system admit every run the first can produce?"""
    if second.generator.input_width != first.generator.state_width:
        raise DimensionError(
            f"second system reads width {second.generator.input_width}, "
            f"first produces width {first.generator.state_width}"
        )
    for k, u in enumerate(first.inputs):
        for run in evaluate_system(first, u).members:
            if find_input(second, run) is None:
                return StateSpaceReport(False, k, run)
    return StateSpaceReport(True)
