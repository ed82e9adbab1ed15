"""Serial connection of two systems, built two ways and compared.

The reference route pairs every stage-one run with every stage-two run
on it and takes pointwise products.  The generated route composes the
two generators, constructs start-state pairs and schedule pairs, and
runs the composed system directly.  The verification entry point checks
that both routes agree, per input, as semantic signal sets.

The two routes share only the orbit engine and signal equality; every
set is assembled by independent code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .boolfn import BoolVec, GeneratorFn, compose_serial_generator
from .errors import CompositionError, UnknownInputError, ValidationError
from .orbit import orbit
from .progressive import ProgressiveFn, product_progressive
from .signals import Signal, describe_signal, product_signal, signals_equal
from .systems import (
    RegularSystem,
    SignalSet,
    check_state_space,
    evaluate_system,
    find_input,
    sets_equal,
)

# Deliberate faults for the verification harness, selectable by name.
# Each weakens one clause of the pair construction; the checker must
# notice on a sensitive fixture.
MUTATIONS = {
    "drop-delta-filter": (
        "pair every stage-one schedule with stage-two schedules even when "
        "the run it produces does not admit the chosen stage-two start state"
    ),
    "single-rho": (
        "let only the first listed stage-one schedule decide which "
        "start-state pairs exist"
    ),
}


def _check_mutation(mutation: Optional[str]) -> None:
    if mutation is not None and mutation not in MUTATIONS:
        raise ValidationError(
            f"unknown mutation {mutation!r}; choose from {sorted(MUTATIONS)}"
        )


def _stage_two_index(h: RegularSystem, x: Signal) -> int:
    j = find_input(h, x)
    if j is None:
        raise CompositionError(
            f"stage-one run {describe_signal(x)} is not an admitted "
            f"input of the second system"
        )
    return j


def classical_composition(f: RegularSystem, h: RegularSystem, u: Signal) -> SignalSet:
    """Plain relational composition: stage-two runs only, stage-one dropped.

    Demonstrational contrast to the serial connection; its members have
    the second system's state width, so no equality with the serial sets
    is ever asserted.
    """
    runs = []
    for x in evaluate_system(f, u).members:
        if find_input(h, x) is None:
            raise CompositionError(
                f"stage-one run {describe_signal(x)} is not an admitted "
                f"input of the second system"
            )
        runs.extend(evaluate_system(h, x).members)
    return SignalSet.from_iterable(h.generator.state_width, runs)


def serial_set_oracle(f: RegularSystem, h: RegularSystem, u: Signal) -> SignalSet:
    """Reference answer: products of stage-one runs with their stage-two runs."""
    width = f.generator.state_width + h.generator.state_width
    products = []
    for x in evaluate_system(f, u).members:
        try:
            stage_two = evaluate_system(h, x)
        except UnknownInputError:
            raise CompositionError(
                f"stage-one run {describe_signal(x)} is not an admitted "
                f"input of the second system"
            ) from None
        for y in stage_two.members:
            products.append(product_signal(x, y))
    return SignalSet.from_iterable(width, products)


def build_serial_initial(
    f: RegularSystem,
    h: RegularSystem,
    u: Signal,
    mutation: Optional[str] = None,
) -> tuple[BoolVec, ...]:
    """Start states of the composed system for input ``u``.

    A pair (front, back) is admitted when some stage-one schedule for
    ``front`` produces a run that admits ``back``; the union ranges over
    every schedule, so different schedules can each contribute pairs.
    """
    _check_mutation(mutation)
    k = find_input(f, u)
    if k is None:
        raise UnknownInputError("the signal is not an admitted input of the first system")
    pairs: list[BoolVec] = []
    for mu in f.initial_states[k]:
        rhos = f.computation[(mu, k)]
        if mutation == "single-rho":
            rhos = rhos[:1]
        deltas: list[BoolVec] = []
        for rho in rhos:
            x = orbit(f.generator, rho, mu, u)
            j = _stage_two_index(h, x)
            for delta in h.initial_states[j]:
                if delta not in deltas:
                    deltas.append(delta)
        for delta in deltas:
            pairs.append(mu.concat(delta))
    return tuple(dict.fromkeys(pairs))


def build_serial_computation(
    f: RegularSystem,
    h: RegularSystem,
    mu_delta: BoolVec,
    u: Signal,
    mutation: Optional[str] = None,
) -> tuple[tuple[ProgressiveFn, ProgressiveFn], ...]:
    """Schedule pairs of the composed system for one start-state pair.

    A stage-one schedule joins a pair only if its run admits the back
    half of the start state; schedules whose runs do not are dropped
    entirely, even though the first system admits them.
    """
    _check_mutation(mutation)
    k = find_input(f, u)
    if k is None:
        raise UnknownInputError("the signal is not an admitted input of the first system")
    mu, delta = mu_delta.split(f.generator.state_width)
    if mu not in f.initial_states[k]:
        raise CompositionError(
            f"front state {mu} is not admitted by the first system for this input"
        )
    pairs: list[tuple[ProgressiveFn, ProgressiveFn]] = []
    for rho in f.computation[(mu, k)]:
        x = orbit(f.generator, rho, mu, u)
        j = _stage_two_index(h, x)
        if mutation == "drop-delta-filter":
            if (delta, j) in h.computation:
                sigmas = h.computation[(delta, j)]
            else:
                # borrow every schedule the run does admit
                sigmas = tuple(
                    dict.fromkeys(
                        sigma
                        for other in h.initial_states[j]
                        for sigma in h.computation[(other, j)]
                    )
                )
            pairs.extend((rho, sigma) for sigma in sigmas)
            continue
        if delta not in h.initial_states[j]:
            continue
        pairs.extend((rho, sigma) for sigma in h.computation[(delta, j)])
    if not pairs:
        raise CompositionError(
            f"state pair {mu_delta} has no schedule pair; it is not an "
            f"admitted start state of the composition"
        )
    return tuple(dict.fromkeys(pairs))


def serial_regular(
    f: RegularSystem,
    h: RegularSystem,
    u: Signal,
    mutation: Optional[str] = None,
) -> SignalSet:
    """Generated answer: composed-generator orbits over the built pairs."""
    gen = compose_serial_generator(f.generator, h.generator)
    runs = []
    for mu_delta in build_serial_initial(f, h, u, mutation):
        for rho, sigma in build_serial_computation(f, h, mu_delta, u, mutation):
            runs.append(orbit(gen, product_progressive(rho, sigma), mu_delta, u))
    return SignalSet.from_iterable(gen.state_width, runs)


def compose_systems(f: RegularSystem, h: RegularSystem) -> RegularSystem:
    """The composed system itself, over every input the first admits."""
    gen = compose_serial_generator(f.generator, h.generator)
    initial = []
    computation = {}
    for k, u in enumerate(f.inputs):
        states = build_serial_initial(f, h, u)
        initial.append(states)
        for mu_delta in states:
            computation[(mu_delta, k)] = tuple(
                dict.fromkeys(
                    product_progressive(rho, sigma)
                    for rho, sigma in build_serial_computation(f, h, mu_delta, u)
                )
            )
    return RegularSystem(gen, f.inputs, initial, computation)


def check_lemma6(
    g_f: GeneratorFn,
    g_h: GeneratorFn,
    mu: BoolVec,
    delta: BoolVec,
    rho: ProgressiveFn,
    rho2: ProgressiveFn,
    u: Signal,
) -> bool:
    """Single-orbit agreement between the staged and composed routes.

    Runs the first generator, feeds its run to the second, and compares
    the pointwise product against one orbit of the composed generator
    under the merged schedule.  Exact equality over all time.
    """
    composed = compose_serial_generator(g_f, g_h)
    x = orbit(g_f, rho, mu, u)
    y = orbit(g_h, rho2, delta, x)
    staged = product_signal(x, y)
    joint = orbit(composed, product_progressive(rho, rho2), mu.concat(delta), u)
    return signals_equal(staged, joint)


@dataclass(frozen=True)
class SerialWitness:
    """One generation tuple: who produced a run and through what."""

    mu: BoolVec
    rho: ProgressiveFn
    x: Signal
    delta: BoolVec
    rho2: ProgressiveFn
    y: Signal

    def describe(self) -> str:
        return (
            f"front start {self.mu} giving {describe_signal(self.x)}; "
            f"back start {self.delta} giving {describe_signal(self.y)}"
        )


@dataclass(frozen=True)
class Mismatch:
    """First disagreement found for one input."""

    check: str
    witness: Optional[SerialWitness]
    staged: Optional[Signal]
    generated: Optional[Signal]

    def describe(self) -> str:
        parts = [f"{self.check} failed"]
        if self.staged is not None and self.generated is not None:
            parts.append(
                f"staged {describe_signal(self.staged)} != "
                f"generated {describe_signal(self.generated)}"
            )
        elif self.staged is not None:
            parts.append(
                f"staged run {describe_signal(self.staged)} has no "
                f"generated counterpart"
            )
        elif self.generated is not None:
            parts.append(
                f"generated run {describe_signal(self.generated)} has no "
                f"staged counterpart"
            )
        if self.witness is not None:
            parts.append(self.witness.describe())
        return "; ".join(parts)


@dataclass(frozen=True)
class CaseReport:
    """Verdict for one admitted input."""

    input_index: int
    lemma6: bool
    lemma8: bool
    theorem22: bool
    counterexample: Optional[Mismatch] = None

    @property
    def passed(self) -> bool:
        return self.lemma6 and self.lemma8 and self.theorem22


@dataclass(frozen=True)
class VerificationReport:
    """Per-input verdicts plus the conjunction."""

    cases: tuple[CaseReport, ...]
    overall: bool

    def __bool__(self) -> bool:
        return self.overall

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "cases": [
                {
                    "input_index": c.input_index,
                    "lemma6": c.lemma6,
                    "lemma8": c.lemma8,
                    "theorem22": c.theorem22,
                }
                for c in self.cases
            ],
        }

    def summary(self) -> str:
        lines = []
        for c in self.cases:
            verdicts = ", ".join(
                f"{name} {'pass' if ok else 'FAIL'}"
                for name, ok in (
                    ("lemma6", c.lemma6),
                    ("lemma8", c.lemma8),
                    ("theorem22", c.theorem22),
                )
            )
            lines.append(f"input {c.input_index}: {verdicts}")
            if c.counterexample is not None:
                lines.append(f"  counterexample: {c.counterexample.describe()}")
        word = "PASS" if self.overall else "FAIL"
        lines.append(f"overall: {word} ({len(self.cases)} inputs)")
        return "\n".join(lines)


def _check_one_input(
    f: RegularSystem,
    h: RegularSystem,
    k: int,
    u: Signal,
    mutation: Optional[str],
) -> CaseReport:
    # Staged route: enumerate every generation tuple, checking the
    # single-orbit agreement as we go.
    staged: list[tuple[Signal, SerialWitness]] = []
    lemma6_ok = True
    counterexample: Optional[Mismatch] = None
    for mu in f.initial_states[k]:
        for rho in f.computation[(mu, k)]:
            x = orbit(f.generator, rho, mu, u)
            j = _stage_two_index(h, x)
            for delta in h.initial_states[j]:
                for rho2 in h.computation[(delta, j)]:
                    y = orbit(h.generator, rho2, delta, x)
                    witness = SerialWitness(mu, rho, x, delta, rho2, y)
                    pair = product_signal(x, y)
                    staged.append((pair, witness))
                    if lemma6_ok and not check_lemma6(
                        f.generator, h.generator, mu, delta, rho, rho2, u
                    ):
                        lemma6_ok = False
                        joint = orbit(
                            compose_serial_generator(f.generator, h.generator),
                            product_progressive(rho, rho2),
                            mu.concat(delta),
                            u,
                        )
                        counterexample = Mismatch("lemma6", witness, pair, joint)

    width = f.generator.state_width + h.generator.state_width
    staged_set = SignalSet.from_iterable(width, (sig for sig, _ in staged))
    generated_set = serial_regular(f, h, u, mutation)

    lemma8_ok = sets_equal(staged_set, generated_set)
    if not lemma8_ok and counterexample is None:
        counterexample = _set_mismatch("lemma8", staged, staged_set, generated_set)

    oracle_set = serial_set_oracle(f, h, u)
    theorem22_ok = sets_equal(oracle_set, generated_set)
    if not theorem22_ok and counterexample is None:
        counterexample = _set_mismatch("theorem22", staged, oracle_set, generated_set)

    return CaseReport(k, lemma6_ok, lemma8_ok, theorem22_ok, counterexample)


def _set_mismatch(
    check: str,
    staged: list[tuple[Signal, SerialWitness]],
    staged_set: SignalSet,
    generated_set: SignalSet,
) -> Mismatch:
    for sig, witness in staged:
        if not generated_set.contains(sig):
            return Mismatch(check, witness, sig, None)
    for sig in generated_set.members:
        if not staged_set.contains(sig):
            return Mismatch(check, None, None, sig)
    # Sets differ per sets_equal yet every probe matched: unreachable
    # unless equality itself is broken.
    return Mismatch(check, None, None, None)


def verify_serial_theorem(
    f: RegularSystem,
    h: RegularSystem,
    mutation: Optional[str] = None,
) -> VerificationReport:
    """Check the staged and generated routes agree on every input.

    ``mutation`` deliberately miswires the generated route to confirm
    the comparison can fail; leave it None for honest verification.
    """
    _check_mutation(mutation)
    room = check_state_space(f, h)
    if not room:
        raise CompositionError(
            f"second system does not admit stage-one run "
            f"{describe_signal(room.missing)} (input {room.input_index})"
        )
    cases = tuple(
        _check_one_input(f, h, k, u, mutation) for k, u in enumerate(f.inputs)
    )
    return VerificationReport(cases, all(c.passed for c in cases))
