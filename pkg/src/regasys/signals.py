"""Eventually periodic piecewise constant signals over rational time.

A signal holds one value per half open segment [t_k, t_{k+1}) and a
fixed value before its first event.  After finitely many switches it
either keeps its last value forever (constant tail) or repeats a
pattern of values forever (periodic tail).  Two structurally different
representations can denote the same function, so equality is semantic:
initial values plus agreement at every event up to one common period
window decide it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .boolfn import BoolVec
from .errors import DimensionError, OrderingError, ValidationError
from .ticks import PeriodicTicks, TickSequence, frac_lcm

Sample = tuple[Fraction, BoolVec]


@dataclass(frozen=True)
class ConstantTail:
    """After the last switch the signal keeps its value forever."""


@dataclass(frozen=True)
class PeriodicTail:
    """From ``start`` on, the signal replays ``pattern`` every ``period``.

    Pattern entries are (offset, value) with offsets in [0, period) and
    the first offset exactly 0, so the whole window is covered.
    """

    start: Fraction
    period: Fraction
    pattern: tuple[Sample, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "period", Fraction(self.period))
        object.__setattr__(
            self, "pattern", tuple((Fraction(o), v) for o, v in self.pattern)
        )
        if self.period <= 0:
            raise ValidationError(f"period must be positive, got {self.period}")
        if not self.pattern:
            raise ValidationError("a periodic tail needs at least one entry")
        if self.pattern[0][0] != 0:
            raise ValidationError("the first pattern offset must be 0")
        offsets = [o for o, _ in self.pattern]
        for prev, cur in zip(offsets, offsets[1:]):
            if cur <= prev:
                raise OrderingError(f"pattern offsets must increase: {prev} then {cur}")
        if offsets[-1] >= self.period:
            raise ValidationError(
                f"pattern offset {offsets[-1]} not below period {self.period}"
            )


CONSTANT = ConstantTail()
Tail = Union[ConstantTail, PeriodicTail]


@dataclass(frozen=True)
class Signal:
    """Piecewise constant, right continuous, eventually periodic."""

    width: int
    initial: BoolVec
    switches: tuple[Sample, ...]
    tail: Tail = CONSTANT

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "switches", tuple((Fraction(t), v) for t, v in self.switches)
        )
        if self.initial.width != self.width:
            raise DimensionError(
                f"initial value width {self.initial.width} != {self.width}"
            )
        times = [t for t, _ in self.switches]
        for prev, cur in zip(times, times[1:]):
            if cur <= prev:
                raise OrderingError(f"switch times must increase: {prev} then {cur}")
        for _, v in self.switches:
            if v.width != self.width:
                raise DimensionError(f"switch value width {v.width} != {self.width}")
        if isinstance(self.tail, PeriodicTail):
            if times and times[-1] > self.tail.start:
                raise OrderingError(
                    f"tail start {self.tail.start} lies before the last switch {times[-1]}"
                )
            for _, v in self.tail.pattern:
                if v.width != self.width:
                    raise DimensionError(
                        f"pattern value width {v.width} != {self.width}"
                    )


def constant_signal(value: BoolVec) -> Signal:
    return Signal(value.width, value, (), CONSTANT)


def eval_signal(x: Signal, t: Fraction) -> BoolVec:
    """Value of the segment containing ``t``."""
    t = Fraction(t)
    tail = x.tail
    if isinstance(tail, PeriodicTail) and t >= tail.start:
        off = (t - tail.start) % tail.period
        value = tail.pattern[0][1]
        for o, v in tail.pattern:
            if o <= off:
                value = v
            else:
                break
        return value
    value = x.initial
    for st, v in x.switches:
        if st <= t:
            value = v
        else:
            break
    return value


def event_ticks(x: Signal) -> TickSequence:
    """Times at which the signal may change value."""
    if isinstance(x.tail, PeriodicTail):
        times = tuple(t for t, _ in x.switches if t < x.tail.start)
        offsets = tuple(o for o, _ in x.tail.pattern)
        return TickSequence(times, PeriodicTicks(x.tail.start, x.tail.period, offsets))
    return TickSequence(tuple(t for t, _ in x.switches), None)


def _merge_adjacent(pattern: Sequence[Sample]) -> list[Sample]:
    out = [pattern[0]]
    for off, v in pattern[1:]:
        if v != out[-1][1]:
            out.append((off, v))
    return out


def _reduce_pattern(
    period: Fraction, entries: list[Sample]
) -> tuple[Fraction, list[Sample]]:
    """Shrink the period when the pattern repeats inside the window.

    Works on the change points only: the mandatory offset-0 entry is not
    a change point when the window wraps seamlessly, and counting it
    would hide reductions.
    """
    seamless = entries[0][1] == entries[-1][1]
    changes = entries[1:] if seamless else entries
    n = len(changes)
    for k in range(n, 1, -1):
        if n % k:
            continue
        q = n // k
        d = period / k
        if all(
            changes[j * q + i][0] == changes[i][0] + j * d
            and changes[j * q + i][1] == changes[i][1]
            for j in range(1, k)
            for i in range(q)
        ):
            block = changes[:q]
            if block[0][0] != 0:
                block = [(Fraction(0), entries[0][1])] + block
            return d, block
    return period, entries


def canonicalize(x: Signal) -> Signal:
    """Normal form: no void switches, minimal period, genuine tail changes.

    Switches shadowed by the periodic window are dropped, adjacent equal
    pattern values merge, the period shrinks to its minimum, and a
    window whose wrap is seamless is rotated so a real change sits at
    offset 0 (the cut-off head becomes an ordinary switch).  A pattern
    left with a single value demotes the tail to constant.  Idempotent.
    """
    switches = list(x.switches)
    tail: Tail = x.tail
    if isinstance(tail, PeriodicTail):
        start, period = tail.start, tail.period
        switches = [(t, v) for t, v in switches if t < start]
        entries = _merge_adjacent(tail.pattern)
        if len(entries) > 1:
            period, entries = _reduce_pattern(period, entries)
        if len(entries) > 1 and entries[0][1] == entries[-1][1]:
            # seamless wrap: the offset-0 entry is no real change
            shift = entries[1][0]
            switches.append((start, entries[0][1]))
            start = start + shift
            entries = [(off - shift, v) for off, v in entries[1:]]
        if len(entries) == 1:
            value = entries[0][1]
            previous = switches[-1][1] if switches else x.initial
            if value != previous:
                switches.append((start, value))
            tail = CONSTANT
        else:
            tail = PeriodicTail(start, period, tuple(entries))
    pruned: list[Sample] = []
    running = x.initial
    for t, v in switches:
        if v != running:
            pruned.append((t, v))
            running = v
    return Signal(x.width, x.initial, tuple(pruned), tail)


def _events_below(x: Signal, stop: Fraction) -> list[Fraction]:
    return event_ticks(x).times_below(stop)


def signals_equal(x: Signal, y: Signal) -> bool:
    """Exact semantic equality.

    Both functions are piecewise constant and eventually periodic, so
    equality at every event time of either signal up to the larger tail
    start plus one common period window settles every t.
    """
    if x.width != y.width:
        raise DimensionError(f"cannot compare widths {x.width} and {y.width}")
    if x == y:
        return True
    if x.initial != y.initial:
        return False
    anchors = []
    periods = []
    for s in (x, y):
        if isinstance(s.tail, PeriodicTail):
            anchors.append(s.tail.start)
            periods.append(s.tail.period)
        elif s.switches:
            anchors.append(s.switches[-1][0])
    settle = max(anchors, default=Fraction(0))
    window = frac_lcm(periods[0] if periods else Fraction(1),
                      periods[1] if len(periods) > 1 else Fraction(1))
    stop = settle + window
    times = sorted(set(_events_below(x, stop)) | set(_events_below(y, stop)))
    return all(eval_signal(x, t) == eval_signal(y, t) for t in times)


def signal_from_samples(
    width: int,
    initial: BoolVec,
    samples: Iterable[Sample],
    periodic: Optional[tuple[Fraction, Fraction]] = None,
) -> Signal:
    """Build a canonical signal from pointwise samples.

    ``samples`` must list, in increasing time order, the value at every
    time where the signal may change.  With ``periodic=(start, period)``
    the samples inside [start, start + period) become the repeating
    window (a missing offset-0 sample is filled from the running value)
    and samples at or past start + period are ignored.
    """
    samples = list(samples)
    if periodic is None:
        return canonicalize(Signal(width, initial, tuple(samples), CONSTANT))
    start, period = periodic
    head = [(t, v) for t, v in samples if t < start]
    window = [(t, v) for t, v in samples if start <= t < start + period]
    if not window or window[0][0] != start:
        running = head[-1][1] if head else initial
        window.insert(0, (start, running))
    pattern = tuple((t - start, v) for t, v in window)
    return canonicalize(
        Signal(width, initial, tuple(head), PeriodicTail(start, period, pattern))
    )


def product_signal(x: Signal, y: Signal) -> Signal:
    """Coordinatewise pairing: value at t is x(t) concatenated with y(t)."""
    width = x.width + y.width
    initial = x.initial.concat(y.initial)

    def sample(t: Fraction) -> Sample:
        return (t, eval_signal(x, t).concat(eval_signal(y, t)))

    x_periodic = isinstance(x.tail, PeriodicTail)
    y_periodic = isinstance(y.tail, PeriodicTail)
    if not x_periodic and not y_periodic:
        times = sorted({t for t, _ in x.switches} | {t for t, _ in y.switches})
        return signal_from_samples(width, initial, [sample(t) for t in times])
    period = frac_lcm(
        x.tail.period if x_periodic else Fraction(1),
        y.tail.period if y_periodic else Fraction(1),
    )
    start = max(
        [s.tail.start for s in (x, y) if isinstance(s.tail, PeriodicTail)]
    )
    # switches of a constant-tail operand may land past the periodic
    # start; slide the window until they cannot recur inside it
    for s in (x, y):
        if not isinstance(s.tail, PeriodicTail) and s.switches:
            while start < s.switches[-1][0]:
                start += period
    times = sorted(
        set(_events_below(x, start + period)) | set(_events_below(y, start + period))
    )
    return signal_from_samples(
        width, initial, [sample(t) for t in times], (start, period)
    )


def describe_signal(x: Signal) -> str:
    """Compact one line form for witness dumps and error messages."""
    parts = [f"init={x.initial}"]
    if x.switches:
        parts.append("sw=" + ",".join(f"({t}:{v})" for t, v in x.switches))
    if isinstance(x.tail, PeriodicTail):
        pat = ",".join(f"({o}:{v})" for o, v in x.tail.pattern)
        parts.append(f"tail=per(start={x.tail.start},period={x.tail.period},{pat})")
    else:
        parts.append("tail=const")
    return " ".join(parts)
