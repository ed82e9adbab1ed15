"""Exact rational time and eventually periodic tick sets.

All times are `fractions.Fraction`; nothing in the package touches
floating point.  A tick sequence is a strictly increasing set of times:
a finite prefix, then optionally a pattern of offsets repeating forever
from some start.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Optional, Sequence

from .errors import FormatError, OrderingError, ValidationError

RatTime = Fraction


def parse_rattime(text: str) -> Fraction:
    """Parse "p/q" or integer literals into an exact rational."""
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational literal {text!r}") from exc


def format_rattime(value: Fraction) -> str:
    return str(value)


def frac_lcm(a: Fraction, b: Fraction) -> Fraction:
    """Least positive rational that both arguments divide integrally.

    For reduced a/b and c/d this is lcm(a, c) / gcd(b, d).
    """
    if a <= 0 or b <= 0:
        raise ValueError("lcm needs positive operands")
    return Fraction(
        math.lcm(a.numerator, b.numerator), math.gcd(a.denominator, b.denominator)
    )


def _check_increasing(times: Sequence[Fraction], label: str) -> None:
    for prev, cur in zip(times, times[1:]):
        if cur <= prev:
            raise OrderingError(f"{label} must be strictly increasing: {prev} then {cur}")


@dataclass(frozen=True)
class PeriodicTicks:
    """Offsets from ``start`` repeating every ``period`` forever."""

    start: Fraction
    period: Fraction
    offsets: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "period", Fraction(self.period))
        object.__setattr__(self, "offsets", tuple(Fraction(o) for o in self.offsets))
        if self.period <= 0:
            raise ValidationError(f"period must be positive, got {self.period}")
        if not self.offsets:
            raise ValidationError("a periodic tail needs at least one offset")
        _check_increasing(self.offsets, "offsets")
        if self.offsets[0] < 0 or self.offsets[-1] >= self.period:
            raise ValidationError(
                f"offsets must lie in [0, {self.period}), got {self.offsets}"
            )


@dataclass(frozen=True)
class TickSequence:
    """Strictly increasing times: a finite prefix, then an optional tail.

    With a tail present the generated set is unbounded above and equals
    prefix plus {start + k*period + offset : k >= 0}.
    """

    prefix: tuple[Fraction, ...]
    tail: Optional[PeriodicTicks] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(Fraction(t) for t in self.prefix))
        _check_increasing(self.prefix, "prefix times")
        if self.tail is not None and self.prefix:
            last = self.prefix[-1]
            if last > self.tail.start:
                raise OrderingError(
                    f"prefix entry {last} lies past the tail start {self.tail.start}"
                )
            if last >= self.tail.start + self.tail.offsets[0]:
                raise OrderingError(
                    f"prefix entry {last} does not precede the first tail point"
                )

    def iter_times(self) -> Iterator[Fraction]:
        yield from self.prefix
        if self.tail is None:
            return
        base = self.tail.start
        while True:
            for off in self.tail.offsets:
                yield base + off
            base += self.tail.period

    def first(self, count: int) -> tuple[Fraction, ...]:
        out = []
        for t in self.iter_times():
            if len(out) == count:
                break
            out.append(t)
        if len(out) < count:
            raise ValueError(f"sequence holds only {len(out)} points, wanted {count}")
        return tuple(out)

    def times_below(self, stop: Fraction) -> list[Fraction]:
        """All generated times strictly below ``stop``."""
        out = [t for t in self.prefix if t < stop]
        if self.tail is not None:
            out.extend(self._tail_times(self.tail.start, stop))
        return sorted(out)

    def times_in(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        """All generated times t with lo <= t < hi."""
        out = [t for t in self.prefix if lo <= t < hi]
        if self.tail is not None:
            out.extend(self._tail_times(max(lo, self.tail.start), hi))
        return sorted(out)

    def _tail_times(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        tail = self.tail
        assert tail is not None
        out = []
        for off in tail.offsets:
            point = tail.start + off
            if point < lo:
                point += math.ceil((lo - point) / tail.period) * tail.period
            while point < hi:
                out.append(point)
                point += tail.period
        return out

    def contains(self, t: Fraction) -> bool:
        t = Fraction(t)
        if t in self.prefix:
            return True
        tail = self.tail
        if tail is None or t < tail.start:
            return False
        return (t - tail.start) % tail.period in tail.offsets


def _reduce_offsets(period: Fraction, offsets: tuple[Fraction, ...]) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Shrink the period when the offset set repeats inside the window."""
    n = len(offsets)
    for k in range(n, 1, -1):
        if n % k:
            continue
        q = n // k
        d = period / k
        if all(
            offsets[j * q + i] == offsets[i] + j * d
            for j in range(1, k)
            for i in range(q)
        ):
            return d, offsets[:q]
    return period, offsets


def merge_sequences(seqs: Sequence[TickSequence]) -> TickSequence:
    """Union of tick sets, renormalized to prefix-plus-periodic form.

    The merged period is the lcm of the tail periods; tail points that
    fall before the merged start are folded into the prefix.
    """
    if not seqs:
        raise ValueError("nothing to merge")
    tails = [s.tail for s in seqs if s.tail is not None]
    if not tails:
        times = sorted({t for s in seqs for t in s.prefix})
        return TickSequence(tuple(times), None)
    period = reduce(frac_lcm, (t.period for t in tails))
    start = max(t.start for t in tails)
    # the merged tail only replays residues of the component tails, so
    # every plain prefix point must stay strictly before it
    prefix_top = max((s.prefix[-1] for s in seqs if s.prefix), default=None)
    if prefix_top is not None:
        while start <= prefix_top:
            start += period
    head: set[Fraction] = {t for s in seqs for t in s.prefix}
    offsets: set[Fraction] = set()
    for s in seqs:
        if s.tail is None:
            continue
        head.update(s._tail_times(s.tail.start, start))
        offsets.update(t - start for t in s._tail_times(start, start + period))
    period, reduced = _reduce_offsets(period, tuple(sorted(offsets)))
    return TickSequence(
        tuple(sorted(head)), PeriodicTicks(start, period, reduced)
    )


def sequence_contains(sup: TickSequence, sub: TickSequence) -> Optional[Fraction]:
    """First point of ``sub`` missing from ``sup``, or None if contained.

    Exact: beyond the larger start both memberships are periodic, so
    agreement over one lcm window settles the infinite tails.
    """
    if sub.tail is not None and sup.tail is None:
        return sub.tail.start + sub.tail.offsets[0]
    if sub.tail is None:
        candidates = list(sub.prefix)
    else:
        window = frac_lcm(sub.tail.period, sup.tail.period)
        stop = max(sub.tail.start, sup.tail.start) + window
        candidates = sub.times_below(stop)
    for t in candidates:
        if not sup.contains(t):
            return t
    return None
