"""Schedules that fire coordinate updates at discrete rational times.

Off its tick set a schedule contributes the all-zero mask.  The
periodic part is mandatory and must fire every coordinate at least
once, so every coordinate keeps updating forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .boolfn import BoolVec
from .errors import (
    ContainmentError,
    DimensionError,
    NotProgressiveError,
    OrderingError,
    ValidationError,
)
from .signals import Sample
from .ticks import PeriodicTicks, TickSequence, frac_lcm, sequence_contains


@dataclass(frozen=True)
class ProgressiveTail:
    """Tick masks at ``start + k*period + offset`` for all k >= 0."""

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
            raise ValidationError("the periodic part needs at least one tick")
        offsets = [o for o, _ in self.pattern]
        for prev, cur in zip(offsets, offsets[1:]):
            if cur <= prev:
                raise OrderingError(f"tick offsets must increase: {prev} then {cur}")
        if offsets[0] < 0 or offsets[-1] >= self.period:
            raise ValidationError(
                f"tick offsets must lie in [0, {self.period}), got {offsets}"
            )


@dataclass(frozen=True)
class ProgressiveFn:
    """Finitely many prefix ticks, then a periodic tick pattern forever."""

    width: int
    prefix: tuple[Sample, ...]
    tail: ProgressiveTail

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "prefix", tuple((Fraction(t), v) for t, v in self.prefix)
        )
        times = [t for t, _ in self.prefix]
        for prev, cur in zip(times, times[1:]):
            if cur <= prev:
                raise OrderingError(f"tick times must increase: {prev} then {cur}")
        if times and times[-1] >= self.tail.start:
            raise OrderingError(
                f"prefix tick {times[-1]} must precede the periodic start {self.tail.start}"
            )
        for _, v in self.prefix:
            if v.width != self.width:
                raise DimensionError(f"tick value width {v.width} != {self.width}")
        fired = [0] * self.width
        for _, v in self.tail.pattern:
            if v.width != self.width:
                raise DimensionError(f"tick value width {v.width} != {self.width}")
            for i, b in enumerate(v.bits):
                fired[i] |= b
        for i, hit in enumerate(fired):
            if not hit:
                raise NotProgressiveError(
                    i + 1, f"coordinate {i + 1} never fires on the periodic part"
                )


def make_progressive(
    width: int, prefix: Sequence[Sample], tail: ProgressiveTail
) -> ProgressiveFn:
    """Validating constructor; see ProgressiveFn for the invariants."""
    return ProgressiveFn(width, tuple(prefix), tail)


def tick_sequence(rho: ProgressiveFn) -> TickSequence:
    return TickSequence(
        tuple(t for t, _ in rho.prefix),
        PeriodicTicks(rho.tail.start, rho.tail.period, tuple(o for o, _ in rho.tail.pattern)),
    )


def eval_progressive(rho: ProgressiveFn, t: Fraction) -> BoolVec:
    """Mask fired at time t; all zero when t is not a tick."""
    t = Fraction(t)
    tail = rho.tail
    if t >= tail.start:
        off = (t - tail.start) % tail.period
        for o, v in tail.pattern:
            if o == off:
                return v
        return BoolVec.zeros(rho.width)
    for tick, v in rho.prefix:
        if tick == t:
            return v
    return BoolVec.zeros(rho.width)


@lru_cache(maxsize=1024)
def product_progressive(a: ProgressiveFn, b: ProgressiveFn) -> ProgressiveFn:
    """Joint schedule on the union of tick sets.

    At each tick the value is a's mask concatenated with b's; a
    component contributes zeros at ticks outside its own support.  The
    result is again a valid schedule: its window is a common multiple of
    both periods, so every coordinate of either side still fires in it.
    """
    ta, tb = tick_sequence(a), tick_sequence(b)
    period = frac_lcm(a.tail.period, b.tail.period)
    start = max(a.tail.start, b.tail.start)

    def joint(t: Fraction) -> BoolVec:
        return eval_progressive(a, t).concat(eval_progressive(b, t))

    head = sorted(set(ta.times_below(start)) | set(tb.times_below(start)))
    window = sorted(
        set(ta.times_in(start, start + period))
        | set(tb.times_in(start, start + period))
    )
    return ProgressiveFn(
        a.width + b.width,
        tuple((t, joint(t)) for t in head),
        ProgressiveTail(start, period, tuple((t - start, joint(t)) for t in window)),
    )


def reindex_on(
    rho: ProgressiveFn, merged: TickSequence, count: int
) -> tuple[Sample, ...]:
    """First ``count`` merged times with rho's mask at each.

    ``merged`` must contain every tick of rho; times that are not ticks
    of rho carry the all-zero mask.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    missing = sequence_contains(merged, tick_sequence(rho))
    if missing is not None:
        raise ContainmentError(
            f"the merged sequence misses the tick at {missing}"
        )
    return tuple((t, eval_progressive(rho, t)) for t in merged.first(count))
