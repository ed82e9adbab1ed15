"""Runs of a generator under a schedule, driven by an input signal.

The run steps through the merged event times (input switches plus
schedule ticks) applying masked updates.  Past the point where both the
input and the schedule have gone periodic, events repeat with the lcm
period, so the evolution of the state across whole windows is a fixed
map on a finite set; the first repeated window state closes the cycle
and yields an exact eventually periodic result.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .boolfn import BoolVec, GeneratorFn, masked_update
from .errors import DimensionError
from .progressive import ProgressiveFn, eval_progressive, tick_sequence
from .signals import (
    PeriodicTail,
    Signal,
    canonicalize,
    eval_signal,
    event_ticks,
    signal_from_samples,
)
from .ticks import frac_lcm

# (time or offset, schedule mask, input value)
Event = tuple[Fraction, BoolVec, BoolVec]


@dataclass(frozen=True)
class _Schedule:
    """Merged events: a finite prefix, then one repeating window."""

    prefix: tuple[Event, ...]
    window_start: Fraction
    period: Fraction
    window: tuple[Event, ...]


@lru_cache(maxsize=1024)
def _merged_schedule(u: Signal, rho: ProgressiveFn) -> _Schedule:
    u = canonicalize(u)
    u_ticks = event_ticks(u)
    rho_ticks = tick_sequence(rho)
    u_periodic = isinstance(u.tail, PeriodicTail)
    period = frac_lcm(
        rho.tail.period, u.tail.period if u_periodic else Fraction(1)
    )
    start = rho.tail.start
    if u_periodic:
        start = max(start, u.tail.start)
    elif u.switches:
        # a constant-tail input stops changing after its last switch; the
        # window may begin there but not before
        while start < u.switches[-1][0]:
            start += period

    head = sorted(set(u_ticks.times_below(start)) | set(rho_ticks.times_below(start)))
    window = sorted(
        set(u_ticks.times_in(start, start + period))
        | set(rho_ticks.times_in(start, start + period))
    )
    # window events carry offsets from the start; masks and inputs are
    # sampled at the first pass and repeat by periodicity
    return _Schedule(
        tuple((t, eval_progressive(rho, t), eval_signal(u, t)) for t in head),
        start,
        period,
        tuple(
            (t - start, eval_progressive(rho, t), eval_signal(u, t)) for t in window
        ),
    )


def _check_run_widths(
    gen: GeneratorFn, rho: ProgressiveFn, state: BoolVec, u: Signal
) -> None:
    if state.width != gen.state_width:
        raise DimensionError(f"state width {state.width} != {gen.state_width}")
    if rho.width != gen.state_width:
        raise DimensionError(f"schedule width {rho.width} != {gen.state_width}")
    if u.width != gen.input_width:
        raise DimensionError(f"input signal width {u.width} != {gen.input_width}")


@lru_cache(maxsize=8192)
def orbit(gen: GeneratorFn, rho: ProgressiveFn, state: BoolVec, u: Signal) -> Signal:
    """The run as a signal: ``state`` before the first event, then the
    masked update at every merged event time, eventually periodic.

    Exact; the result is canonical.
    """
    _check_run_widths(gen, rho, state, u)
    sched = _merged_schedule(u, rho)
    samples: list[tuple[Fraction, BoolVec]] = []
    current = state
    for t, mask, inp in sched.prefix:
        current = masked_update(gen, mask, current, inp)
        samples.append((t, current))

    # iterate whole windows until a window-entry state repeats
    seen = {current: 0}
    trajectories: list[list[tuple[Fraction, BoolVec]]] = []
    while True:
        steps = []
        for off, mask, inp in sched.window:
            current = masked_update(gen, mask, current, inp)
            steps.append((off, current))
        trajectories.append(steps)
        if current in seen:
            first = seen[current]
            break
        seen[current] = len(trajectories)

    cycle_start = sched.window_start + first * sched.period
    cycle_period = (len(trajectories) - first) * sched.period
    for w, steps in enumerate(trajectories):
        base = sched.window_start + w * sched.period
        samples.extend((base + off, s) for off, s in steps)
    return signal_from_samples(
        gen.state_width, state, samples, (cycle_start, cycle_period)
    )


def merged_times(u: Signal, rho: ProgressiveFn) -> Iterator[Fraction]:
    """Ascending union of the input's event times and the schedule's ticks."""
    last = None
    for t in heapq.merge(event_ticks(canonicalize(u)).iter_times(),
                         tick_sequence(rho).iter_times()):
        if last is None or t != last:
            yield t
            last = t


@dataclass(frozen=True)
class TraceEvent:
    time: Fraction
    mask: BoolVec
    input_value: BoolVec
    state: BoolVec


@dataclass(frozen=True)
class OrbitTrace:
    """The first events of a run plus the full eventually periodic result."""

    events: tuple[TraceEvent, ...]
    result: Signal


def orbit_trace(
    gen: GeneratorFn, rho: ProgressiveFn, state: BoolVec, u: Signal, count: int
) -> OrbitTrace:
    """Step the first ``count`` merged events one by one."""
    if count < 0:
        raise ValueError("count must be >= 0")
    _check_run_widths(gen, rho, state, u)
    events = []
    current = state
    for t in merged_times(u, rho):
        if len(events) == count:
            break
        mask = eval_progressive(rho, t)
        inp = eval_signal(u, t)
        current = masked_update(gen, mask, current, inp)
        events.append(TraceEvent(t, mask, inp, current))
    return OrbitTrace(tuple(events), orbit(gen, rho, state, u))
