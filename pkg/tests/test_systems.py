from fractions import Fraction as F

import pytest

from regasys.boolfn import BoolVec
from regasys.errors import DimensionError, UnknownInputError, ValidationError
from regasys.fixtures import fixture_system_pair, toggle_system
from regasys.signals import constant_signal, signal_from_samples
from regasys.systems import (
    RegularSystem,
    SignalSet,
    check_state_space,
    evaluate_system,
    find_input,
    sets_equal,
)

from conftest import bv, gen_from_bits


ZERO = bv("0")
ONE = bv("1")


def test_system_validation_rejects_uncovered_pairs():
    sys = toggle_system()
    comp = dict(sys.computation)
    comp.pop(next(iter(comp)))
    with pytest.raises(ValidationError):
        RegularSystem(sys.generator, sys.inputs, sys.initial_states, comp)


def test_system_validation_rejects_stray_pairs():
    sys = toggle_system()
    comp = dict(sys.computation)
    extra_state = ONE if all(ONE not in s for s in sys.initial_states) else ZERO
    comp[(extra_state, 0)] = next(iter(comp.values()))
    with pytest.raises(ValidationError):
        RegularSystem(sys.generator, sys.inputs, sys.initial_states, comp)


def test_system_validation_rejects_empty_schedule_sets():
    sys = toggle_system()
    comp = dict(sys.computation)
    comp[next(iter(comp))] = ()
    with pytest.raises(ValidationError):
        RegularSystem(sys.generator, sys.inputs, sys.initial_states, comp)


def test_find_input_matches_semantically_not_structurally():
    sys = toggle_system()
    u = sys.inputs[0]
    # same waveform, different description
    clone = signal_from_samples(u.width, u.initial, [(F(5), u.initial)])
    assert find_input(sys, clone) == 0
    other = constant_signal(BoolVec((True,) * u.width))
    assert find_input(sys, other) is None


def test_evaluate_system_orbits_and_unknown_input():
    sys = toggle_system()
    result = evaluate_system(sys, sys.inputs[0])
    assert isinstance(result, SignalSet)
    assert len(result.members) >= 1
    with pytest.raises(UnknownInputError):
        evaluate_system(sys, constant_signal(BoolVec((True,) * sys.inputs[0].width)))


def test_signal_set_deduplicates_semantically():
    a = constant_signal(ZERO)
    b = signal_from_samples(1, ZERO, [(F(3), ZERO)])  # same waveform
    c = constant_signal(ONE)
    s = SignalSet.from_iterable(1, [a, b, c])
    assert len(s.members) == 2
    assert s.contains(b)
    assert not s.contains(signal_from_samples(1, ZERO, [(F(1), ONE)]))


def test_sets_equal_mutual_containment():
    a = constant_signal(ZERO)
    c = constant_signal(ONE)
    s1 = SignalSet.from_iterable(1, [a, c])
    s2 = SignalSet.from_iterable(1, [c, a])
    s3 = SignalSet.from_iterable(1, [a])
    assert sets_equal(s1, s2)
    assert not sets_equal(s1, s3)
    assert not sets_equal(s3, s1)


def test_check_state_space_accepts_a_matched_pair():
    f, h = fixture_system_pair(5, 9)
    report = check_state_space(f, h)
    assert report.ok
    assert bool(report)
    assert report.missing is None


def test_check_state_space_reports_a_witness():
    f = toggle_system()
    # h admits no inputs that match f's orbits
    h = RegularSystem(
        f.generator,
        (constant_signal(ONE),),
        ({ZERO},),
        {(ZERO, 0): f.computation[next(iter(f.computation))]},
    )
    report = check_state_space(f, h)
    assert not report.ok
    assert not bool(report)
    assert report.input_index == 0
    assert report.missing is not None
    assert report.missing.width == 1
    assert find_input(h, report.missing) is None


def test_check_state_space_width_mismatch():
    f = toggle_system()
    wide_reader = RegularSystem(
        gen_from_bits(1, 2, "00110011"),
        (constant_signal(bv("00")),),
        ({ZERO},),
        {(ZERO, 0): f.computation[next(iter(f.computation))]},
    )
    with pytest.raises(DimensionError):
        check_state_space(f, wide_reader)
