import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from regasys.errors import FormatError
from regasys.files import (
    format_waveform,
    load_generator,
    load_progressive,
    load_signal,
    load_system,
    save_generator,
    save_progressive,
    save_report,
    save_signal,
    save_system,
    save_waveform,
    waveform_rows,
)
from regasys.fixtures import mutation_sensitive_pair, toggle_system
from regasys.generate import rand_progressive, rand_signal, rand_system
from regasys.orbit import orbit
from regasys.serial import compose_systems, serial_set_oracle
from regasys.signals import signals_equal
from regasys.systems import evaluate_system, sets_equal

import random

from conftest import bv

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_signal_round_trip(tmp_path, rng):
    for _ in range(10):
        sig = rand_signal(rng, rng.randint(1, 3))
        p = tmp_path / "sig.json"
        save_signal(p, sig)
        assert signals_equal(load_signal(p), sig)


def test_progressive_round_trip(tmp_path, rng):
    for _ in range(10):
        rho = rand_progressive(rng, rng.randint(1, 3))
        p = tmp_path / "rho.json"
        save_progressive(p, rho)
        assert load_progressive(p) == rho


def test_generator_round_trip(tmp_path):
    gen = load_generator(FIXTURES / "copy_generator.json")
    p = tmp_path / "gen.json"
    save_generator(p, gen)
    assert load_generator(p) == gen


def test_system_round_trip(tmp_path, rng):
    sys = rand_system(rng, 2, 1, input_count=2)
    p = tmp_path / "sys.json"
    save_system(p, sys)
    back = load_system(p)
    assert back.generator == sys.generator
    assert back.initial_states == sys.initial_states
    for u, v in zip(back.inputs, sys.inputs):
        assert signals_equal(u, v)
    for (s, k), rhos in sys.computation.items():
        assert set(back.computation[(s, k)]) == set(rhos)


def test_missing_file_and_bad_json(tmp_path):
    with pytest.raises(FormatError):
        load_signal(tmp_path / "nope.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError):
        load_generator(bad)


def test_schema_violations_become_format_errors(tmp_path):
    p = tmp_path / "sig.json"
    p.write_text(json.dumps({"width": 1}), encoding="utf-8")
    with pytest.raises(FormatError):
        load_signal(p)
    p.write_text(
        json.dumps({"width": 1, "initial": "0",
                    "switches": [], "tail": {"kind": "constant"},
                    "surprise": 1}),
        encoding="utf-8",
    )
    with pytest.raises(FormatError):
        load_signal(p)


def test_generator_table_must_be_complete(tmp_path):
    doc = json.loads((FIXTURES / "copy_generator.json").read_text())
    rows = doc["rows"]
    p = tmp_path / "gen.json"

    p.write_text(json.dumps({**doc, "rows": rows[:-1]}), encoding="utf-8")
    with pytest.raises(FormatError):
        load_generator(p)

    dupe = rows + [rows[0]]
    p.write_text(json.dumps({**doc, "rows": dupe}), encoding="utf-8")
    with pytest.raises(FormatError):
        load_generator(p)

    alien = rows[:-1] + [{"state": "1", "input": "11", "next": "0"}]
    p.write_text(json.dumps({**doc, "rows": alien}), encoding="utf-8")
    with pytest.raises(FormatError):
        load_generator(p)


def test_system_generator_by_path():
    direct = load_system(FIXTURES / "serial_f.json")
    by_path = load_system(FIXTURES / "serial_f_bypath.json")
    assert by_path.generator == direct.generator
    for u, v in zip(by_path.inputs, direct.inputs):
        assert signals_equal(u, v)


def test_report_file_is_plain_json(tmp_path):
    p = tmp_path / "report.json"
    save_report(p, {"overall": True, "cases": []})
    assert json.loads(p.read_text(encoding="utf-8")) == {"overall": True, "cases": []}


def test_waveform_of_the_square_wave(tmp_path):
    sys = toggle_system()
    run = evaluate_system(sys, sys.inputs[0]).members[0]
    rows = waveform_rows(run, F(6))
    assert rows[0] == ["time", "bit_0"]
    assert rows[1] == ["-inf", "0"]
    # events at 0..5 inclusive under horizon 6
    assert [r[0] for r in rows[2:]] == ["0", "1", "2", "3", "4", "5"]
    assert [r[1] for r in rows[2:]] == ["1", "0", "1", "0", "1", "0"]
    text = format_waveform(run, F(6))
    assert text.splitlines()[0] == "time,bit_0"
    p = tmp_path / "wave.csv"
    save_waveform(p, run, F(6))
    assert p.read_text(encoding="utf-8") == text


def test_waveform_before_the_first_event():
    sys = toggle_system()
    run = evaluate_system(sys, sys.inputs[0]).members[0]
    rows = waveform_rows(run, F(0))
    assert rows == [["time", "bit_0"], ["-inf", "0"]]


def test_composed_system_file_keeps_staged_semantics(tmp_path):
    f, h = mutation_sensitive_pair()
    joint = compose_systems(f, h)
    p = tmp_path / "joint.json"
    save_system(p, joint)
    doc = json.loads(p.read_text(encoding="utf-8"))
    assert doc["generator"].get("stages") is not None
    back = load_system(p)
    assert back.generator.serial_stages is not None
    u = f.inputs[0]
    assert sets_equal(evaluate_system(back, u), serial_set_oracle(f, h, u))


def test_stages_must_match_the_dense_rows(tmp_path):
    f, h = mutation_sensitive_pair()
    joint = compose_systems(f, h)
    p = tmp_path / "joint.json"
    save_system(p, joint)
    doc = json.loads(p.read_text(encoding="utf-8"))
    rows = doc["generator"]["rows"]
    rows[0]["next"] = "11" if rows[0]["next"] != "11" else "00"
    p.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(FormatError):
        load_system(p)


def test_bundled_fixture_files_load():
    f = load_system(FIXTURES / "serial_f.json")
    h = load_system(FIXTURES / "serial_h.json")
    assert f.generator.state_width == h.generator.input_width
    step = load_signal(FIXTURES / "step_signal.json")
    assert step.width == 2
    wave = load_signal(FIXTURES / "wave_signal.json")
    assert wave.width == 1
    rho = load_progressive(FIXTURES / "offset_progressive.json")
    assert rho.width == 2
    copy = load_generator(FIXTURES / "copy_generator.json")
    assert (copy.state_width, copy.input_width) == (1, 1)
    run = orbit(copy, next(iter(f.computation.values()))[0],
                bv("0"), wave)
    assert run.width == 1
