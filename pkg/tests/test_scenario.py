import json
from fractions import Fraction
from pathlib import Path

import pytest

from ctxlab.algebra import parse_rational
from ctxlab.scenario import ScenarioError, env_truncation, load, loads

SCENARIOS = sorted((Path(__file__).parent.parent / "scenarios").glob("*.json"))


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_every_scenario_loads(path):
    sc = load(path)
    raw = json.loads(path.read_text())
    assert sc.name == raw["name"]
    if sc.distribution is not None:
        assert sc.distribution.violations() == []


@pytest.mark.parametrize("path", [p for p in SCENARIOS if "distribution" in json.loads(p.read_text())],
                         ids=lambda p: p.stem)
def test_probabilities_survive_exactly(path):
    raw = json.loads(path.read_text())
    sc = load(path)
    for b, table in raw["distribution"].items():
        for key, v in table.items():
            outcome = tuple(int(t) for t in key.split(","))
            assert sc.distribution.values[b][outcome] == parse_rational(v)


def test_thirds_are_not_rounded():
    raw = json.loads((SCENARIOS[0].parent / "torus_explicit.json").read_text())
    third = Fraction(1, 3)
    raw["distribution"]["x"] = {"0": "1/3", "1": "2/3"}
    sc = loads(json.dumps(raw))
    assert sc.distribution.values["x"][(0,)] == third


def test_schema_error_points_at_a_line():
    text = '{\n  "name": "bad",\n  "space": {"kind": "torus"},\n  "target": {"d": "two"}\n}'
    with pytest.raises(ScenarioError) as info:
        loads(text)
    assert info.value.line == 4
    assert "target" in str(info.value)


def test_missing_space_and_malformed_json():
    with pytest.raises(ScenarioError, match="'space' is a required property"):
        loads('{"name": "x"}')
    with pytest.raises(ScenarioError) as info:
        loads('{\n  "name": "x",\n  oops\n}')
    assert info.value.line == 3


def test_semantic_errors_are_located():
    text = '{\n  "name": "r",\n  "space": {"kind": "torus"},\n  "target": {"d": 2, "circle_at": 1},\n  "relative": {"sigma0": 1}\n}'
    with pytest.raises(ScenarioError, match="not an edge") as info:
        loads(text)
    assert info.value.line == 5


def test_truncation_environment(monkeypatch):
    monkeypatch.delenv("CTXLAB_TRUNCATION", raising=False)
    assert env_truncation() == 3
    monkeypatch.setenv("CTXLAB_TRUNCATION", "2")
    assert env_truncation() == 2
    sc = loads('{"name": "n", "space": {"kind": "nerve", "moduli": [2]}}')
    assert max(sc.space.dim_of.values()) == 2
    for bad in ("0", "9", "three"):
        monkeypatch.setenv("CTXLAB_TRUNCATION", bad)
        with pytest.raises(ScenarioError, match="CTXLAB_TRUNCATION"):
            env_truncation()
