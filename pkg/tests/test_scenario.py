import json

import pytest

from dirackit.scenario import (BUNDLED, RunOptions, ScenarioError, build_scenario, bundled_document,
                               canonical_document, load_bundled, parse_scenario, run_check, run_checks)

MINIMAL = {"patch": ["x", "y"], "forms": {"w": "dx^dy"}, "structures": {"G": {"graph_of": "w"}},
           "checks": [{"name": "g", "kind": "dirac", "structure": "G"}]}


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_scenarios_pass(name):
    outcomes = run_checks(load_bundled(name))
    assert outcomes
    bad = [(o.name, o.observed, o.error) for o in outcomes if not o.ok]
    assert not bad


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip_is_canonical(name):
    sc = load_bundled(name)
    doc = canonical_document(sc)
    again = build_scenario(json.loads(json.dumps(doc)), name)
    assert canonical_document(again) == doc
    assert set(again.env) == set(sc.env)
    assert all(again.env[k] == sc.env[k] for k in sc.env)
    for k, D in sc.structures.items():
        assert again.structures[k].generators == D.generators
        assert again.structures[k].twist == D.twist


def test_outcomes_are_sorted_by_name():
    names = [o.name for o in run_checks(load_bundled("r3_twist_basic"))]
    assert names == sorted(names)


def test_json_syntax_error_offset():
    text = '{"patch": ["x"], ]'
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    assert info.value.offset == text.index("]", 15)


def test_literal_error_offset_is_in_file_bytes():
    text = '{"patch": ["x", "y"], "forms": {"w": "dx ^^ dy"}}'
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    assert info.value.where == "forms.w"
    assert text.encode()[info.value.offset:].startswith(b"^ dy")


def test_unknown_reference():
    doc = dict(MINIMAL, structures={"G": {"graph_of": "nope"}})
    with pytest.raises(ScenarioError) as info:
        build_scenario(doc)
    assert info.value.where.startswith("structures.G")


def test_unknown_check_kind():
    doc = dict(MINIMAL, checks=[{"name": "g", "kind": "bogus"}])
    with pytest.raises(ScenarioError):
        build_scenario(doc)


def test_expectation_mismatch_is_a_failure():
    sc = build_scenario(MINIMAL)
    c = {"name": "g", "kind": "dirac", "structure": "G", "expect": {"verdict": "pass", "rank": 3}}
    o = run_check(sc, c)
    assert o.status == "fail"
    assert o.report.data["mismatched"] == {"rank": {"expected": 3, "observed": 2}}


def test_failing_check_reports_first_failure():
    doc = dict(MINIMAL, structures={"N": {"generators": [{"vector": "@x", "form": "dx"}]}})
    sc = build_scenario(dict(doc, checks=[]))
    o = run_check(sc, {"name": "n", "kind": "dirac", "structure": "N", "expect": {}})
    assert o.observed["verdict"] == "fail"
    assert o.observed["failure"] == "isotropic: <e0, e0> = 1"


def test_properties_check_uses_the_seed():
    sc = load_bundled("r3_twist_basic")
    c = next(c for c in sc.checks if c["kind"] == "properties")
    a = run_check(sc, c, RunOptions(seed=3))
    b = run_check(sc, c, RunOptions(seed=4, max_degree=1))
    assert a.ok and b.ok


def test_bundled_documents_are_json():
    for name in BUNDLED:
        doc = bundled_document(name)
        assert doc["name"] == name
