import pytest

from dirackit.mutation import mutants, run_mutations
from dirackit.scenario import BUNDLED, ScenarioError, build_scenario, load_bundled


def test_mutants_double_one_coefficient():
    sc = load_bundled("r2_translation_moment")
    ms = list(mutants(sc))
    assert ms
    for m in ms:
        assert m.doc != sc.doc
        assert "x2" in m.description


def test_bare_references_are_not_mutated():
    sc = load_bundled("r2_symplectic")
    wheres = {m.where for m in mutants(sc)}
    assert "forms.omega" in wheres
    assert "structures.G.graph_of" not in wheres


def test_structure_constants_are_mutated():
    sc = load_bundled("sl2_hemisemidirect")
    wheres = [m.where for m in mutants(sc)]
    assert any(w.startswith("algebras.") and w.endswith("[3]") for w in wheres)
    assert any(w.startswith("maps.") for w in wheres)


def test_a_mutant_can_fail_to_load_and_still_count():
    sc = load_bundled("sl2_hemisemidirect")
    m = next(m for m in mutants(sc) if m.where.startswith("algebras.sl2"))
    with pytest.raises(ScenarioError):
        build_scenario(m.doc)


@pytest.mark.parametrize("name", BUNDLED)
def test_every_mutant_is_caught(name):
    results = run_mutations(load_bundled(name))
    assert results
    missed = [(r.where, r.description) for r in results if not r.caught]
    assert not missed
