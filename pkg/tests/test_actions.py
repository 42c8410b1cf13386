import json
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURES, load
from fqreduce import BudgetExceeded
from fqreduce.actions import (ActionSpec, FiniteGroup, PreconditionError,
                              check_injective_bijective, check_pgroup_congruence,
                              check_two_actions, cyclic_group, fixed_points,
                              orbit_decomposition, validate_action)
from fqreduce.fields import PolynomialMap, all_points, get_field

CONGRUENCE = sorted((FIXTURES / "actions" / "congruence").glob("*.json"))
PAIRS = sorted((FIXTURES / "actions" / "pairs").glob("*.json"))


def affine_action(p, c, b, m):
    """Z/m acting on F_p by powers of x -> c x + b."""
    ctx = get_field(p)
    maps = []
    for k in range(m):
        ck = pow(c, k, p)
        bk = b * sum(pow(c, j, p) for j in range(k)) % p
        maps.append(PolynomialMap(ctx, 1, [[(ck, (1,)), (bk, (0,))]]))
    return ActionSpec(cyclic_group(m), maps)


def brute_orbits(a):
    """Orbit sizes by breadth-first search over explicit images."""
    images = [f.apply(np.arange(a.size)) for f in a.maps]
    seen = np.zeros(a.size, dtype=bool)
    sizes = []
    for x in range(a.size):
        if seen[x]:
            continue
        orbit = {int(img[x]) for img in images}
        for y in orbit:
            seen[y] = True
        sizes.append(len(orbit))
    return sorted(sizes)


def test_examples_neg_on_f5():
    a = affine_action(5, 4, 0, 2)
    assert validate_action(a) is None
    assert fixed_points(a) == [[0]]
    assert orbit_decomposition(a) == [1, 2, 2]
    rep = check_pgroup_congruence(a)
    assert rep.passed and rep.fixed_count == 1


def test_examples_mul2_on_f7():
    a = affine_action(7, 2, 0, 3)
    assert validate_action(a) is None
    assert fixed_points(a) == [[0]]
    assert orbit_decomposition(a) == [1, 3, 3]
    rep = check_pgroup_congruence(a)
    assert rep.passed and rep.strong_holds and rep.q_is_one_mod_p


def test_translation_has_no_fixed_point():
    a = ActionSpec.from_record(load("actions/extra/z5_translate_f5_n1.json"))
    assert validate_action(a) is None
    assert fixed_points(a) == []
    with pytest.raises(PreconditionError):
        check_pgroup_congruence(a)          # p = char


def test_trivial_action_orbits():
    a = ActionSpec.from_record(load("actions/extra/trivial_f3_n1.json"))
    assert orbit_decomposition(a) == [1, 1, 1]


def test_not_prime_power_group():
    a = ActionSpec.from_record(load("actions/extra/z6_mul3_f7_n1.json"))
    with pytest.raises(PreconditionError, match="prime power"):
        check_pgroup_congruence(a)


def test_bad_tables_and_actions():
    rec = load("actions/bad/nonassociative_table.json")
    bad = validate_action(ActionSpec.from_record(rec))
    assert bad is not None and bad["kind"] in ("associativity", "identity", "inverse")
    bad = validate_action(ActionSpec.from_record(load("actions/bad/not_an_action.json")))
    assert bad is not None and bad["kind"] in ("composition", "identity-map")
    with pytest.raises(ValueError, match="group"):
        ActionSpec.from_record(load("actions/bad/missing_field.json"))


def test_group_generators_span():
    g = FiniteGroup(["e", "a", "b", "c"],
                    [["e", "a", "b", "c"], ["a", "e", "c", "b"],
                     ["b", "c", "e", "a"], ["c", "b", "a", "e"]], "e")
    assert g.axiom_violation() is None
    assert len(g.generators()) == 2


@pytest.mark.parametrize("path", CONGRUENCE, ids=lambda p: p.stem)
def test_congruence_corpus(path):
    a = ActionSpec.from_record(json.loads(path.read_text()))
    assert validate_action(a) is None
    rep = check_pgroup_congruence(a)
    assert rep.passed and rep.has_fixed_point
    assert (rep.fixed_count - rep.q ** rep.n) % rep.prime == 0
    assert sorted(orbit_decomposition(a)) == brute_orbits(a)
    assert orbit_decomposition(a).count(1) == rep.fixed_count


@pytest.mark.parametrize("path", PAIRS, ids=lambda p: p.stem)
def test_pairs(path):
    rec = json.loads(path.read_text())
    a1, a2 = ActionSpec.from_record(rec["first"]), ActionSpec.from_record(rec["second"])
    rep = check_two_actions(a1, a2)
    assert rep.passed
    assert rep.a % rep.m == rep.a_prime % rep.m == pow(rep.q, rep.n, rep.m)


def test_pair_not_free_names_point():
    rec = load("actions/bad/not_free_z4_f5_n2.json")
    a1, a2 = ActionSpec.from_record(rec["first"]), ActionSpec.from_record(rec["second"])
    with pytest.raises(PreconditionError, match="fixed by"):
        check_two_actions(a1, a2)


@given(st.sampled_from([3, 5, 7]), st.integers(0, 6))
def test_affine_involution_congruence(p, b):
    # x -> -x + b is an involution with one fixed point in odd characteristic
    act = affine_action(p, p - 1, b, 2)
    assert validate_action(act) is None
    assert len(fixed_points(act)) == 1


def test_budget_exceeded():
    a = ActionSpec.from_record(json.loads(CONGRUENCE[0].read_text()))
    with pytest.raises(BudgetExceeded):
        fixed_points(a, budget=2)


def _map(name):
    rec = load(f"maps/{name}.json")
    ctx = get_field(rec["p"], rec.get("k", 1))
    return PolynomialMap.from_record(ctx, rec["n"], rec["map"])


def test_cube_is_extension_sensitive():
    rep = check_injective_bijective(_map("cube_f2_n1"), 3)
    assert [lv.injective for lv in rep.levels] == [True, False, True]
    assert not rep.violation


def test_translation_and_triangular_bijective():
    for name in ("translate_f3_n1", "triangular_f3_n2"):
        rep = check_injective_bijective(_map(name), 2)
        assert all(lv.injective and lv.surjective for lv in rep.levels)


def test_square_not_injective():
    rep = check_injective_bijective(_map("square_f5_n1"), 1)
    assert not rep.levels[0].injective and not rep.levels[0].surjective


@given(st.sampled_from([2, 3, 5]), st.data())
def test_injectivity_brute(p, data):
    ctx = get_field(p)
    coeffs = data.draw(st.lists(st.tuples(st.integers(0, p - 1), st.integers(0, 5)),
                                max_size=3))
    f = PolynomialMap(ctx, 1, [[(c, (e,)) for c, e in coeffs]])
    lv = check_injective_bijective(f, 1).levels[0]
    images = [int(f.apply(np.array([x]))[0]) for x in range(p)]
    assert lv.injective == (len(set(images)) == p)
    assert lv.surjective == (len(set(images)) == p)
