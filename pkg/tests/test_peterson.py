import random
from fractions import Fraction

import pytest

from pwlab.chevrep import GroupWord, highest_weight_rep
from pwlab.peterson import (
    FlagCoset,
    TranslateSearchFailed,
    a_I_basis,
    cell_filter,
    cell_intersection_check,
    general_flag_test,
    orbit_census,
    peterson_membership,
    pi_I_image,
    random_word,
    search_general_translate,
    symbolic_exp_word,
    type_a_criterion_holds,
)
from pwlab.principal import principal_data

# frozen from the explicit sl_n matrix oracle (tests/oracles.py: sl_census)
SL4_CENSUS = {(): (0, 0), (1,): (1, 1), (2,): (1, 1), (3,): (1, 1), (1, 2): (2, 2), (1, 3): (2, 1),
              (2, 3): (2, 2), (1, 2, 3): (3, 3)}


def test_identity_of_centralizer_is_in_pet(algebras):
    g = algebras("A", 2)
    assert peterson_membership(g, FlagCoset.from_centralizer(g, GroupWord.identity()))
    pd = principal_data(g)
    word = symbolic_exp_word(pd.basis)
    assert peterson_membership(g, FlagCoset.from_centralizer(g, word))


def test_generic_point_not_in_pet(algebras):
    g = algebras("A", 2)
    pt = FlagCoset(GroupWord.exp(g.f(0), 1) * GroupWord.exp(g.f(1), 1) * GroupWord.exp(g.e(0), 2))
    ok, witness = peterson_membership(g, pt, witness=True)
    assert not ok
    assert witness["root"] == [1, 1]


@pytest.mark.parametrize("t,r,count", [("A", 1, 2), ("A", 2, 4), ("A", 3, 8), ("B", 2, 4), ("G", 2, 4)])
def test_cell_filter(algebras, t, r, count):
    res = cell_filter(algebras(t, r))
    assert len(res.subsets) == count == 2 ** r
    assert len(res.passing_elements) == count
    assert res.point_membership_agrees
    assert all(res.membership_by_subset.values())


@pytest.mark.parametrize("t,r", [("A", 2), ("A", 3), ("B", 2), ("G", 2)])
def test_cell_intersections(algebras, t, r):
    g = algebras(t, r)
    for I in cell_filter(g).subsets:
        c = cell_intersection_check(g, I)
        assert c.ok, c


def test_sl4_census_matches_matrix_oracle(algebras):
    g = algebras("A", 3)
    rows = orbit_census(g)
    got = {tuple(i + 1 for i in r.I): (r.dim_a, r.dim_pi) for r in rows}
    assert got == SL4_CENSUS
    infinite = [r.subset_label() for r in rows if not r.finite]
    assert infinite == ["{1,3}"]
    assert type_a_criterion_holds(g.rs, rows)


def test_pi_image_lies_in_a(algebras):
    g = algebras("A", 3)
    for I in [(0, 2), (0, 1), (0, 1, 2)]:
        basis, commutes, inside = pi_I_image(g, I)
        assert commutes and inside
        assert len(a_I_basis(g, I)) == len(I)


def test_census_csv_row(algebras):
    row = orbit_census(algebras("A", 3), only={(0, 2)})[0]
    assert row.csv_row() == ["{1,3}", 2, 2, 1, "false", "inf"]


def test_f_words_never_general(algebras):
    # exp(f_i) fixes the lowest dual vector, so such words cannot pass
    g = algebras("A", 2)
    V = highest_weight_rep(g, (1, 1))
    word = GroupWord.exp(g.f(0), 1) * GroupWord.exp(g.f(1), 1) * GroupWord.exp(g.f(0), 1)
    assert not general_flag_test(V, (0,), word)


def test_translate_search_is_seeded(algebras):
    g = algebras("A", 2)
    V = highest_weight_rep(g, (1, 1))
    w1, n1 = search_general_translate(V, (0,), seed=7)
    w2, n2 = search_general_translate(V, (0,), seed=7)
    assert n1 == n2
    assert [(c, list(x)) for c, x in w1.factors] == [(c, list(x)) for c, x in w2.factors]
    assert general_flag_test(V, (0,), w1)


def test_translate_search_budget(algebras):
    g = algebras("A", 2)
    V = highest_weight_rep(g, (1, 1))
    with pytest.raises(TranslateSearchFailed, match="within budget"):
        search_general_translate(V, (0,), seed=0, budget=0)


def test_random_word_kinds(algebras):
    g = algebras("A", 2)
    w = random_word(g, random.Random(1), 5, kinds=("e",))
    assert len(w) == 5
    assert all(any(x[k] for k in range(g.n_pos)) for _, x in w.factors)
