import pytest

from pwlab import linalg as la
from pwlab.chevrep import cartan_projection, highest_weight_rep
from pwlab.coordring import (
    graded_component,
    ideal_closed_under_products,
    phi_check,
    psi_check,
    random_words,
    topmult_on_words,
    topmult_symbolic,
    topmult_table,
    validate_lambda,
)
from pwlab.peterson import search_general_translate
from pwlab.principal import regular_element
from pwlab.uea import CentralizerGroup

# frozen from tests/oracles.py (sympy spans of explicit sl_2 / sl_3 matrix entries)
A1_DIMS = {1: 3, 2: 5, 3: 7}
A2_DIMS = {1: 7, 2: 19}


def test_validate_lambda(algebras):
    rs = algebras("A", 3).rs
    with pytest.raises(ValueError, match="alpha_2"):
        validate_lambda(rs, (1, 0, 1))
    with pytest.raises(ValueError, match="root lattice"):
        validate_lambda(rs, (1, 1, 0))
    assert validate_lambda(rs, (2, 2, 2)).coords == (2, 2, 2)


def test_graded_components(algebras):
    g = algebras("A", 2)
    won = graded_component(g, (1, 1), 1, "wonderful")
    flag = graded_component(g, (1, 1), 1, "flag")
    assert won.dimension == 1 + 64
    assert flag.dimension == 8


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_phi_a1(algebras, n):
    rep = phi_check(algebras("A", 1), (2,), n)
    assert rep.ok
    assert rep.flag_quotient == A1_DIMS.get(n, 1)


def test_phi_a2_degree1(algebras):
    rep = phi_check(algebras("A", 2), (1, 1), 1)
    assert rep.ok and rep.flag_quotient == A2_DIMS[1]
    assert rep.chain["entries"] == 1 + 64


def test_psi_torus_a1(algebras):
    g = algebras("A", 1)
    rx = regular_element(g, ())
    h, _ = search_general_translate(highest_weight_rep(g, (2,)), (), seed=0)
    for n in (1, 2):
        rep = psi_check(g, (2,), n, rx, h)
        assert rep.ok and rep.flag_quotient == A1_DIMS[n]


def test_psi_requires_general_translate(algebras):
    from pwlab.chevrep import GroupWord
    g = algebras("A", 2)
    rx = regular_element(g, (0,))
    bad = GroupWord.exp(g.f(0), 1) * GroupWord.exp(g.f(1), 1) * GroupWord.exp(g.f(0), 1)
    with pytest.raises(ValueError):
        psi_check(g, (1, 1), 1, rx, bad)


def test_topmult_pointwise_and_symbolic(algebras):
    g = algebras("A", 2)
    G = CentralizerGroup.principal(g)
    V = highest_weight_rep(g, (1, 1))
    P = cartan_projection(V, V)
    words = random_words(g, 20, seed=3)
    assert topmult_table(G, P, words) is None
    assert topmult_on_words(V, V.unit(3), V, V.unit(6), words, P)
    assert topmult_symbolic(G, V, V.unit(3), V, V.unit(6), P)


def test_topmult_detects_wrong_projection(algebras):
    g = algebras("A", 1)
    G = CentralizerGroup.principal(g)
    V = highest_weight_rep(g, (2,))
    P = cartan_projection(V, V)
    P.matrix = 2 * P.matrix
    assert topmult_table(G, P, random_words(g, 3)) is not None


def test_vanishing_ideal_is_closed(algebras):
    g = algebras("A", 2)
    assert ideal_closed_under_products(CentralizerGroup.principal(g), (1, 1))
