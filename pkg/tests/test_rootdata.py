import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pwlab.rootdata import (
    EXPONENTS,
    build_root_system,
    cartan_matrix,
    dominant_weights_below,
    dominates,
    freudenthal_multiplicities,
    longest_element,
    parabolic_longest_test,
    subsets,
    weyl_dimension,
    weyl_group,
)

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4), ("E", 6)]
# |Phi+| and |W| from the classification tables
POSITIVE = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("B", 2): 4, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12,
            ("G", 2): 6, ("F", 4): 24, ("E", 6): 36}
ORDER = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("B", 2): 8, ("B", 3): 48, ("C", 3): 48, ("G", 2): 12}


def test_cartan_matrices():
    assert cartan_matrix("A", 2) == [[2, -1], [-1, 2]]
    # entry (i, j) = <alpha_i, alpha_j^vee>; alpha_1 long in B2, short in G2
    assert cartan_matrix("B", 2) == [[2, -2], [-1, 2]]
    assert cartan_matrix("G", 2) == [[2, -1], [-3, 2]]


@pytest.mark.parametrize("t,r", TYPES)
def test_positive_root_count_and_exponents(t, r):
    rs = build_root_system(t, r)
    assert len(rs.positive_roots) == POSITIVE[(t, r)]
    assert sum(EXPONENTS[(t, r)]) == POSITIVE[(t, r)]
    assert sum(rs.highest_root) == max(EXPONENTS[(t, r)])


@pytest.mark.parametrize("t,r", list(ORDER))
def test_weyl_group_order_and_longest(t, r):
    rs = build_root_system(t, r)
    W = weyl_group(rs)
    assert len(W) == ORDER[(t, r)]
    w0 = longest_element(rs, range(r))
    assert rs.length(w0) == POSITIVE[(t, r)]


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("D", 3), ("E", 9), ("G", 3), ("X", 2), ("A", "x")])
def test_invalid_types_rejected(bad):
    with pytest.raises(ValueError):
        build_root_system(*bad)


@pytest.mark.parametrize("t,r,lam,dim", [
    ("A", 1, (2,), 3), ("A", 2, (1, 1), 8), ("A", 2, (2, 2), 27), ("B", 2, (0, 2), 10),
    ("G", 2, (1, 0), 7), ("G", 2, (0, 1), 14), ("A", 3, (2, 2, 2), 729),
])
def test_weyl_dimension(t, r, lam, dim):
    rs = build_root_system(t, r)
    assert weyl_dimension(rs, lam) == dim
    assert sum(freudenthal_multiplicities(rs, lam).values()) == dim


def test_dominant_weights_below_2theta_a2():
    rs = build_root_system("A", 2)
    below = [w.coords for w in dominant_weights_below(rs, rs.weight((2, 2)))]
    assert below[0] == (2, 2)
    assert sorted(below) == [(0, 0), (0, 3), (1, 1), (2, 2), (3, 0)]


def test_subsets_order():
    assert subsets(2) == [(), (0,), (1,), (0, 1)]


@pytest.mark.parametrize("t,r", [("A", 2), ("A", 3), ("B", 2), ("G", 2), ("B", 3)])
def test_parabolic_longest_count(t, r):
    rs = build_root_system(t, r)
    found = [parabolic_longest_test(rs, w) for w in weyl_group(rs)]
    found = [I for I in found if I is not None]
    assert sorted(found) == sorted(subsets(r))


rs_strategy = st.sampled_from([("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)])


@given(rs_strategy, st.data())
@settings(max_examples=40, deadline=None)
def test_weyl_action_preserves_form(tr, data):
    rs = build_root_system(*tr)
    W = weyl_group(rs)
    w = W[data.draw(st.integers(0, len(W) - 1))]
    a = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank)))
    b = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=rs.rank, max_size=rs.rank)))
    assert rs.inner(w.act(a), w.act(b)) == rs.inner(a, b)
    d = rs.dominant_conjugate(a)
    assert all(c >= 0 for c in d)
    assert d == rs.dominant_conjugate(w.act(a))


@given(rs_strategy, st.data())
@settings(max_examples=30, deadline=None)
def test_dominance_is_a_partial_order(tr, data):
    rs = build_root_system(*tr)
    top = rs.weight(tuple(2 * c for c in rs.to_weight_coords(rs.highest_root)))
    below = dominant_weights_below(rs, top)
    a, b, c = (below[data.draw(st.integers(0, len(below) - 1))] for _ in range(3))
    assert dominates(rs, a, a)
    if dominates(rs, a, b) and dominates(rs, b, c):
        assert dominates(rs, a, c)
    if dominates(rs, a, b) and dominates(rs, b, a):
        assert a == b


@given(rs_strategy, st.data())
@settings(max_examples=25, deadline=None)
def test_freudenthal_agrees_with_weyl(tr, data):
    rs = build_root_system(*tr)
    lam = tuple(data.draw(st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank)))
    mults = freudenthal_multiplicities(rs, lam)
    assert sum(mults.values()) == weyl_dimension(rs, lam)
    assert mults[lam] == 1
