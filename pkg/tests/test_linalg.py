from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pwlab import _kernels, linalg as la
from pwlab.polynomial import MultiPoly

small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_m=7, max_n=7):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(0, min(m, n)))
    A = np.array(draw(st.lists(st.lists(small, min_size=r, max_size=r), min_size=m, max_size=m)), dtype=np.int64).reshape(m, r)
    B = np.array(draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=r, max_size=r)), dtype=np.int64).reshape(r, n)
    return A @ B


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel_with_right_dimension(A):
    Q = la.qmat(A.tolist())
    K = la.nullspace(Q)
    assert la.is_zero(la.matmul(Q, K))
    assert K.shape[1] == A.shape[1] - np.linalg.matrix_rank(A.astype(float))


@given(int_matrices())
@settings(max_examples=40, deadline=None)
def test_modular_route_matches_fraction_route(A):
    Q = la.qmat(A.tolist())
    K1 = la.nullspace(Q, method="fraction")
    K2 = la.nullspace(Q, method="modular")
    assert K1.shape == K2.shape
    if K1.shape[1]:
        assert la.same_span(K1, K2)


@given(int_matrices(9, 9), st.sampled_from(_kernels.PRIMES[:3]))
@settings(max_examples=40, deadline=None)
def test_numba_and_numpy_kernels_agree(A, p):
    R1, p1 = _kernels.rref_mod_p_numpy(A % p, p)
    R2, p2 = _kernels.rref_mod_p_numba(A % p, p)
    assert np.array_equal(R1, R2) and np.array_equal(p1, p2)


@given(st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000))
def test_rational_reconstruction_round_trip(x):
    m = _kernels.PRIMES[0] * _kernels.PRIMES[1]
    a = x.numerator * pow(x.denominator, -1, m) % m
    assert la.rational_reconstruct(a, m) == x


def test_solve_canonical_and_inconsistent():
    A = la.qmat([[1, 2], [2, 4]])
    x = la.solve(A, la.qvec([3, 6]))
    assert la.is_zero(la.matmul(A, x) - la.qvec([3, 6]))
    with pytest.raises(la.InconsistentSystem):
        la.solve(A, la.qvec([1, 0]))


def test_rank_of_wide_matrix():
    A = la.qmat([[1, 0, 1, 2, 3], [2, 0, 2, 4, 6]])
    assert la.rank(A) == 1


def test_large_matrix_uses_modular_and_is_exact():
    rng = np.random.default_rng(3)
    A = rng.integers(-3, 4, size=(30, 25)) @ rng.integers(-3, 4, size=(25, 40))
    Q = la.qmat((A // 1).tolist())
    Q[0, 0] = Q[0, 0] + Fraction(1, 7)
    K = la.nullspace(Q, method="modular")
    assert la.is_zero(la.matmul(Q, K))
    assert K.shape[1] == 40 - np.linalg.matrix_rank(Q.astype(float))


def test_backend_reports_selection():
    assert _kernels.backend() in ("numba", "numpy")


polys = st.builds(
    lambda d: MultiPoly(2, {k: Fraction(v) for k, v in d.items() if v}),
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-3, 3), max_size=4),
)


@given(polys, polys, polys)
@settings(max_examples=60)
def test_polynomial_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys, st.fractions(max_denominator=5), st.fractions(max_denominator=5))
@settings(max_examples=40)
def test_polynomial_evaluation_is_a_homomorphism(a, x, y):
    b = a * a + a
    assert b((x, y)) == a((x, y)) ** 2 + a((x, y))


def test_env_flag_selects_numpy_fallback():
    import os
    import subprocess
    import sys
    env = dict(os.environ, PWLAB_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", "from pwlab import _kernels; print(_kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
