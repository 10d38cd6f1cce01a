"""Integer lattice routines checked against small classical oracles."""

from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloperiods import intlat

_entry = st.integers(min_value=-6, max_value=6)


def _matrix_strategy(max_dim=4):
    dims = st.integers(min_value=1, max_value=max_dim)
    return dims.flatmap(lambda m: dims.flatmap(
        lambda n: st.lists(
            st.lists(_entry, min_size=n, max_size=n),
            min_size=m, max_size=m)))


def _square_strategy(max_dim=4):
    dims = st.integers(min_value=1, max_value=max_dim)
    return dims.flatmap(lambda n: st.lists(
        st.lists(_entry, min_size=n, max_size=n),
        min_size=n, max_size=n))


_mats = _matrix_strategy()
_squares = _square_strategy()


def _det_laplace(A):
    """Cofactor-expansion determinant, the oracle for the fast routines."""
    n = len(A)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * _det_laplace(minor)
        total += term if j % 2 == 0 else -term
    return total


def _minor_gcd_divisors(A):
    """Invariant factors as quotients of k-minor gcds."""
    m, n = len(A), len(A[0])
    prev = 1
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = [[A[i][j] for j in cols] for i in rows]
                g = gcd(g, abs(_det_laplace(sub)))
        if g == 0:
            out.extend([0] * (min(m, n) - len(out)))
            break
        out.append(g // prev)
        prev = g
    return out


def _rank(A):
    m, n = len(A), len(A[0])
    for k in range(min(m, n), 0, -1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                if _det_laplace([[A[i][j] for j in cols] for i in rows]):
                    return k
    return 0


def _is_unimodular(U):
    return abs(_det_laplace(U)) == 1


@settings(max_examples=400, deadline=None)
@given(_mats)
def test_smith_normal_form_properties(A):
    U, D, V = intlat.smith_normal_form(A)
    m, n = len(A), len(A[0])
    assert _is_unimodular(U) and _is_unimodular(V)
    assert intlat.matmul(U, intlat.matmul(A, V)) == D
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert D[i][j] == 0
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert diag[len(nonzero):] == [0] * (len(diag) - len(nonzero))
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


@settings(max_examples=200, deadline=None)
@given(_mats)
def test_snf_divisors_match_minor_gcds(A):
    assert intlat.snf_divisors(A) == _minor_gcd_divisors(A)


@settings(max_examples=400, deadline=None)
@given(_squares)
def test_bareiss_det_matches_laplace(A):
    assert intlat.bareiss_det(A) == _det_laplace(A)


@settings(max_examples=300, deadline=None)
@given(_squares)
def test_exact_det_inv(A):
    det, inv = intlat.exact_det_inv(A)
    assert det == _det_laplace(A)
    if det == 0:
        assert inv is None
        return
    n = len(A)
    prod = [[sum(Fraction(A[i][k]) * inv[k][j] for k in range(n))
             for j in range(n)] for i in range(n)]
    assert prod == [[Fraction(int(i == j)) for j in range(n)]
                    for i in range(n)]


def test_exact_det_inv_rejects_nonsquare():
    with pytest.raises(ValueError):
        intlat.exact_det_inv([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=300, deadline=None)
@given(_mats)
def test_integer_kernel_is_a_saturated_kernel_basis(A):
    ker = intlat.integer_kernel(A)
    n = len(A[0])
    assert len(ker) == n - _rank(A)
    for v in ker:
        assert all(sum(row[j] * v[j] for j in range(n)) == 0 for row in A)
    if ker:
        # a basis of a saturated sublattice has all invariant factors 1
        assert _minor_gcd_divisors(ker) == [1] * len(ker)


def test_integer_kernel_clears_denominators():
    rows = [[Fraction(1, 2), Fraction(1, 3)]]
    ker = intlat.integer_kernel(rows)
    assert len(ker) == 1
    v = ker[0]
    assert v[0] * Fraction(1, 2) + v[1] * Fraction(1, 3) == 0


def test_lattice_contains_basics():
    gens = [[2, 0], [0, 3]]
    assert intlat.lattice_contains(gens, [4, -3])
    assert not intlat.lattice_contains(gens, [1, 0])
    assert intlat.lattice_contains([], [0, 0])
    assert not intlat.lattice_contains([], [1, 0])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(_entry, min_size=3, max_size=3),
                min_size=2, max_size=3),
       st.lists(_entry, min_size=2, max_size=3))
def test_lattice_contains_integer_combinations(gens, coeffs):
    v = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)]
    assert intlat.lattice_contains(gens, v)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(_entry, min_size=3, max_size=3),
                min_size=1, max_size=3))
def test_lattice_equal_under_row_shuffle_and_sign(gens):
    flipped = [[-x for x in g] for g in reversed(gens)]
    assert intlat.lattice_equal(gens, flipped)
    doubled = [[2 * x for x in g] for g in gens]
    has_content = any(any(x for x in g) for g in gens)
    assert intlat.lattice_equal(gens, doubled) == (not has_content)


def test_permutation_matrix_and_alternating():
    P = intlat.permutation_matrix([1, 2, 0])
    assert intlat.matmul(P, [[1], [0], [0]]) == [[0], [1], [0]]
    assert intlat.is_alternating([[0, 2], [-2, 0]])
    assert not intlat.is_alternating([[0, 2], [2, 0]])
    assert not intlat.is_alternating([[1, 0], [0, 1]])


def test_standard_symplectic_shape():
    J = intlat.standard_symplectic(2)
    assert J == [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert intlat.is_alternating(J)


def _symplectic_block(divs):
    g = len(divs)
    E = [[0] * (2 * g) for _ in range(2 * g)]
    for i, d in enumerate(divs):
        E[i][g + i] = d
        E[g + i][i] = -d
    return E


def test_symplectic_basis_on_standard_form():
    J = intlat.standard_symplectic(3)
    S, divs = intlat.symplectic_basis(J)
    assert list(divs) == [1, 1, 1]
    assert intlat.matmul(intlat.transpose(S), intlat.matmul(J, S)) == J


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(_entry, min_size=4, max_size=4),
                min_size=4, max_size=4))
def test_symplectic_basis_normal_form(B):
    E = [[B[i][j] - B[j][i] for j in range(4)] for i in range(4)]
    if _det_laplace(E) == 0:
        with pytest.raises(intlat.DegenerateFormError):
            intlat.symplectic_basis(E)
        return
    S, divs = intlat.symplectic_basis(E)
    assert _is_unimodular(S)
    got = intlat.matmul(intlat.transpose(S), intlat.matmul(E, S))
    assert got == _symplectic_block(list(divs))
    assert all(d > 0 for d in divs)
    for a, b in zip(divs, divs[1:]):
        assert b % a == 0


def test_symplectic_basis_reports_radical():
    E = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    with pytest.raises(intlat.DegenerateFormError) as err:
        intlat.symplectic_basis(E)
    (v,) = err.value.radical
    assert all(sum(E[i][j] * v[j] for j in range(3)) == 0 for i in range(3))


def test_mat_json_roundtrip():
    A = [[1, -2, 3], [0, 5, 7]]
    assert intlat.mat_from_json(intlat.mat_to_json(A)) == A
    obj = {"rows": 1, "cols": 2, "data": [[[1, 2], 4]]}
    assert intlat.mat_from_json(obj) == [[Fraction(1, 2), 4]]
    with pytest.raises(ValueError):
        intlat.mat_from_json({"rows": 2, "cols": 2, "data": [[1, 2]]})
    with pytest.raises(ValueError):
        intlat.mat_from_json({"rows": 1, "cols": 1, "data": [["x"]]})
