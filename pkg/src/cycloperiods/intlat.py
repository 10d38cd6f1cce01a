"""Exact integer and rational matrix algorithms.

Everything here works on plain lists of lists (rows) of ints or
Fractions; sizes in this package never exceed 16x16, so the classical
elementary-operation algorithms are used throughout with no modular
tricks.  The three workhorses are Smith normal form with transforms,
a symplectic (Frobenius) basis for alternating forms, and saturated
integer kernels.
"""

from fractions import Fraction
from math import gcd


# -- plain matrix helpers ----------------------------------------------

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def standard_symplectic(g):
    """2g x 2g block matrix [[0, I], [-I, 0]]."""
    J = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[i][g + i] = 1
        J[g + i][i] = -1
    return J


def permutation_matrix(perm):
    """P with P e_j = e_{perm[j]}, i.e. P[perm[j]][j] = 1."""
    n = len(perm)
    P = [[0] * n for _ in range(n)]
    for j, pj in enumerate(perm):
        P[pj][j] = 1
    return P


def transpose(A):
    return [list(row) for row in zip(*A)]


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    if len(A[0]) != k:
        raise ValueError("matmul dimension mismatch")
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def matneg(A):
    return [[-x for x in row] for row in A]


def is_alternating(E):
    n = len(E)
    if any(len(row) != n for row in E):
        return False
    return all(E[i][j] == -E[j][i] for i in range(n) for j in range(i, n))


def mat_to_json(A):
    return {"rows": len(A), "cols": len(A[0]), "data": [list(r) for r in A]}


def mat_from_json(obj):
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ValueError("matrix data does not match declared shape")
    out = []
    for r in data:
        row = []
        for x in r:
            if isinstance(x, list):
                row.append(Fraction(x[0], x[1]))
            elif isinstance(x, int):
                row.append(x)
            else:
                raise ValueError(f"matrix entries must be ints or [n,d]: {x!r}")
        out.append(row)
    return out


# -- Smith normal form -------------------------------------------------

def smith_normal_form(A):
    """(U, D, V) with U*A*V = D, U and V unimodular, diagonal divisor chain.

    Pivoting always picks a minimal nonzero entry of the remaining block,
    which keeps the intermediate entries small at these sizes.
    """
    m, n = len(A), len(A[0])
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    while t < min(m, n):
        piv, best = None, None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < best):
                    best, piv = abs(D[i][j]), (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, m):
            if D[i][t]:
                add_row(i, t, -(D[i][t] // D[t][t]))
                dirty = dirty or D[i][t] != 0
        for j in range(t + 1, n):
            if D[t][j]:
                add_col(j, t, -(D[t][j] // D[t][t]))
                dirty = dirty or D[t][j] != 0
        if dirty:
            continue
        # enforce the divisor chain before moving on
        bad = None
        for i in range(t + 1, m):
            if any(D[i][j] % D[t][t] for j in range(t + 1, n)):
                bad = i
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def snf_divisors(A):
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


# -- determinants, inverses, kernels ------------------------------------

def bareiss_det(A):
    """Fraction-free determinant of an integer matrix."""
    n = len(A)
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if M[r][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def exact_det_inv(A):
    """(det, inverse) of a square integer matrix; inverse is None if det = 0.

    The determinant comes from Bareiss elimination; the inverse is the
    adjugate over det, every cofactor again computed fraction-free.
    """
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    det = bareiss_det(A)
    if det == 0:
        return 0, None
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[A[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof = bareiss_det(minor) if n > 1 else 1
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    inv = [[Fraction(adj[i][j], det) for j in range(n)] for i in range(n)]
    return det, inv


def integer_kernel(A):
    """Saturated Z-basis (list of column vectors) of {v in Z^n : A v = 0}.

    Rational input rows are allowed; denominators are cleared row-wise
    first, which does not change the kernel.
    """
    m, n = len(A), len(A[0])
    B = []
    for row in A:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        B.append([int(x * den) for x in row])
    _, D, V = smith_normal_form(B)
    ker = []
    for j in range(n):
        dj = D[j][j] if j < min(m, n) else 0
        if j >= m or dj == 0:
            ker.append([V[i][j] for i in range(n)])
    return ker


def lattice_contains(gens, v):
    """Is the integer vector v in the Z-span of the integer vectors gens?"""
    n = len(v)
    k = len(gens)
    if k == 0:
        return all(x == 0 for x in v)
    G = [[gens[j][i] for j in range(k)] for i in range(n)]
    U, D, _ = smith_normal_form(G)
    w = [sum(U[i][t] * v[t] for t in range(n)) for i in range(n)]
    for i in range(n):
        d = D[i][i] if i < min(n, k) else 0
        if d != 0:
            if w[i] % d:
                return False
        elif w[i] != 0:
            return False
    return True


def lattice_equal(gens1, gens2):
    return (all(lattice_contains(gens1, v) for v in gens2)
            and all(lattice_contains(gens2, v) for v in gens1))


# -- symplectic basis ----------------------------------------------------

class DegenerateFormError(ValueError):
    """Raised by symplectic_basis on a degenerate form; carries the radical."""

    def __init__(self, radical):
        self.radical = radical
        super().__init__(f"alternating form is degenerate; radical rank {len(radical)}")


def symplectic_basis(E):
    """Frobenius basis for a nondegenerate integral alternating form.

    Returns (S, divisors) with S unimodular and

        S^T E S = [[0, D], [-D, 0]],   D = diag(d1 | d2 | ... | dg).

    Pivot pairs are chosen by minimal positive pairing value (then lowest
    index), which lands J3-type forms directly on their divisor chain.
    Degenerate input raises DegenerateFormError with a radical basis.
    """
    n = len(E)
    if not is_alternating(E):
        raise ValueError("symplectic_basis requires an alternating form")
    basis = [[1 if i == j else 0 for i in range(n)] for j in range(n)]

    def pair(u, v):
        return sum(u[i] * E[i][j] * v[j] for i in range(n) for j in range(n))

    remaining = list(range(n))
    out_a, out_b, divisors = [], [], []

    while True:
        best = None
        for ii in range(len(remaining)):
            for jj in range(ii + 1, len(remaining)):
                i, j = remaining[ii], remaining[jj]
                v = pair(basis[i], basis[j])
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j) if v > 0 else (abs(v), j, i)
        if best is None:
            break
        d, i, j = best
        # divisibility scan: all pairings with the pivot pair must be
        # multiples of d, else we can strictly shrink the minimum
        progressed = False
        for w in remaining:
            if w in (i, j):
                continue
            c = pair(basis[i], basis[w])
            if c % d:
                q = c // d
                basis[w] = [x - q * y for x, y in zip(basis[w], basis[j])]
                progressed = True
                break
            c = pair(basis[j], basis[w])
            if c % d:
                q = c // d
                basis[w] = [x + q * y for x, y in zip(basis[w], basis[i])]
                progressed = True
                break
        if progressed:
            continue
        # clear the pivot pair against everything else
        for w in remaining:
            if w in (i, j):
                continue
            q = pair(basis[i], basis[w]) // d
            basis[w] = [x - q * y for x, y in zip(basis[w], basis[j])]
            q = pair(basis[j], basis[w]) // d
            basis[w] = [x + q * y for x, y in zip(basis[w], basis[i])]
        # divisor chain among the complement: fold an offending vector
        # into the pivot to expose a smaller pairing next round
        others = [w for w in remaining if w not in (i, j)]
        bad = None
        for ii in range(len(others)):
            for jj in range(ii + 1, len(others)):
                if pair(basis[others[ii]], basis[others[jj]]) % d:
                    bad = others[ii]
                    break
            if bad is not None:
                break
        if bad is not None:
            basis[i] = [x + y for x, y in zip(basis[i], basis[bad])]
            continue
        out_a.append(basis[i])
        out_b.append(basis[j])
        divisors.append(d)
        remaining = others

    if remaining:
        raise DegenerateFormError([basis[w] for w in remaining])
    S = transpose(out_a + out_b)  # columns a1..ag, b1..bg
    return S, divisors
