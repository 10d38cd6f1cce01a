"""Unitary module data for (1,1,3)-polarized threefolds with Z[rho] action.

The pipeline: build_module packages an order-3 lattice action with a
chosen Z[rho]-basis; solve_T recovers the skew-Hermitian form over
K = Q(rho) from two integer trace-pairing matrices; diagonalize_W
reduces it to diag(i, i, -i) shape by Hermitian congruence;
family_periods writes down the induced period matrices over the 2-ball;
match_solver locates the parameter point where the family meets a given
constant period matrix, and prym_family rebases the matched family to
the lattice coordinates it came from.
"""

from fractions import Fraction
import itertools

from . import intlat
from .balls import real_sqrt_ball
from .exactfield import (TowerElem, ZERO, ONE, IUNIT, RHO, SQRT3, ROOT4_3,
                         embed, real_sign)
from .periods import (AffineForm, PeriodMatrix, form_matmul_rat,
                      scalar_form_matmul, tower_conj, tower_identity,
                      tower_inv, tower_matmul, tower_matrix, tower_transpose)


class ModuleError(ValueError):
    """Rejected module data; .evidence carries the witness."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class MatchError(ValueError):
    """Matching system inconsistent; .residuals lists offending entries."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or []


class ConventionError(ValueError):
    """No (or no unique) convention choice survives the anchor."""

    def __init__(self, message, candidates=None):
        super().__init__(message)
        self.candidates = candidates or []


class PELModule:
    """Rank-6 lattice with an order-3 action and a chosen triple of
    generators u1, u2, u3 such that (u, action*u) is a Z-basis."""

    def __init__(self, action, gens, pairing, basis, g0full, g1full):
        self.action = action
        self.gens = gens
        self.pairing = pairing
        self.basis = basis          # columns u1,u2,u3,rho u1,rho u2,rho u3
        self.g0full = g0full        # basis^T pairing basis
        self.g1full = g1full        # basis^T action^T pairing basis

    @property
    def g0(self):
        return [row[:3] for row in self.g0full[:3]]

    @property
    def g1(self):
        return [row[:3] for row in self.g1full[:3]]

    def basis_inverse(self):
        det, inv = intlat.exact_det_inv(self.basis)
        return [[int(x) for x in row] for row in inv]

    def generator_in_kvec(self, i):
        """Basis vector i as a column of K^3: u_i -> e_i, u_{3+k} -> rho e_k."""
        v = [ZERO, ZERO, ZERO]
        v[i % 3] = ONE if i < 3 else RHO
        return v


def build_module(action, gens, pairing):
    """Assemble a PELModule, rejecting inconsistent data.

    action must square-plus-itself to minus the identity and preserve
    the pairing; the six columns (gens, action*gens) must form a Z-basis,
    otherwise the SNF divisors of the assembled matrix are reported.
    """
    n = len(action)
    if len(gens) * 2 != n:
        raise ModuleError(f"need {n // 2} generators for a rank-{n} lattice")
    ident = intlat.identity(n)
    poly = intlat.matmul(action, action)
    poly = [[poly[i][j] + action[i][j] + ident[i][j] for j in range(n)]
            for i in range(n)]
    if any(x != 0 for row in poly for x in row):
        raise ModuleError("action does not satisfy x^2 + x + 1 = 0")
    if intlat.matmul(intlat.transpose(action),
                     intlat.matmul(pairing, action)) != pairing:
        raise ModuleError("action does not preserve the pairing")
    cols = list(gens) + [[sum(action[i][j] * g[j] for j in range(n))
                          for i in range(n)] for g in gens]
    basis = [[cols[j][i] for j in range(n)] for i in range(n)]
    det = intlat.bareiss_det(basis)
    if abs(det) != 1:
        divs = intlat.snf_divisors(basis)
        raise ModuleError(
            f"generators do not span the lattice (det {det})",
            evidence={"snf_divisors": divs})
    bt = intlat.transpose(basis)
    g0full = intlat.matmul(bt, intlat.matmul(pairing, basis))
    g1full = intlat.matmul(bt, intlat.matmul(intlat.transpose(action),
                                             intlat.matmul(pairing, basis)))
    return PELModule(action, [list(g) for g in gens], pairing,
                     basis, g0full, g1full)


def solve_T(g0, g1):
    """Recover the 3x3 skew-Hermitian form over K from trace pairings.

    Entry p + q*rho is pinned by tr(x) = 2p - q = g0 and
    tr(rho*x) = -p - q = g1.  The result is verified skew-Hermitian;
    failure means the two pairing matrices are inconsistent.
    """
    T = []
    for i in range(3):
        row = []
        for j in range(3):
            p = Fraction(g0[i][j] - g1[i][j], 3)
            q = Fraction(-g0[i][j] - 2 * g1[i][j], 3)
            row.append(TowerElem.rational(p) + TowerElem.rational(q) * RHO)
        T.append(row)
    bad = [(i, j) for i in range(3) for j in range(3)
           if not (T[j][i] + T[i][j].conjugate()).is_zero()]
    if bad:
        raise ValueError(f"solved form is not skew-Hermitian at {bad}")
    return T


def trace_pairing(module, T):
    """All 36 trace pairings tr(a^T T conj(b)) over the module basis."""
    vecs = [module.generator_in_kvec(i) for i in range(6)]
    out = []
    for a in vecs:
        row = []
        for b in vecs:
            s = ZERO
            for i in range(3):
                for j in range(3):
                    s = s + a[i] * T[i][j] * b[j].conjugate()
            t = s + s.conjugate()
            if not t.is_rational():
                raise ValueError("trace pairing left the rationals")
            row.append(t.as_rational())
        out.append(row)
    return out


def integrality_check(module, T):
    """Trace pairings must be integers matching the lattice pairing.

    Returns (ok, offenders); each offender is (i, j, got, expected).
    """
    pairs = trace_pairing(module, T)
    offenders = []
    for i in range(6):
        for j in range(6):
            got = pairs[i][j]
            want = Fraction(module.g0full[i][j])
            if got.denominator != 1 or got != want:
                offenders.append((i, j, got, want))
    return not offenders, offenders


# -- Hermitian congruence reduction --------------------------------------

def ldl_hermitian(G):
    """Diagonalize a Hermitian tower matrix by congruence.

    Returns (D, S) with S G S^dagger = D diagonal, S invertible over the
    tower.  When the working diagonal is all zero a row addition (by 1,
    or by i when the pairing entry is purely imaginary) creates a pivot.
    """
    n = len(G)
    bad = [(i, j) for i in range(n) for j in range(n)
           if not (G[j][i].conjugate() - G[i][j]).is_zero()]
    if bad:
        raise ValueError(f"matrix is not Hermitian at {bad}")
    A = [row[:] for row in G]
    S = tower_identity(n)

    def apply(E):
        nonlocal A, S
        Ed = tower_conj(tower_transpose(E))
        A = tower_matmul(E, tower_matmul(A, Ed))
        S = tower_matmul(E, S)

    for k in range(n):
        piv = next((r for r in range(k, n) if not A[r][r].is_zero()), None)
        if piv is None:
            pair = next(((r, s) for r in range(k, n) for s in range(k, n)
                         if not A[r][s].is_zero()), None)
            if pair is None:
                break
            r, s = pair
            for unit in (ONE, IUNIT):
                E = tower_identity(n)
                E[r][s] = unit
                saved = ([row[:] for row in A], [row[:] for row in S])
                apply(E)
                if not A[r][r].is_zero():
                    break
                A, S = saved
            else:
                raise ValueError("could not create a pivot")
            piv = r
        if piv != k:
            E = tower_identity(n)
            E[k][k] = E[piv][piv] = ZERO
            E[k][piv] = E[piv][k] = ONE
            apply(E)
        for r in range(k + 1, n):
            if not A[r][k].is_zero():
                E = tower_identity(n)
                E[r][k] = -(A[r][k] / A[k][k])
                apply(E)
    off = [(i, j) for i in range(n) for j in range(n)
           if i != j and not A[i][j].is_zero()]
    if off:
        raise ValueError(f"congruence reduction left entries at {off}")
    return A, S


def signature(T, prec=128):
    """Certified signature (positives, negatives) of the Hermitian -iT.

    Tower input makes the pivot signs exact rational comparisons; the
    precision argument is kept for interface symmetry and as the budget
    an approximate backend would use.
    """
    del prec
    H = [[x * (-IUNIT) for x in row] for row in T]
    D, _ = ldl_hermitian(H)
    signs = [real_sign(D[i][i]) for i in range(len(D))]
    if 0 in signs:
        raise ValueError("form is degenerate")
    return signs.count(1), signs.count(-1)


def tower_sqrt(x):
    """Square root of a Q(sqrt3) element inside the tower, or None.

    Candidates are s + t*sqrt3 and alpha*(s + t*sqrt3) with rational
    s, t; each reduces to a rational quadratic in t^2.
    """
    a, b = x.as_sqrt3_pair()

    def rat_sqrt(q):
        q = Fraction(q)
        if q < 0:
            return None
        from math import isqrt
        rn, rd = isqrt(q.numerator), isqrt(q.denominator)
        if rn * rn == q.numerator and rd * rd == q.denominator:
            return Fraction(rn, rd)
        return None

    if b == 0:
        s = rat_sqrt(a)
        if s is not None:
            return TowerElem.rational(s)
        t = rat_sqrt(a / 3)
        if t is not None:
            return TowerElem.rational(t) * SQRT3
    if a == 0:
        s = rat_sqrt(b)
        if s is not None:
            return TowerElem.rational(s) * ROOT4_3
        s = rat_sqrt(Fraction(b, 3))
        if s is not None:
            return TowerElem.rational(s) * ROOT4_3 ** 3
    # (s + t sqrt3)^2 = x: 12 t^4 - 4 a t^2 + b^2 = 0
    disc = rat_sqrt(16 * a * a - 48 * b * b)
    if disc is not None:
        for tsq in ((4 * a + disc) / 24, (4 * a - disc) / 24):
            t = rat_sqrt(tsq)
            if t:
                s = b / (2 * t)
                return TowerElem.rational(s) + TowerElem.rational(t) * SQRT3
    # (alpha (s + t sqrt3))^2 = 6st + (s^2 + 3t^2) sqrt3: 108 t^4 - 36 b t^2 + a^2 = 0
    disc = rat_sqrt(Fraction(36 * b) ** 2 - 432 * a * a)
    if disc is not None:
        for tsq in ((36 * b + disc) / 216, (36 * b - disc) / 216):
            t = rat_sqrt(tsq)
            if t:
                s = a / (6 * t)
                return (TowerElem.rational(s)
                        + TowerElem.rational(t) * SQRT3) * ROOT4_3
    return None


def defw_residual(W, T):
    """T_ij minus sum_m W[m][i] D_m conj(W[m][j]) with D = diag(i, i, -i)."""
    D = [IUNIT, IUNIT, -IUNIT]
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            s = ZERO
            for m in range(3):
                s = s + W[m][i] * D[m] * W[m][j].conjugate()
            row.append(s - T[i][j])
        out.append(row)
    return out


class DiagonalizerResult:
    """Output of diagonalize_W; exact says whether W lives in the tower."""

    def __init__(self, W, exact, pivots, residual_bound):
        self.W = W
        self.exact = exact
        self.pivots = pivots
        self.residual_bound = residual_bound


def diagonalize_W(T, prec=256):
    """Find W with T = W^T diag(i, i, -i) conj(W).

    Works by congruence reduction of the Hermitian -iT; the two positive
    pivots are routed to the first two slots.  Pivot square roots are
    taken in the tower when they exist there (the residual is then zero
    exactly); otherwise W is returned as a certified ball matrix and the
    residual bound at the requested precision is reported.
    """
    H = [[x * (-IUNIT) for x in row] for row in T]
    D, S = ldl_hermitian(H)
    pivots = [D[i][i] for i in range(3)]
    signs = [real_sign(p) for p in pivots]
    if signs.count(1) != 2 or signs.count(-1) != 1:
        raise ValueError(f"signature {(signs.count(1), signs.count(-1))}"
                         " is not (2,1)")
    order = sorted(range(3), key=lambda i: 0 if signs[i] > 0 else 1)
    Sinv = tower_inv(S)
    roots = [tower_sqrt(pivots[i] if signs[i] > 0 else -pivots[i])
             for i in order]
    if all(r is not None for r in roots):
        W = tower_transpose([[Sinv[i][order[j]] * roots[j] for j in range(3)]
                             for i in range(3)])
        res = defw_residual(W, T)
        if any(not x.is_zero() for row in res for x in row):
            raise ArithmeticError("exact diagonalizer failed its residual")
        return DiagonalizerResult(W, True, pivots, Fraction(0))
    # ball fallback: the pivot roots are real but not tower-valued
    Sb = [[embed(Sinv[i][j], prec) for j in range(3)] for i in range(3)]
    rb = [real_sqrt_ball(embed(pivots[i] if signs[i] > 0 else -pivots[i],
                               prec), prec) for i in order]
    Wb = [[Sb[j][order[i]] * rb[i] for j in range(3)] for i in range(3)]
    Db = [embed(IUNIT, prec), embed(IUNIT, prec), embed(-IUNIT, prec)]
    bound = Fraction(0)
    for i in range(3):
        for j in range(3):
            acc = embed(-T[i][j], prec)
            for m in range(3):
                acc = acc + Wb[m][i] * Db[m] * Wb[m][j].conjugate()
            bound = max(bound, acc.mag_upper())
    return DiagonalizerResult(Wb, False, pivots, bound)


# -- the period family over the 2-ball -----------------------------------

class Conventions:
    """Resolved readings of the family construction's ambiguous choices."""

    def __init__(self, embedding="sigma", i2="identity", column_order="grouped"):
        if embedding not in ("sigma", "sigmabar"):
            raise ValueError(f"unknown embedding {embedding!r}")
        if i2 not in ("identity", "i-identity"):
            raise ValueError(f"unknown I2 reading {i2!r}")
        if column_order not in ("grouped", "interleaved"):
            raise ValueError(f"unknown column order {column_order!r}")
        self.embedding = embedding
        self.i2 = i2
        self.column_order = column_order

    def to_json(self):
        return {"embedding": self.embedding,
                "I2_in_Jz": self.i2,
                "column_order": self.column_order}

    def __repr__(self):
        return (f"Conventions({self.embedding}, I2={self.i2}, "
                f"{self.column_order})")


def _family_entries(W, conv):
    """3x6 affine forms: columns are the images of u_k and rho u_k."""
    z1 = AffineForm.variable("z1")
    z2 = AffineForm.variable("z2")
    Wc = tower_conj(W)
    d = ONE if conv.i2 == "identity" else IUNIT
    row1 = [z1 * W[0][k] + z2 * W[1][k] + AffineForm(W[2][k]) for k in range(3)]
    row2 = [AffineForm(Wc[0][k] * d) + z1 * Wc[2][k] for k in range(3)]
    row3 = [AffineForm(Wc[1][k] * d) + z2 * Wc[2][k] for k in range(3)]
    rows = [row1, row2, row3]
    if conv.embedding == "sigma":
        mults = [RHO, RHO.conjugate(), RHO.conjugate()]
    else:
        mults = [RHO.conjugate(), RHO, RHO]
    out = []
    for i in range(3):
        shifted = [rows[i][j] * mults[i] for j in range(3)]
        if conv.column_order == "grouped":
            out.append(rows[i] + shifted)
        else:
            out.append([x for pair in zip(rows[i], shifted) for x in pair])
    return out


def family_periods(W, module, conv):
    """Period matrix of the family in module-generator coordinates.

    Columns are indexed by (u1, u2, u3, rho u1, rho u2, rho u3), so the
    polarization is the full trace-pairing Gram matrix of the module.
    """
    return PeriodMatrix(3, ("z1", "z2"), _family_entries(W, conv),
                        module.g0full)


class MatchResult:
    """Solution of C * family(z) = target with block-diagonal C."""

    def __init__(self, z1, z2, coeffs):
        self.z1 = z1
        self.z2 = z2
        self.coeffs = coeffs  # {"c11","c22","c23","c32","c33"}

    def point(self):
        return {"z1": self.z1, "z2": self.z2}

    def block_matrix(self):
        c = self.coeffs
        return [[c["c11"], ZERO, ZERO],
                [ZERO, c["c22"], c["c23"]],
                [ZERO, c["c32"], c["c33"]]]

    def ball_norm(self):
        """|z1|^2 + |z2|^2 as an exact real tower element."""
        return (self.z1 * self.z1.conjugate()
                + self.z2 * self.z2.conjugate())

    def in_unit_ball(self):
        return real_sign(TowerElem.rational(1) - self.ball_norm()) > 0


def match_solver(family, target):
    """Solve C * family(z1, z2) = target exactly.

    family: PeriodMatrix affine in z1, z2 (or a raw 3x6 form matrix);
    target: 3x6 tower matrix.  The first row is inverted through its
    coefficient matrix, which pins (c11 z1, c11 z2, c11) at once; the
    remaining two rows each give an overdetermined 2x2 linear system.
    Every one of the 18 entries is then verified; any residual raises
    MatchError carrying the offending entries.
    """
    F = family.entries if isinstance(family, PeriodMatrix) else family
    Wx = [[F[0][k].coeffs.get("z1", ZERO) for k in range(3)],
          [F[0][k].coeffs.get("z2", ZERO) for k in range(3)],
          [F[0][k].const for k in range(3)]]
    try:
        WinvT = tower_transpose(tower_inv(Wx))
    except ValueError as exc:
        raise MatchError(f"row-1 coefficient matrix singular: {exc}") from exc
    t1 = [target[0][k] for k in range(3)]
    w = [sum((WinvT[i][j] * t1[j] for j in range(3)), ZERO) for i in range(3)]
    c11 = w[2]
    if c11.is_zero():
        raise MatchError("row-1 system forces c11 = 0")
    point = {"z1": w[0] / c11, "z2": w[1] / c11}
    F3 = [[F[i][k].evaluate(point) for k in range(3)] for i in range(3)]
    coeffs = {"c11": c11}
    for ri, names in ((1, ("c22", "c23")), (2, ("c32", "c33"))):
        eqs = [(F3[1][k], F3[2][k], target[ri][k]) for k in range(3)]
        solved = None
        for (a1, b1, t1_), (a2, b2, t2_) in itertools.combinations(eqs, 2):
            det = a1 * b2 - a2 * b1
            if not det.is_zero():
                solved = ((t1_ * b2 - t2_ * b1) / det,
                          (a1 * t2_ - a2 * t1_) / det)
                break
        if solved is None:
            raise MatchError(f"row {ri + 1} system is degenerate")
        coeffs[names[0]], coeffs[names[1]] = solved
    result = MatchResult(point["z1"], point["z2"], coeffs)
    CF = scalar_form_matmul(result.block_matrix(), F)
    residuals = []
    for i in range(3):
        for j in range(6):
            r = CF[i][j].evaluate(point) - target[i][j]
            if not r.is_zero():
                residuals.append((i, j, r))
    if residuals:
        raise MatchError(f"{len(residuals)} entries fail verification",
                         residuals)
    return result


def resolve_conventions(W, module, target):
    """Search the finite ambiguity set for the family construction.

    Tries every (embedding, I2 reading, column order) combination and
    keeps those whose family admits an exact match against the target.
    Exactly one must survive; anything else raises ConventionError.
    """
    winners = []
    for emb_choice in ("sigma", "sigmabar"):
        for i2 in ("identity", "i-identity"):
            for order in ("grouped", "interleaved"):
                conv = Conventions(emb_choice, i2, order)
                entries = _family_entries(W, conv)
                try:
                    sol = match_solver(entries, target)
                except MatchError:
                    continue
                winners.append((conv, sol))
    if len(winners) != 1:
        raise ConventionError(
            f"{len(winners)} convention choices reproduce the target",
            [c.to_json() for c, _ in winners])
    return winners[0]


class AnchorError(ValueError):
    """The matched family does not pass through its defining fiber."""


def prym_family(match, family, module, anchor=None):
    """C * family rebased to lattice coordinates, with pairing polarization.

    When anchor is given, the result is evaluated at the matched point
    and must equal it entry for entry; a mismatch is fatal since the
    anchor is the one exact fiber the family is built around.
    """
    C = match.block_matrix()
    entries = scalar_form_matmul(C, family.entries)
    entries = form_matmul_rat(entries, module.basis_inverse())
    pm = PeriodMatrix(3, ("z1", "z2"), entries, module.pairing)
    if anchor is not None:
        at_star = pm.evaluate(match.point())
        bad = [(i, j) for i in range(3) for j in range(6)
               if not (at_star[i][j] - anchor[i][j]).is_zero()]
        if bad:
            raise AnchorError(f"family misses its anchor fiber at {bad}")
    return pm
