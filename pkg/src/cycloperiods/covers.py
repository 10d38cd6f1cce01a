"""Cyclic covers of the line and their first homology.

A cover y^n = prod (x - b_j)^{a_j} of the projective line is described
combinatorially by the degree n and the list of branch exponents a_j,
one for each branch point label, with the point at infinity carrying
the exponent that makes the total sum vanish mod n.  Genus and the
character-wise decomposition of the holomorphic forms follow from the
exponents alone.

Character convention, fixed once for the whole package: the deck map
sends y to zeta_n * y, the form x^s dx / y^k belongs to character k,
and the deck map multiplies that form by zeta_n^(-k).

The homology side works with a model: a finite set of loop classes,
their integer intersection pairing, and the permutation by which the
deck map shifts the loops.  verify_homology_model runs the forced
algebraic checks on such a model together with a proposed symplectic
combination of the loops.
"""

from fractions import Fraction
from math import gcd

from . import intlat


class CyclicCover:
    """Degree-n cyclic cover data given by branch exponents.

    exponents: iterable of (label, a) pairs or bare integers (labels are
    then generated).  Exponents are reduced mod n; a zero exponent means
    the point is unramified and is kept only as a record.
    """

    def __init__(self, n, exponents):
        if not isinstance(n, int) or n < 2:
            raise ValueError(f"cover degree must be an integer >= 2, got {n!r}")
        pts = []
        for k, item in enumerate(exponents):
            if isinstance(item, (tuple, list)):
                label, a = item
            else:
                label, a = f"p{k + 1}", item
            if not isinstance(a, int):
                raise ValueError(f"branch exponent must be an integer, got {a!r}")
            pts.append((str(label), a % n))
        if sum(a for _, a in pts) % n != 0:
            raise ValueError("branch exponents must sum to 0 mod n "
                             "(include the point at infinity)")
        g = n
        for _, a in pts:
            g = gcd(g, a)
        if g != 1:
            raise ValueError(f"cover is disconnected: gcd of exponents with n is {g}")
        self.n = n
        self.exponents = tuple(pts)

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(obj["n"], [(str(l), int(a)) for l, a in obj["exponents"]])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed cover object: {exc}") from exc

    def to_json(self):
        return {"n": self.n, "exponents": [[l, a] for l, a in self.exponents]}

    def genus(self):
        # 2g - 2 = -2n + sum over points of (n - #preimages)
        total = sum(self.n - gcd(a, self.n) for _, a in self.exponents)
        twice = -2 * self.n + total
        if twice % 2:
            raise ValueError("branch data gives a non-integral genus")
        return twice // 2 + 1

    def eigenspace_dims(self):
        """dict k -> dim of holomorphic forms in character k, k = 1..n-1."""
        n = self.n
        out = {}
        for k in range(1, n):
            s = Fraction(0)
            for _, a in self.exponents:
                s += Fraction((k * a) % n, n)
            d = s - 1
            if d.denominator != 1:
                raise ValueError("character dimension is not integral")
            out[k] = int(d)
        return out

    def h1_ranks(self):
        """dict k -> rank of the character-k part of first cohomology."""
        n = self.n
        out = {}
        for k in range(1, n):
            ram = sum(1 for _, a in self.exponents if (k * a) % n != 0)
            out[k] = ram - 2 if ram else 0
        return out

    def table(self):
        """[(k, rank, dim)] for k = 1..n-1."""
        dims = self.eigenspace_dims()
        ranks = self.h1_ranks()
        return [(k, ranks[k], dims[k]) for k in range(1, self.n)]


class HomologyModel:
    """Loop classes with intersection pairing and deck-shift permutation."""

    def __init__(self, pairing, shift):
        n = len(pairing)
        if any(len(row) != n for row in pairing):
            raise ValueError("pairing matrix must be square")
        if sorted(shift) != list(range(n)):
            raise ValueError("shift must be a permutation of the loop indices")
        self.pairing = [list(row) for row in pairing]
        self.shift = list(shift)

    @property
    def size(self):
        return len(self.pairing)

    def shift_matrix(self):
        return intlat.permutation_matrix(self.shift)

    def to_json(self):
        return {"pairing": intlat.mat_to_json(self.pairing), "shift": self.shift}

    @classmethod
    def from_json(cls, obj):
        return cls(intlat.mat_from_json(obj["pairing"]), list(obj["shift"]))


def six_loop_shift(pairs=6):
    """The standard shift on two orbits of six loops each:
    first block 0..5 cycles, second block 6..11 cycles."""
    return [(i + 1) % pairs if i < pairs else pairs + (i - pairs + 1) % pairs
            for i in range(2 * pairs)]


def verify_homology_model(model, combos, expected_rank=8,
                          minor_index=(0, 1, 2, 3, 6, 7, 8, 9)):
    """Run the forced checks on a homology model and a symplectic combination.

    combos: list of integer vectors (in loop coordinates) whose Gram matrix
    under the pairing should be the standard symplectic form.  Returns a
    list of (check id, passed, evidence) triples, one per check.
    """
    M = model.pairing
    n = model.size
    results = []

    ok = intlat.is_alternating(M)
    results.append(("alternating", ok, "" if ok else "pairing is not alternating"))

    sig = model.shift
    bad = [(i, j) for i in range(n) for j in range(n)
           if M[sig[i]][sig[j]] != M[i][j]]
    results.append(("shift-equivariant", not bad,
                    "" if not bad else f"first mismatch at {bad[0]}"))

    rank = n - len(intlat.integer_kernel(M))
    results.append(("rank", rank == expected_rank,
                    f"rank {rank}, expected {expected_rank}"))

    minor = [[M[i][j] for j in minor_index] for i in minor_index]
    d = intlat.bareiss_det(minor)
    results.append(("principal-minor", d != 0,
                    f"det of the {len(minor_index)}x{len(minor_index)} minor is {d}"))

    g2 = len(combos)
    X = [[combos[j][i] for j in range(g2)] for i in range(n)]
    gram = intlat.matmul(intlat.transpose(X), intlat.matmul(M, X))
    expected = intlat.standard_symplectic(g2 // 2)
    ok = gram == expected
    diffs = [(i, j) for i in range(g2) for j in range(g2)
             if gram[i][j] != expected[i][j]]
    results.append(("combo-gram", ok,
                    "Gram equals the standard symplectic form" if ok
                    else f"{len(diffs)} Gram entries differ, first at {diffs[0]}"))
    return results


def model_passes(results):
    return all(ok for _, ok, _ in results)


def deck_action_matrix(model, combos):
    """Matrix of the deck shift on the span of the combos.

    With X the coefficient matrix of the combos and E = X^T M X their
    (nondegenerate) Gram form, the shift acts by R = E^{-1} X^T M P X.
    Entries must come out integral, otherwise the combos do not span a
    shift-stable primitive sublattice and a ValueError is raised.
    """
    M = model.pairing
    n = model.size
    g2 = len(combos)
    X = [[combos[j][i] for j in range(g2)] for i in range(n)]
    Xt = intlat.transpose(X)
    E = intlat.matmul(Xt, intlat.matmul(M, X))
    det, Einv = intlat.exact_det_inv(E)
    if det == 0:
        raise ValueError("combos have degenerate Gram form")
    P = model.shift_matrix()
    Rq = intlat.matmul(Einv, intlat.matmul(Xt, intlat.matmul(M, intlat.matmul(P, X))))
    R = []
    for row in Rq:
        out = []
        for x in row:
            if Fraction(x).denominator != 1:
                raise ValueError(f"deck action is not integral on the combos: {x}")
            out.append(int(x))
        R.append(out)
    return R
