"""Exact arithmetic in the tower Q < Q(rho) < Q(zeta12) < Q(zeta12)(alpha).

zeta is a primitive 12th root of unity with minimal polynomial
Phi12(x) = x^4 - x^2 + 1, and alpha is the real fourth root of 3.  Since
alpha^2 = sqrt(3) = 2*zeta - zeta^3 already lies in Q(zeta12), the tower
is a quadratic extension of the cyclotomic field and every element is

    (c0 + c1 z + c2 z^2 + c3 z^3)  +  (a0 + a1 z + a2 z^2 + a3 z^3) * alpha

with rational coordinates.  Useful landmarks inside the tower:

    i     = zeta^3          rho    = zeta^4  (primitive cube root of 1)
    sqrt3 = 2 zeta - zeta^3 3^(-1/4) = alpha^3 / 3

The complex embedding is fixed once and for all: zeta -> exp(i*pi/6)
(upper half plane, 30 degrees) and alpha -> +3^(1/4).  `embed` returns a
certified ComplexBall for that embedding; equality testing never falls
back on numerics.
"""

from fractions import Fraction

from .balls import ComplexBall, sqrt3_ball, root4_3_ball

_Q0 = Fraction(0)
_ZERO4 = (_Q0, _Q0, _Q0, _Q0)


def _c4(values):
    vals = tuple(Fraction(v) for v in values)
    if len(vals) > 4:
        raise ValueError("cyclotomic coordinate vector too long")
    return vals + _ZERO4[len(vals):]


def _cadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _csub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cneg(a):
    return tuple(-x for x in a)


def _cmul(a, b):
    # convolution, then reduce by z^4 = z^2 - 1 (so z^5 = z^3 - z, z^6 = -1)
    c = [_Q0] * 7
    for i in range(4):
        if a[i]:
            for j in range(4):
                c[i + j] += a[i] * b[j]
    c[0] -= c[6]
    c[3] += c[5]
    c[1] -= c[5]
    c[2] += c[4]
    c[0] -= c[4]
    return tuple(c[:4])


def _cconj(a):
    # complex conjugation: zeta -> zeta^11 = zeta - zeta^3
    c0, c1, c2, c3 = a
    return (c0 + c2, c1, -c2, -c1 - c3)


def _cis0(a):
    return not any(a)


def _cinv(a):
    """Inverse in Q(zeta12) by solving the 4x4 multiplication system."""
    if _cis0(a):
        raise ZeroDivisionError("inverse of zero in Q(zeta12)")
    cols = []
    for k in range(4):
        e = [_Q0] * 4
        e[k] = Fraction(1)
        cols.append(_cmul(a, tuple(e)))
    aug = [[cols[k][i] for k in range(4)] + [Fraction(1) if i == 0 else _Q0]
           for i in range(4)]
    for col in range(4):
        piv = next(r for r in range(col, 4) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(4):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][4] for i in range(4))


_SQRT3_COORDS = _c4((0, 2, 0, -1))  # 2*zeta - zeta^3


class TowerElem:
    """Immutable element of Q(zeta12)(alpha)."""

    __slots__ = ("c", "a")

    def __init__(self, c=_ZERO4, a=_ZERO4):
        object.__setattr__(self, "c", _c4(c))
        object.__setattr__(self, "a", _c4(a))

    def __setattr__(self, name, value):
        raise AttributeError("TowerElem is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def rational(q):
        return TowerElem((Fraction(q), _Q0, _Q0, _Q0))

    @staticmethod
    def coerce(x):
        if isinstance(x, TowerElem):
            return x
        if isinstance(x, (int, Fraction)):
            return TowerElem.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into the tower")

    @staticmethod
    def from_json(obj):
        try:
            c = [Fraction(n, d) for n, d in obj["c"]]
            a = [Fraction(n, d) for n, d in obj["a"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed tower element: {exc}") from exc
        if len(c) != 4 or len(a) != 4:
            raise ValueError("tower element needs 4+4 coordinates")
        return TowerElem(c, a)

    def to_json(self):
        return {"c": [[x.numerator, x.denominator] for x in self.c],
                "a": [[x.numerator, x.denominator] for x in self.a]}

    # -- ring structure ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (TowerElem, int, Fraction)):
            return NotImplemented
        other = TowerElem.coerce(other)
        return TowerElem(_cadd(self.c, other.c), _cadd(self.a, other.a))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (TowerElem, int, Fraction)):
            return NotImplemented
        other = TowerElem.coerce(other)
        return TowerElem(_csub(self.c, other.c), _csub(self.a, other.a))

    def __rsub__(self, other):
        return TowerElem.coerce(other) - self

    def __neg__(self):
        return TowerElem(_cneg(self.c), _cneg(self.a))

    def __mul__(self, other):
        if not isinstance(other, (TowerElem, int, Fraction)):
            return NotImplemented
        other = TowerElem.coerce(other)
        # (b1 + a1 alpha)(b2 + a2 alpha) with alpha^2 = sqrt3 in Q(zeta12)
        return TowerElem(
            _cadd(_cmul(self.c, other.c),
                  _cmul(_SQRT3_COORDS, _cmul(self.a, other.a))),
            _cadd(_cmul(self.c, other.a), _cmul(self.a, other.c)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero tower element")
        if _cis0(self.a):
            return TowerElem(_cinv(self.c))
        # 1/(b + a alpha) = (b - a alpha)/(b^2 - a^2 sqrt3)
        den = _csub(_cmul(self.c, self.c),
                    _cmul(_SQRT3_COORDS, _cmul(self.a, self.a)))
        di = _cinv(den)
        return TowerElem(_cmul(self.c, di), _cneg(_cmul(self.a, di)))

    def __truediv__(self, other):
        if not isinstance(other, (TowerElem, int, Fraction)):
            return NotImplemented
        return self * TowerElem.coerce(other).inverse()

    def __rtruediv__(self, other):
        return TowerElem.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure maps ----------------------------------------------

    def conjugate(self):
        """Complex conjugation: zeta -> zeta^-1, alpha -> alpha."""
        return TowerElem(_cconj(self.c), _cconj(self.a))

    def is_zero(self):
        return _cis0(self.c) and _cis0(self.a)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return _cis0(self.a) and not any(self.c[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0]

    def in_K(self):
        """Membership in K = Q(rho), rho = zeta^4 = zeta^2 - 1."""
        return _cis0(self.a) and self.c[1] == 0 and self.c[3] == 0

    def as_K_pair(self):
        """Write an element of K as (p, q) with value p + q*rho."""
        if not self.in_K():
            raise ValueError("element is not in Q(rho)")
        # c0 + c2 zeta^2 = (c0 + c2) + c2 rho
        return (self.c[0] + self.c[2], self.c[2])

    def is_real(self):
        return self == self.conjugate()

    def as_sqrt3_pair(self):
        """Write an element of Q(sqrt3) as (s, t) with value s + t*sqrt3."""
        c0, c1, c2, c3 = self.c
        if not _cis0(self.a) or c2 != 0 or c1 != -2 * c3:
            raise ValueError("element is not in Q(sqrt3)")
        return (c0, -c3)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TowerElem.rational(other)
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.c == other.c and self.a == other.a

    def __hash__(self):
        return hash((self.c, self.a))

    def __repr__(self):
        def side(coords, suffix):
            parts = []
            for k, v in enumerate(coords):
                if v:
                    unit = ("" if k == 0 else "z" if k == 1 else f"z^{k}")
                    term = str(v) if k == 0 else (f"{v}*{unit}" if v != 1 else unit)
                    parts.append(term + suffix)
            return parts
        parts = side(self.c, "") + side(self.a, "*alpha" if any(self.a) else "")
        return " + ".join(parts) if parts else "0"


def zeta_power(k):
    """zeta^k for any integer k."""
    k %= 12
    coords = [_Q0] * 4
    if k < 4:
        coords[k] = Fraction(1)
        return TowerElem(coords)
    return TowerElem((_Q0, _Q0, _Q0, Fraction(1))) * zeta_power(k - 3)


ZERO = TowerElem()
ONE = TowerElem.rational(1)
ZETA = TowerElem((0, 1))
IUNIT = TowerElem((0, 0, 0, 1))          # zeta^3
RHO = TowerElem((-1, 0, 1))              # zeta^4 = zeta^2 - 1
SQRT3 = TowerElem(_SQRT3_COORDS)
ROOT4_3 = TowerElem(_ZERO4, (1,))        # alpha
INV_ROOT4_3 = TowerElem(_ZERO4, (Fraction(1, 3),)) * SQRT3   # alpha^3/3
HALF = TowerElem.rational(Fraction(1, 2))


def cyclo(c0=0, c1=0, c2=0, c3=0):
    """Shorthand: c0 + c1 zeta + c2 zeta^2 + c3 zeta^3."""
    return TowerElem((c0, c1, c2, c3))


def trace_K(x):
    """Trace from K = Q(rho) down to Q; errors if x is not in K."""
    x = TowerElem.coerce(x)
    if not x.in_K():
        raise ValueError("trace_K requires an element of Q(rho)")
    p, q = x.as_K_pair()
    # rho + conj(rho) = -1
    return 2 * p - q


def _sqrt3_pair_sign(s, t):
    """Exact sign of s + t*sqrt(3) for rational s, t."""
    if t == 0:
        return (s > 0) - (s < 0)
    if s == 0:
        return (t > 0) - (t < 0)
    if (s > 0) == (t > 0):
        return 1 if s > 0 else -1
    # mixed signs: |s| vs |t| sqrt3 decided by s^2 vs 3 t^2, never equal
    big = s * s > 3 * t * t
    return (1 if big else -1) if s > 0 else (-1 if big else 1)


def real_sign(x):
    """Exact sign in {-1, 0, 1} of a real tower element.

    Real elements are exactly u + v*alpha with u, v in Q(sqrt3).  The
    sign falls out of rational comparisons: alpha > 0, and when u and v
    disagree in sign the winner is decided by u^2 vs v^2 sqrt3, again a
    comparison inside Q(sqrt3).
    """
    x = TowerElem.coerce(x)
    if not x.is_real():
        raise ValueError("real_sign requires a real element")
    u = TowerElem(x.c)
    v = TowerElem(x.a)
    su = _sqrt3_pair_sign(*u.as_sqrt3_pair())
    sv = _sqrt3_pair_sign(*v.as_sqrt3_pair())
    if sv == 0 or su == sv:
        return su
    if su == 0:
        return sv
    d = u * u - v * v * SQRT3
    sd = _sqrt3_pair_sign(*d.as_sqrt3_pair())
    if sd == 0:
        # u^2 = v^2 sqrt3 would put alpha inside Q(sqrt3)
        raise ArithmeticError("degenerate comparison in real_sign")
    return su if sd > 0 else sv


# -- certified embedding ----------------------------------------------

_BASIS_CACHE = {}


def _basis_balls(prec):
    """Balls for zeta^k and alpha*zeta^k, k = 0..3, at the working precision."""
    cached = _BASIS_CACHE.get(prec)
    if cached is not None:
        return cached
    s3 = sqrt3_ball(prec)
    alpha = root4_3_ball(prec)
    half = Fraction(1, 2)
    zpow = [
        ComplexBall.exact(1),
        ComplexBall(s3.re * half, half, s3.rad * half),      # zeta
        ComplexBall(half, s3.re * half, s3.rad * half),      # zeta^2
        ComplexBall.exact(0, 1),                             # zeta^3 = i
    ]
    basis = zpow + [alpha * z for z in zpow]
    _BASIS_CACHE[prec] = basis
    return basis


def embed(x, prec=128):
    """Certified ComplexBall for x under zeta -> e^(i pi/6), alpha -> 3^(1/4)."""
    if prec < 16:
        raise ValueError("embedding precision must be at least 16 bits")
    x = TowerElem.coerce(x)
    basis = _basis_balls(prec)
    acc = ComplexBall.exact(0)
    for k in range(4):
        if x.c[k]:
            acc = acc + basis[k].scale(x.c[k])
        if x.a[k]:
            acc = acc + basis[4 + k].scale(x.a[k])
    return acc
