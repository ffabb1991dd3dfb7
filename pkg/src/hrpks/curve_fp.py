"""Arithmetic in E(F_p): reduction of rational curves and points mod p,
the long-Weierstrass group law, multi-scalar multiplication, and exact
point-order computation via baby-step giant-step over the Hasse interval.

None of this is constant-time; the package is a research artifact for
desk-scale parameters, not a hardened signing stack.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import modmath
from .curve_q import CurveQ, RationalPoint
from .errors import InvariantError

PRIMALITY_ROUNDS = 64


@dataclass(frozen=True)
class ModPoint:
    """A point of E(F_p): affine (x, y) with 0 <= x, y < p, or infinity."""

    x: Optional[int] = None
    y: Optional[int] = None

    @staticmethod
    def infinity() -> "ModPoint":
        return ModPoint(None, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_infinity:
            return "ModPoint(inf)"
        return f"ModPoint({self.x}, {self.y})"


INF = ModPoint.infinity()


@dataclass(frozen=True)
class CurveFp:
    p: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    source: str = ""

    def __post_init__(self):
        if not modmath.is_probable_prime(self.p, PRIMALITY_ROUNDS):
            raise ValueError(f"p = {self.p} is not prime")
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if discriminant_fp(self) == 0:
            raise InvariantError(
                f"bad reduction: discriminant vanishes mod {self.p}")


def discriminant_fp(curve: CurveFp) -> int:
    p = curve.p
    b2 = (curve.a1 * curve.a1 + 4 * curve.a2) % p
    b4 = (2 * curve.a4 + curve.a1 * curve.a3) % p
    b6 = (curve.a3 * curve.a3 + 4 * curve.a6) % p
    b8 = (curve.a1 * curve.a1 * curve.a6 + 4 * curve.a2 * curve.a6
          - curve.a1 * curve.a3 * curve.a4 + curve.a2 * curve.a3 * curve.a3
          - curve.a4 * curve.a4) % p
    return (-b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % p


def reduce_curve(curve: CurveQ, p: int) -> CurveFp:
    """Reduce a rational curve mod p. Errors if p is not prime, divides a
    coefficient denominator, or the reduction is singular."""
    if not modmath.is_probable_prime(p, PRIMALITY_ROUNDS):
        raise ValueError(f"p = {p} is not prime")
    coeffs = []
    for frac in (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6):
        if frac.denominator % p == 0:
            raise ValueError(f"p = {p} divides a coefficient denominator")
        coeffs.append(frac.numerator * pow(frac.denominator, -1, p) % p)
    return CurveFp(p, *coeffs, source=curve.curve_id)


def reduce_point(curve: CurveFp, P: RationalPoint) -> ModPoint:
    """Reduction map E(Q) -> E(F_p).

    A coordinate denominator divisible by p means the point reduces to the
    identity (it sits in the kernel of reduction), so the map stays total.
    """
    if P.is_infinity:
        return INF
    p = curve.p
    if P.x.denominator % p == 0 or P.y.denominator % p == 0:
        return INF
    x = P.x.numerator * pow(P.x.denominator, -1, p) % p
    y = P.y.numerator * pow(P.y.denominator, -1, p) % p
    return ModPoint(x, y)


def on_curve_fp(curve: CurveFp, P: ModPoint) -> bool:
    if P.is_infinity:
        return True
    p = curve.p
    x, y = P.x, P.y
    if not (0 <= x < p and 0 <= y < p):
        return False
    lhs = (y * y + curve.a1 * x * y + curve.a3 * y) % p
    rhs = (x * x * x + curve.a2 * x * x + curve.a4 * x + curve.a6) % p
    return lhs == rhs


def neg_fp(curve: CurveFp, P: ModPoint) -> ModPoint:
    if P.is_infinity:
        return P
    p = curve.p
    return ModPoint(P.x, (-P.y - curve.a1 * P.x - curve.a3) % p)


def _require_on_curve(curve: CurveFp, P: ModPoint):
    if not on_curve_fp(curve, P):
        raise ValueError(f"point {P} is not on the curve mod {curve.p}")


def _add_unchecked(curve: CurveFp, P: ModPoint, Q: ModPoint) -> ModPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    p = curve.p
    a1, a2, a3, a4 = curve.a1, curve.a2, curve.a3, curve.a4
    x1, y1 = P.x, P.y
    x2, y2 = Q.x, Q.y
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return INF
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) \
            * pow(2 * y1 + a1 * x1 + a3, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    nu = (y1 - lam * x1) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return ModPoint(x3, y3)


def add_fp(curve: CurveFp, P: ModPoint, Q: ModPoint) -> ModPoint:
    _require_on_curve(curve, P)
    _require_on_curve(curve, Q)
    return _add_unchecked(curve, P, Q)


def scalar_mul_fp(curve: CurveFp, n: int, P: ModPoint) -> ModPoint:
    """n*P by double-and-add; 0*P = infinity, negative n via negation."""
    _require_on_curve(curve, P)
    return _scalar_unchecked(curve, n, P)


def _scalar_unchecked(curve: CurveFp, n: int, P: ModPoint) -> ModPoint:
    if n < 0:
        n, P = -n, neg_fp(curve, P)
    acc = INF
    base = P
    while n:
        if n & 1:
            acc = _add_unchecked(curve, acc, base)
        n >>= 1
        if n:
            base = _add_unchecked(curve, base, base)
    return acc


def msm(curve: CurveFp, scalars: Sequence[int], points: Sequence[ModPoint]) -> ModPoint:
    """Sum of scalars[i] * points[i], interleaved double-and-add.

    r stays small here (2..29), so a shared doubling chain over the joint
    bit length is all the optimization we need.
    """
    if len(scalars) != len(points):
        raise ValueError(f"length mismatch: {len(scalars)} scalars, "
                         f"{len(points)} points")
    pairs = []
    for n, P in zip(scalars, points):
        _require_on_curve(curve, P)
        if n < 0:
            n, P = -n, neg_fp(curve, P)
        if n and not P.is_infinity:
            pairs.append((n, P))
    if not pairs:
        return INF
    nbits = max(n.bit_length() for n, _ in pairs)
    acc = INF
    for bit in range(nbits - 1, -1, -1):
        acc = _add_unchecked(curve, acc, acc)
        for n, P in pairs:
            if (n >> bit) & 1:
                acc = _add_unchecked(curve, acc, P)
    return acc


def hasse_interval(p: int) -> Tuple[int, int]:
    """[p+1-2sqrt(p), p+1+2sqrt(p)], widened outward to integers."""
    two_sqrt = math.isqrt(4 * p)
    if two_sqrt * two_sqrt < 4 * p:
        two_sqrt += 1
    return p + 1 - two_sqrt, p + 1 + two_sqrt


def _bsgs_annihilator(curve: CurveFp, P: ModPoint) -> int:
    """Smallest-found m in the Hasse interval with m*P = infinity.

    Classic collision search: with W the interval width, baby steps cover
    j in [0, ceil(sqrt(W))) and giant steps stride by that same amount,
    so the table stays at about 2*p^(1/4) entries.
    """
    from .encoding import encode  # deferred: encoding depends on this module

    lo, hi = hasse_interval(curve.p)
    lo = max(lo, 1)  # p <= 3 pushes the raw floor to 0; orders start at 1
    width = hi - lo + 1
    m_step = math.isqrt(width)
    if m_step * m_step < width:
        m_step += 1

    baby = {}
    acc = INF
    for j in range(m_step):
        key = encode(acc)
        if key not in baby:
            baby[key] = j
        acc = _add_unchecked(curve, acc, P)

    # find k in [0, width) with k*P = -lo*P, then m = lo + k
    target = _scalar_unchecked(curve, -lo, P)
    stride = neg_fp(curve, _scalar_unchecked(curve, m_step, P))
    gamma = target
    i = 0
    while i * m_step < width:
        j = baby.get(encode(gamma))
        if j is not None:
            k = i * m_step + j
            if k < width:
                return lo + k
        gamma = _add_unchecked(curve, gamma, stride)
        i += 1
    raise ArithmeticError(
        "no annihilating multiple in the Hasse interval; "
        "this indicates a group-law bug")


def point_order(curve: CurveFp, P: ModPoint) -> int:
    """Exact order of P: find one annihilator in the Hasse interval, factor
    it, then strip primes while the quotient still kills P."""
    _require_on_curve(curve, P)
    if P.is_infinity:
        return 1
    m = _bsgs_annihilator(curve, P)
    for prime in sorted(modmath.factorize(m)):
        while m % prime == 0 and _scalar_unchecked(curve, m // prime, P).is_infinity:
            m //= prime
    return m
