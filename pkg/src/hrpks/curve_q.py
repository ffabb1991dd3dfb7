"""Exact rational-point arithmetic on elliptic curves in long Weierstrass form.

Curves are y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with rational
coefficients, kept in long form so curves with nonzero a1/a2/a3 share the
same code path as short-form ones. All coordinates are `fractions.Fraction`,
which keeps every value in lowest terms with a positive denominator.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import InvariantError

# Coordinate sizes of n*P grow quadratically in n; this cap protects against
# accidental memory blow-up (override via the max_scalar argument).
DEFAULT_SCALAR_CAP = 1 << 20


@dataclass(frozen=True)
class RationalPoint:
    """A point of E(Q): affine (x, y) in lowest terms, or the point at infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @staticmethod
    def infinity() -> "RationalPoint":
        return RationalPoint(None, None)

    @staticmethod
    def affine(x, y) -> "RationalPoint":
        return RationalPoint(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_infinity:
            return "RationalPoint(inf)"
        return f"RationalPoint({self.x}, {self.y})"


def discriminant_coeffs(a1, a2, a3, a4, a6) -> Fraction:
    """Discriminant of y^2+a1xy+a3y = x^3+a2x^2+a4x+a6 (b2/b4/b6/b8 form)."""
    a1, a2, a3, a4, a6 = (Fraction(v) for v in (a1, a2, a3, a4, a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class CurveQ:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    declared_rank: int = 0
    generators: Tuple[RationalPoint, ...] = ()
    torsion_note: str = ""
    curve_id: str = ""

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "generators", tuple(self.generators))
        if discriminant_q(self) == 0:
            raise InvariantError("singular curve (zero discriminant)")
        for g in self.generators:
            if not on_curve_q(self, g):
                raise InvariantError(f"listed generator {g} is not on the curve")

    def equation_str(self) -> str:
        return (f"y^2 + {self.a1}xy + {self.a3}y = "
                f"x^3 + {self.a2}x^2 + {self.a4}x + {self.a6}")


def discriminant_q(curve: CurveQ) -> Fraction:
    return discriminant_coeffs(curve.a1, curve.a2, curve.a3, curve.a4, curve.a6)


def on_curve_q(curve: CurveQ, P: RationalPoint) -> bool:
    """Exact curve-equation check (infinity counts as on-curve)."""
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    lhs = y * y + curve.a1 * x * y + curve.a3 * y
    rhs = x ** 3 + curve.a2 * x * x + curve.a4 * x + curve.a6
    return lhs == rhs


def neg_q(curve: CurveQ, P: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return P
    return RationalPoint(P.x, -P.y - curve.a1 * P.x - curve.a3)


def _require_on_curve(curve: CurveQ, P: RationalPoint):
    if not on_curve_q(curve, P):
        raise ValueError(f"point {P} is not on the curve")


def _add_unchecked(curve: CurveQ, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    x1, y1 = P.x, P.y
    x2, y2 = Q.x, Q.y
    if x1 == x2 and y1 + y2 + a1 * x2 + a3 == 0:
        # Q = -P (covers the 2-torsion doubling case as well)
        return RationalPoint.infinity()
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return RationalPoint(x3, y3)


def add_q(curve: CurveQ, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Chord-tangent group law; Infinity is the identity."""
    _require_on_curve(curve, P)
    _require_on_curve(curve, Q)
    return _add_unchecked(curve, P, Q)


def scalar_mul_q(curve: CurveQ, n: int, P: RationalPoint,
                 max_scalar: Optional[int] = DEFAULT_SCALAR_CAP) -> RationalPoint:
    """n*P by double-and-add; negative n multiplies the negation."""
    _require_on_curve(curve, P)
    if max_scalar is not None and abs(n) > max_scalar:
        raise ValueError(
            f"|n| = {abs(n)} exceeds the scalar cap {max_scalar}: coordinate "
            "height of n*P grows quadratically in n over Q, so large multiples "
            "exhaust memory; raise max_scalar explicitly if you mean it")
    if n < 0:
        return scalar_mul_q(curve, -n, neg_q(curve, P), max_scalar=max_scalar)
    acc = RationalPoint.infinity()
    base = P
    while n:
        if n & 1:
            acc = _add_unchecked(curve, acc, base)
        n >>= 1
        if n:
            base = _add_unchecked(curve, base, base)
    return acc


def _pt(x, y) -> RationalPoint:
    return RationalPoint.affine(x, y)


_RANK28_B = -20067762415575526585033208209338542750930230312178956502
_RANK28_C = 34481611795030556467032985690390720374855944359319180361266008296291939448732243429
_RANK14_A4 = 402599774387690701016910427272483

_CATALOG = {}


def _register(curve_id, **kw):
    _CATALOG[curve_id] = CurveQ(curve_id=curve_id, **kw)


_register("rank0_3x", a1=0, a2=0, a3=0, a4=3, a6=0, declared_rank=0,
          torsion_note="finite rational point group")
_register("rank1_877x", a1=0, a2=0, a3=0, a4=877, a6=0, declared_rank=1)
_register("rank2_73x", a1=0, a2=0, a3=0, a4=73, a6=0, declared_rank=2)
_register("toy17", a1=0, a2=0, a3=0, a4=0, a6=17, declared_rank=2,
          generators=(_pt(-2, 3), _pt(2, 5)),
          torsion_note="no torsion over Q")
_register("rank14", a1=0, a2=0, a3=0, a4=_RANK14_A4, a6=0, declared_rank=14)
_register("rank28", a1=1, a2=-1, a3=1, a4=_RANK28_B, a6=_RANK28_C,
          declared_rank=28)


def catalog(curve_id: str) -> CurveQ:
    """Built-in curves by id; declared ranks are recorded as published,
    without independent verification."""
    try:
        return _CATALOG[curve_id]
    except KeyError:
        raise ValueError(f"unknown curve id {curve_id!r}; "
                         f"known: {', '.join(sorted(_CATALOG))}") from None


def catalog_ids():
    return sorted(_CATALOG)
