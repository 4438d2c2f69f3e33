"""Certified real arithmetic on guaranteed enclosures [lo, hi].

Thin wrapper over mpmath's interval context: every operation returns an
interval containing the exact result under outward rounding, so strict
inequality verdicts derived from enclosures are rigorous.  Comparisons are
three-valued: True / False / None (indeterminate, intervals overlap).
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import iv

from .errors import DomainError

DEFAULT_PRECISION = 128


@contextmanager
def working_precision(bits: int):
    """Temporarily set the interval working precision."""
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def set_precision(bits: int) -> None:
    iv.prec = bits


class CertifiedReal:
    """A real number known only through a rigorous enclosure."""

    __slots__ = ("ival",)

    def __init__(self, value):
        if isinstance(value, CertifiedReal):
            self.ival = value.ival
        elif isinstance(value, iv.mpf):
            self.ival = value
        elif isinstance(value, bool):
            raise DomainError("boolean is not a real value")
        elif isinstance(value, int):
            self.ival = iv.mpf(value)
        elif isinstance(value, Rational):
            self.ival = iv.mpf(int(value.numerator)) / iv.mpf(int(value.denominator))
        elif isinstance(value, float):
            # floats are exact binary rationals; no hidden decimal intent
            self.ival = iv.mpf(value)
        else:
            raise DomainError(f"cannot enclose {type(value).__name__}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_endpoints(cls, lo, hi) -> "CertifiedReal":
        return cls(iv.mpf([lo, hi]))

    @staticmethod
    def pi() -> "CertifiedReal":
        return CertifiedReal(+iv.pi)

    @staticmethod
    def euler_e() -> "CertifiedReal":
        return CertifiedReal(+iv.e)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        return other if isinstance(other, CertifiedReal) else CertifiedReal(other)

    def __add__(self, other):
        return CertifiedReal(self.ival + self._coerce(other).ival)

    __radd__ = __add__

    def __sub__(self, other):
        return CertifiedReal(self.ival - self._coerce(other).ival)

    def __rsub__(self, other):
        return CertifiedReal(self._coerce(other).ival - self.ival)

    def __mul__(self, other):
        return CertifiedReal(self.ival * self._coerce(other).ival)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return CertifiedReal(self.ival / self._coerce(other).ival)

    def __rtruediv__(self, other):
        return CertifiedReal(self._coerce(other).ival / self.ival)

    def __neg__(self):
        return CertifiedReal(-self.ival)

    def __pow__(self, expo):
        if isinstance(expo, int):
            return CertifiedReal(self.ival**expo)
        expo = self._coerce(expo)
        return CertifiedReal(self.ival**expo.ival)

    def sqrt(self) -> "CertifiedReal":
        return CertifiedReal(iv.sqrt(self.ival))

    def log(self) -> "CertifiedReal":
        return CertifiedReal(iv.log(self.ival))

    def exp(self) -> "CertifiedReal":
        return CertifiedReal(iv.exp(self.ival))

    def __abs__(self):
        return CertifiedReal(abs(self.ival))

    # -- comparisons: True / False / None ----------------------------------

    def lt(self, other) -> bool | None:
        return self.ival < self._coerce(other).ival

    def le(self, other) -> bool | None:
        return self.ival <= self._coerce(other).ival

    def gt(self, other) -> bool | None:
        return self.ival > self._coerce(other).ival

    def ge(self, other) -> bool | None:
        return self.ival >= self._coerce(other).ival

    # -- inspection ---------------------------------------------------------

    @property
    def lo(self) -> float:
        """Lower endpoint as a double, rounded toward -inf (stays a bound)."""
        exact = self.lo_mpf()
        f = float(exact)
        return f if mpmath.mpf(f) <= exact else math.nextafter(f, -math.inf)

    @property
    def hi(self) -> float:
        """Upper endpoint as a double, rounded toward +inf."""
        exact = self.hi_mpf()
        f = float(exact)
        return f if mpmath.mpf(f) >= exact else math.nextafter(f, math.inf)

    def lo_mpf(self):
        return mpmath.mpf(self.ival.a._mpi_[0])

    def hi_mpf(self):
        return mpmath.mpf(self.ival.b._mpi_[1])

    def lo_str(self, digits: int = 24) -> str:
        return mpmath.nstr(self.lo_mpf(), digits)

    def hi_str(self, digits: int = 24) -> str:
        return mpmath.nstr(self.hi_mpf(), digits)

    @property
    def width(self) -> float:
        return float(self.ival.delta)

    def contains(self, value) -> bool:
        other = self._coerce(value)
        return bool(self.ival.a <= other.ival.a and other.ival.b <= self.ival.b)

    def to_json(self, digits: int = 24) -> dict:
        return {"lo": self.lo_str(digits), "hi": self.hi_str(digits)}

    def __repr__(self):
        return f"CertifiedReal[{self.lo_str(12)}, {self.hi_str(12)}]"

    def __float__(self):
        return float(self.ival.mid)


def enclose(value) -> CertifiedReal:
    return value if isinstance(value, CertifiedReal) else CertifiedReal(value)


def pow_frac(base, expo: Fraction) -> CertifiedReal:
    """base**expo for rational expo, via the interval power."""
    b = enclose(base)
    if expo.denominator == 1:
        return b ** int(expo)
    return b ** CertifiedReal(expo)


def emin(*values: CertifiedReal) -> CertifiedReal:
    """Enclosure of min of the exact values."""
    lo = min(v.lo_mpf() for v in values)
    hi = min(v.hi_mpf() for v in values)
    return CertifiedReal.from_endpoints(lo, hi)


def emax(*values: CertifiedReal) -> CertifiedReal:
    lo = max(v.lo_mpf() for v in values)
    hi = max(v.hi_mpf() for v in values)
    return CertifiedReal.from_endpoints(lo, hi)


# -- shared envelope / character-sum coefficient enclosures -----------------


def envelope_a(x) -> CertifiedReal:
    """Lower interval-count envelope factor 1 - 2 pi^2 / (9 X)."""
    x = enclose(x)
    return CertifiedReal(1) - 2 * CertifiedReal.pi() ** 2 / (9 * x)


def envelope_b(x, h) -> CertifiedReal:
    """Upper envelope factor 1 + 2 pi^2/(9X) + 1/h + (pi^2/3h) log(X)/X."""
    x = enclose(x)
    h = enclose(h)
    pi2 = CertifiedReal.pi() ** 2
    return CertifiedReal(1) + 2 * pi2 / (9 * x) + 1 / h + (pi2 / (3 * h)) * x.log() / x


def envelope_b_sup(x_min, h_min) -> CertifiedReal:
    """Upper bound of envelope_b over X >= x_min, h >= h_min.

    All terms decrease in X and h except log(X)/X, which peaks at X = e; the
    sup of that ratio on [x_min, inf) is max(log(x_min)/x_min, 1/e) when
    x_min < e else log(x_min)/x_min.
    """
    x = enclose(x_min)
    h = enclose(h_min)
    pi2 = CertifiedReal.pi() ** 2
    ratio = x.log() / x
    if x.lo < math.e:
        ratio = emax(ratio, 1 / CertifiedReal.euler_e())
    return CertifiedReal(1) + 2 * pi2 / (9 * x) + 1 / h + (pi2 / (3 * h)) * ratio


def w_factor_enclosure(p, h, r: int) -> CertifiedReal:
    """Enclosure of the moment-sum coefficient W(p,h,r) with
    S <= W sqrt(p) h^(2r): min of the general branch
    sqrt(2) (2r/(e h))^r sqrt(p) + (2r-1) and, at r=2, 3(1 + sqrt(p)/h^2)."""
    p = enclose(p)
    h = enclose(h)
    sq = p.sqrt()
    general = (
        CertifiedReal(2).sqrt() * (2 * r / (CertifiedReal.euler_e() * h)) ** r * sq
        + (2 * r - 1)
    )
    if r == 2:
        return emin(general, 3 * (1 + sq / h**2))
    return general
