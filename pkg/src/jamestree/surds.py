"""Exact values of the form a + b*sqrt(2) + c*sqrt(delta).

Comparisons go through rational interval enclosures with outward rounding;
the default width is 10^-12 and is halved under refinement until the
comparison resolves or symbolic equality is established.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import AmbiguousComparisonError

DEFAULT_WIDTH = Fraction(1, 10**12)


def sqrt_bracket(value: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Outward rational enclosure of sqrt(value) no wider than `width`."""
    if value < 0:
        raise ValueError("negative radicand")
    if value == 0:
        return Fraction(0), Fraction(0)
    n, d = value.numerator, value.denominator
    scale = 1
    while Fraction(1, d * scale) > width:
        scale *= 2
    base = isqrt(n * d * scale * scale)
    lo = Fraction(base, d * scale)
    if lo * lo == value:
        return lo, lo
    return lo, Fraction(base + 1, d * scale)


def is_perfect_square(value: Fraction) -> bool:
    n, d = value.numerator, value.denominator
    return n >= 0 and isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def exact_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    n, d = value.numerator, value.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Surd:
    """a + b*sqrt(2) + c*sqrt(delta) with rational a, b, c and delta >= 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    delta: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")

    def bracket(self, width: Fraction = DEFAULT_WIDTH) -> tuple[Fraction, Fraction]:
        lo2, hi2 = sqrt_bracket(Fraction(2), width)
        lod, hid = sqrt_bracket(self.delta, width)
        lo = self.a
        hi = self.a
        if self.b >= 0:
            lo += self.b * lo2
            hi += self.b * hi2
        else:
            lo += self.b * hi2
            hi += self.b * lo2
        if self.c >= 0:
            lo += self.c * lod
            hi += self.c * hid
        else:
            lo += self.c * hid
            hi += self.c * lod
        return lo, hi

    @property
    def is_rational(self) -> bool:
        return self.b == 0 and (self.c == 0 or is_perfect_square(self.delta))

    def rational_value(self) -> Fraction | None:
        if self.b != 0:
            return None
        if self.c == 0:
            return self.a
        root = exact_sqrt(self.delta)
        if root is None:
            return None
        return self.a + self.c * root

    @property
    def float_value(self) -> float:
        lo, hi = self.bracket()
        return float((lo + hi) / 2)


def as_surd(value) -> Surd:
    if isinstance(value, Surd):
        return value
    return Surd(Fraction(value))


def surd_le(lhs, rhs, width: Fraction = DEFAULT_WIDTH, max_refinements: int = 8) -> bool:
    """Certified lhs <= rhs.  Refines the enclosure on overlap; falls back to
    symbolic equality; raises AmbiguousComparisonError if still undecided."""
    left, right = as_surd(lhs), as_surd(rhs)
    if (left.a, left.b, left.c, left.delta) == (right.a, right.b, right.c, right.delta):
        return True
    lr, rr = left.rational_value(), right.rational_value()
    if lr is not None and rr is not None:
        return lr <= rr
    w = width
    for _ in range(max_refinements):
        llo, lhi = left.bracket(w)
        rlo, rhi = right.bracket(w)
        if lhi <= rlo:
            return True
        if llo > rhi:
            return False
        w = w / 2**10
    raise AmbiguousComparisonError(
        f"could not order {left} and {right} at width {width}"
    )


def surd_lt(lhs, rhs, width: Fraction = DEFAULT_WIDTH) -> bool:
    return surd_le(lhs, rhs, width) and not surd_le(rhs, lhs, width)
