from fractions import Fraction

import pytest

from jamestree.errors import AmbiguousComparisonError
from jamestree.surds import Surd, sqrt_bracket, surd_le, surd_lt


def test_sqrt_bracket_tight_and_outward():
    lo, hi = sqrt_bracket(Fraction(2), Fraction(1, 10**12))
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo <= Fraction(1, 10**12)
    lo, hi = sqrt_bracket(Fraction(9, 4), Fraction(1, 10**6))
    assert lo == hi == Fraction(3, 2)


def test_surd_comparisons():
    bound = Surd(a=Fraction(1, 20), b=Fraction(1), c=Fraction(2), delta=Fraction(1, 25))
    # sqrt(2) + 1/20 + 2/5 = 1.864...
    assert surd_le(Fraction(9, 5), bound)
    assert not surd_le(Fraction(2), bound)
    assert surd_lt(bound, Fraction(2))
    assert surd_le(bound, bound)


def test_rational_surds_compare_exactly():
    s = Surd(a=Fraction(1), c=Fraction(2), delta=Fraction(1, 4))  # 1 + 2*(1/2) = 2
    assert surd_le(s, Fraction(2)) and surd_le(Fraction(2), s)


def test_equal_irrationals_raise():
    with pytest.raises(AmbiguousComparisonError):
        surd_le(Surd(Fraction(0), b=Fraction(1)), Surd(Fraction(0), c=Fraction(1), delta=Fraction(2)))


def test_float_rendering():
    bound = Surd(a=Fraction(1, 20), b=Fraction(1), c=Fraction(2), delta=Fraction(1, 25))
    assert abs(bound.float_value - (2**0.5 + 0.05 + 0.4)) < 1e-9
