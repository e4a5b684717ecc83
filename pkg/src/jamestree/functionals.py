"""Dual functionals built from segments: evaluation, classes, best molecules.

A term (coefficient, segment) stands for coefficient * f_S where
f_S(x) = sum of x over the segment's chain.  Three classes:

* molecule: pairwise disjoint segments, sum of squared coefficients <= 1
  (norming set for the JT_INF dual ball);
* signed_family: coefficients in {-1, +1} over an admissible family
  (norming set for the L1-space dual balls);
* general: no constraint; arises from differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidFunctionalError
from .spaces import Node, SparseVector, SpaceSpec
from .trees import Segment, family_disjoint, is_admissible

MOLECULE = "molecule"
SIGNED_FAMILY = "signed_family"
GENERAL = "general"


@dataclass(frozen=True)
class DualFunctional:
    terms: tuple[tuple[Fraction, Segment], ...]
    class_tag: str = GENERAL

    def __post_init__(self) -> None:
        if self.class_tag not in (MOLECULE, SIGNED_FAMILY, GENERAL):
            raise InvalidFunctionalError(f"unknown class {self.class_tag!r}")
        object.__setattr__(
            self,
            "terms",
            tuple(sorted(((Fraction(c), s) for c, s in self.terms), key=lambda t: t[1].sort_key())),
        )

    @property
    def segments(self) -> tuple[Segment, ...]:
        return tuple(s for _, s in self.terms)

    def nodes(self) -> tuple[Node, ...]:
        out: set[Node] = set()
        for _, seg in self.terms:
            out.update(seg.nodes())
        return tuple(sorted(out))

    def depth(self) -> int:
        return max((s.q for _, s in self.terms), default=0)

    def coefficient_map(self) -> dict[Node, Fraction]:
        """Collapse to per-node coefficients (functionals act coordinatewise)."""
        out: dict[Node, Fraction] = {}
        for coeff, seg in self.terms:
            for node in seg.nodes():
                out[node] = out.get(node, Fraction(0)) + coeff
        return {n: c for n, c in out.items() if c != 0}

    def __sub__(self, other: "DualFunctional") -> "DualFunctional":
        terms = self.terms + tuple((-c, s) for c, s in other.terms)
        return DualFunctional(terms, GENERAL)

    def __add__(self, other: "DualFunctional") -> "DualFunctional":
        return DualFunctional(self.terms + other.terms, GENERAL)

    def scale(self, c: Fraction) -> "DualFunctional":
        return DualFunctional(tuple((c * coeff, s) for coeff, s in self.terms), GENERAL)


def segment_functional(top: Node, bottom: Node, coeff: Fraction = Fraction(1)) -> DualFunctional:
    return DualFunctional(((Fraction(coeff), Segment(tuple(top), tuple(bottom))),), SIGNED_FAMILY)


def evaluate(g: DualFunctional, x: SparseVector) -> Fraction:
    total = Fraction(0)
    for coeff, seg in g.terms:
        s = Fraction(0)
        for node, value in x.entries:
            if seg.contains(node):
                s += value
        total += coeff * s
    return total


def validate_functional(g: DualFunctional, space: SpaceSpec) -> None:
    """Check the declared class invariants; raises InvalidFunctionalError."""
    if g.class_tag == MOLECULE:
        if not family_disjoint(g.segments):
            raise InvalidFunctionalError("molecule segments must be pairwise disjoint")
        if sum((c * c for c, _ in g.terms), Fraction(0)) > 1:
            raise InvalidFunctionalError("molecule coefficients must satisfy sum of squares <= 1")
    elif g.class_tag == SIGNED_FAMILY:
        if any(c not in (1, -1) for c, _ in g.terms):
            raise InvalidFunctionalError("signed family coefficients must be +-1")
        if not is_admissible(g.segments, space):
            raise InvalidFunctionalError("signed family segments must form an admissible family")


def is_unit_ball_certified(g: DualFunctional, space: SpaceSpec) -> bool:
    """True when the class alone certifies dual norm <= 1.

    Molecules certify it for JT_INF, signed families for the L1 spaces.
    """
    try:
        validate_functional(g, space)
    except InvalidFunctionalError:
        return False
    if g.class_tag == MOLECULE:
        return not space.aggregates_l1
    if g.class_tag == SIGNED_FAMILY:
        return space.aggregates_l1
    return False


@dataclass(frozen=True)
class MoleculeFit:
    """l2-optimal molecule for a fixed disjoint family at a fixed vector.

    The optimal coefficients are proportional to the segment sums; the
    attained value is sqrt(sum of squared segment sums), reported as the exact
    square.  `proportions` are the unnormalized (rational) segment sums.
    """

    segments: tuple[Segment, ...]
    proportions: tuple[Fraction, ...]
    value_sq: Fraction

    def normalized_exactly(self) -> tuple[Fraction, ...] | None:
        """Exact unit-sphere coefficients when value_sq is a perfect square."""
        if self.value_sq == 0:
            return tuple(Fraction(0) for _ in self.proportions)
        root = _exact_sqrt(self.value_sq)
        if root is None:
            return None
        return tuple(p / root for p in self.proportions)


def _exact_sqrt(value: Fraction) -> Fraction | None:
    from math import isqrt

    n, d = value.numerator, value.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def best_molecule(segments: tuple[Segment, ...], x: SparseVector) -> MoleculeFit:
    """Optimal molecule coefficients for disjoint segments at x.

    Cauchy-Schwarz: over sum of squares <= 1 the maximum of
    sum(coeff_i * s_i) is sqrt(sum s_i^2), attained at coeff ~ s.
    The all-zero family returns zero proportions and value 0.
    """
    if not family_disjoint(segments):
        raise InvalidFunctionalError("best_molecule needs pairwise disjoint segments")
    sums = []
    for seg in segments:
        s = Fraction(0)
        for node, value in x.entries:
            if seg.contains(node):
                s += value
        sums.append(s)
    value_sq = sum((s * s for s in sums), Fraction(0))
    return MoleculeFit(tuple(segments), tuple(sums), value_sq)
