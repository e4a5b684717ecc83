"""Slices of the norming sets, diameter reports, and scenario bounds.

A slice S(A, x, alpha) holds the members of the norming set A whose value at
x exceeds sup_A x - alpha; for these spaces the sup over A equals ||x||, so
membership is the exact test  g(x) > ||x|| - alpha.

The materialized members are representatives: every signed family over the
canonical enumeration for the L1 spaces; per-family optimal molecules plus a
coefficient-grid sample for JT_INF.  Diameter reports are one-sided the same
way the claims are: certified lower bounds from sampled pair distances,
upper bounds from the scenario bound or the dual triangle inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from .config import DEFAULT_CONFIG, RunConfig
from .dualnorm import dual_norm
from .errors import EnumerationCapError, PreconditionError, ScenarioConstraintError
from .functionals import MOLECULE, SIGNED_FAMILY, DualFunctional, best_molecule
from .norms import NormResult, norm
from .spaces import SparseVector, SpaceKind, SpaceSpec
from .surds import Surd
from .trees import enumerate_admissible_families


@dataclass(frozen=True)
class SliceSpec:
    """Norming-set slice data: slicing vector, width, space, representative
    parameters (molecule grid resolution, enumeration level cap)."""

    x: SparseVector
    alpha: Fraction
    space: SpaceSpec
    grid_resolution: Fraction = Fraction(1, 8)
    level_cap: int | None = None

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise PreconditionError("slice width alpha must be positive")
        if self.space.segment_variant != "interval":
            raise PreconditionError("slices are defined for the interval segment reading")


@dataclass(frozen=True)
class DiameterReport:
    lower: Fraction
    lower_witness_pair: tuple[DualFunctional, DualFunctional] | None
    upper: Fraction | Surd
    upper_provenance: str  # "scenario_bound" | "dual_triangle"
    member_count: int
    alpha: Fraction
    space: SpaceKind
    scenario: str | None = None


def _rho_for_membership(value_sq: Fraction, threshold_num: Fraction) -> Fraction | None:
    """Rational rho with rho^2 * value_sq <= 1 and rho * value_sq > threshold.

    Exists whenever sqrt(value_sq) > threshold; refines a one-sided sqrt
    approximation until the strict inequality shows.
    """
    n, d = value_sq.numerator, value_sq.denominator
    scale = 10**6
    for _ in range(8):
        rho = Fraction(isqrt(n * d * scale * scale), n * scale)
        if rho * value_sq > threshold_num:
            return rho
        scale *= 10**3
    return None


def _molecule_members(
    spec: SliceSpec, norm_res: NormResult, config: RunConfig
) -> list[DualFunctional]:
    members: list[DualFunctional] = []
    seen = set()
    grid_den = spec.grid_resolution.denominator
    if spec.grid_resolution.numerator != 1:
        raise PreconditionError("grid resolution must be 1/k")
    families = enumerate_admissible_families(spec.x.support, spec.space, config, q_cap=spec.level_cap)

    def add(terms) -> None:
        g = DualFunctional(tuple(terms), MOLECULE)
        if g.terms not in seen:
            seen.add(g.terms)
            members.append(g)

    for family in families:
        fit = best_molecule(family.segments, spec.x)
        if fit.value_sq == 0:
            continue
        # the best molecule attains sqrt(value_sq); exact membership on squares
        if _sqrt_gt_threshold(fit.value_sq, norm_res, spec.alpha):
            exact = fit.normalized_exactly()
            if exact is not None:
                add(
                    (c, seg)
                    for c, seg in zip(exact, fit.segments)
                    if c != 0
                )
            else:
                tau = _threshold_value_bound(norm_res, spec.alpha)
                rho = _rho_for_membership(fit.value_sq, tau)
                if rho is not None:
                    add(
                        (s * rho, seg)
                        for s, seg in zip(fit.proportions, fit.segments)
                        if s != 0
                    )
        # coefficient-grid sample on the unit ball
        k = len(family.segments)
        if (2 * grid_den + 1) ** k > config.family_cap:
            raise EnumerationCapError("molecule grid too large for the configured cap")
        steps = range(-grid_den, grid_den + 1)
        for combo in product(steps, repeat=k):
            coeffs = tuple(Fraction(c, grid_den) for c in combo)
            if sum((c * c for c in coeffs), Fraction(0)) > 1:
                continue
            val = sum((c * s for c, s in zip(coeffs, fit.proportions)), Fraction(0))
            if norm_res.exceeds_threshold(val, spec.alpha):
                add((c, seg) for c, seg in zip(coeffs, family.segments) if c != 0)
    return members


def _sqrt_gt_threshold(value_sq: Fraction, norm_res: NormResult, alpha: Fraction) -> bool:
    """sqrt(value_sq) > ||x|| - alpha, decided exactly on squares."""
    # ||x|| - alpha <= 0 makes every nonnegative value a member
    if norm_res.le(alpha):
        return True
    # both sides positive: square both
    # sqrt(value_sq) > sqrt(norm_sq) - alpha  <=>  value_sq > norm_sq - 2 alpha sqrt(norm_sq) + alpha^2
    # rearrange to avoid the root: sqrt(norm_sq) > (norm_sq + alpha^2 - value_sq) / (2 alpha)
    norm_sq = norm_res.value_sq
    rhs = (norm_sq + alpha * alpha - value_sq) / (2 * alpha)
    if rhs < 0:
        return True
    return norm_sq > rhs * rhs


def _threshold_value_bound(norm_res: NormResult, alpha: Fraction) -> Fraction:
    """A rational tau >= ||x|| - alpha to test molecule memberships against."""
    value_sq = norm_res.value_sq
    n, d = value_sq.numerator, value_sq.denominator
    scale = 10**9
    upper_sqrt = Fraction(isqrt(n * d * scale * scale) + 1, d * scale)
    return upper_sqrt - alpha


def slice_members(spec: SliceSpec, config: RunConfig = DEFAULT_CONFIG) -> list[DualFunctional]:
    """Representatives of the norming set lying in the slice, in deterministic
    enumeration order."""
    spec.x.validate_for(spec.space)
    norm_res = norm(spec.x, spec.space, config)
    if spec.x.is_zero:
        return []
    if not spec.space.aggregates_l1:
        return _molecule_members(spec, norm_res, config)

    members: list[DualFunctional] = []
    families = enumerate_admissible_families(spec.x.support, spec.space, config, q_cap=spec.level_cap)
    for family in families:
        sums = []
        for seg in family.segments:
            s = sum((v for n, v in spec.x.entries if seg.contains(n)), Fraction(0))
            sums.append(s)
        peak = sum(abs(s) for s in sums)
        if not norm_res.exceeds_threshold(peak, spec.alpha):
            continue  # no sign pattern of this family can reach the slice
        k = len(family.segments)
        for mask in range(1 << k):
            signs = [1 if mask >> i & 1 == 0 else -1 for i in range(k)]
            val = sum((sg * s for sg, s in zip(signs, sums)), Fraction(0))
            if norm_res.exceeds_threshold(val, spec.alpha):
                members.append(
                    DualFunctional(
                        tuple((Fraction(sg), seg) for sg, seg in zip(signs, family.segments)),
                        SIGNED_FAMILY,
                    )
                )
    return members


def scenario_upper_bound(
    scenario: str,
    alpha: Fraction | None = None,
    delta: Fraction | None = None,
    epsilon: Fraction | None = None,
) -> Fraction | Surd:
    """Closed-form diameter bounds for the three named scenarios.

    JT_SQRT2(alpha, delta[, epsilon]) -> sqrt(2) + alpha + 2 sqrt(delta);
    JHINF_53 -> 5/3;  JH_ZERO(epsilon, alpha) -> 0.
    Raises ScenarioConstraintError naming the violated inequality.
    """
    if scenario == "JHINF_53":
        return Fraction(5, 3)
    if scenario == "JT_SQRT2":
        if alpha is None or delta is None:
            raise ScenarioConstraintError("JT_SQRT2 requires alpha and delta")
        if not 0 < alpha < Fraction(1, 2):
            raise ScenarioConstraintError("0 < alpha < 1/2 violated")
        if delta <= 0:
            raise ScenarioConstraintError("0 < delta violated")
        if not (1 - alpha) ** 2 > 1 - delta:
            raise ScenarioConstraintError("(1 - alpha)^2 > 1 - delta violated")
        if epsilon is not None:
            if not 0 < epsilon < Fraction(1, 2):
                raise ScenarioConstraintError("0 < epsilon < 1/2 violated")
            if not delta < min(epsilon, 2 * epsilon * (1 - epsilon)):
                raise ScenarioConstraintError(
                    "delta < min{epsilon, 2*epsilon*(1 - epsilon)} violated"
                )
        return Surd(a=alpha, b=Fraction(1), c=Fraction(2), delta=delta)
    if scenario == "JH_ZERO":
        if alpha is None or epsilon is None:
            raise ScenarioConstraintError("JH_ZERO requires epsilon and alpha")
        if not 0 < epsilon < Fraction(1, 4):
            raise ScenarioConstraintError("0 < epsilon < 1/4 violated")
        if not 0 < alpha < min(1 - 4 * epsilon, epsilon):
            raise ScenarioConstraintError("alpha < min{1 - 4*epsilon, epsilon} violated")
        return Fraction(0)
    raise ScenarioConstraintError(f"unknown scenario {scenario!r}")


def slice_diameter(
    spec: SliceSpec,
    scenario: str | None = None,
    scenario_params: dict | None = None,
    config: RunConfig = DEFAULT_CONFIG,
    max_pairs: int = 20_000,
) -> DiameterReport:
    """Diameter report over the sampled slice representatives.

    lower: best certified pair distance (dual_norm lower bounds are attained
    by explicit unit vectors, so this genuinely bounds the slice diameter
    from below).  upper: scenario bound when given, else the dual triangle
    bound 2 (members are certified inside the dual unit ball).
    """
    members = slice_members(spec, config)
    lower = Fraction(0)
    pair = None
    n = len(members)
    if n * (n - 1) // 2 > max_pairs:
        raise EnumerationCapError(f"too many member pairs ({n} members)")
    for i in range(n):
        for j in range(i + 1, n):
            cert = dual_norm(members[i] - members[j], spec.space, config=config)
            if cert.lower > lower:
                lower = cert.lower
                pair = (members[i], members[j])
    if scenario is not None:
        upper = scenario_upper_bound(scenario, **(scenario_params or {}))
        provenance = "scenario_bound"
    else:
        upper = Fraction(2) if members else Fraction(0)
        provenance = "dual_triangle"
    return DiameterReport(
        lower=lower,
        lower_witness_pair=pair,
        upper=upper,
        upper_provenance=provenance,
        member_count=len(members),
        alpha=spec.alpha,
        space=spec.space.kind,
        scenario=scenario,
    )
