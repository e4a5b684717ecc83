"""Certified dual-norm computation by cutting planes.

Maximizes g(x) over the unit ball of the truncated coordinate space
{x : supp(x) within levels <= level_cap}.  The LP relaxation starts from the
box |x_t| <= 1 (valid: every singleton is a norm-one functional); each round
the exact primal norm engine plays separation oracle: if the LP optimizer
leaves the ball, its witness family yields a valid cut

    sum_i w_i f_{S_i}(x) <= 1

with w_i the segment-sum signs (L1 spaces; a signed admissible family) or a
rational rounding of segment-sum / norm (JT_INF; a molecule), and the loop
repeats.  Level truncation is exact for cap >= depth(g) because level
projections have norm one.

Variable sets are finite: all dyadic nodes up to the cap for JH; for the
infinitely branching spaces, the ancestor closure of g's segment nodes
suffices (restricting any unit vector to that closure preserves g and stays
in the ball: families evaluated on the restriction reroute their tails
through fresh children without changing sums).

For the L1 spaces the cut universe is finite and every round strictly cuts
the current LP vertex, so the loop terminates with lower == upper (exact).
For JT_INF it stops at upper - lower <= tol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .config import DEFAULT_CONFIG, RunConfig
from .errors import ConvergenceError, InvalidFunctionalError, PreconditionError
from .functionals import DualFunctional, evaluate
from .lp import simplex_max
from .norms import NormResult, norm
from .spaces import Node, ROOT, SparseVector, SpaceKind, SpaceSpec
from .trees import AdmissibleFamily, Closure, is_admissible


@dataclass(frozen=True)
class DualNormCertificate:
    """Two-sided certificate: lower from an explicit unit-ball vector, upper
    from the final LP relaxation; exact when the gap is zero."""

    lower: Fraction
    upper: Fraction
    witness_vector: SparseVector
    cuts: tuple[AdmissibleFamily, ...]
    tol: Fraction
    iterations: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower


def _variables(g: DualFunctional, space: SpaceSpec, cap: int) -> tuple[Node, ...]:
    if space.dyadic:
        out: list[Node] = []

        def walk(node: Node) -> None:
            out.append(node)
            if len(node) < cap:
                walk(node + (0,))
                walk(node + (1,))

        walk(ROOT)
        return tuple(sorted(out))
    closure = Closure(g.nodes())
    nodes = [n for n in closure.sorted_nodes if len(n) <= cap]
    if space.kind is SpaceKind.M_HYP:
        nodes = [n for n in nodes if n != ROOT]
    return tuple(nodes)


def _rho_below_inv_sqrt(value_sq: Fraction, scale: int = 10**6) -> Fraction:
    """Rational rho with rho^2 * value_sq <= 1; for value_sq > 1 also
    rho * value_sq > 1 (so molecule cuts actually cut the iterate)."""
    n, d = value_sq.numerator, value_sq.denominator
    return Fraction(isqrt(n * d * scale * scale), n * scale)


def _molecule_cut_weights(sums: list[Fraction], value_sq: Fraction) -> list[Fraction]:
    """Valid molecule weights (sum of squares <= 1) that cut the iterate.

    Float-guided integer weights m_i / M keep LP coefficients small, so
    vertex bit-size does not compound across rounds; the cut inequality
    itself is validated exactly before use.
    """
    target = float(value_sq) ** 0.5
    scale = 10**6
    for _ in range(4):
        ints = [round(scale * float(sig) / target) for sig in sums]
        mass = sum(v * v for v in ints)
        if mass:
            denom = isqrt(mass)
            if denom * denom < mass:
                denom += 1
            weights = [Fraction(v, denom) for v in ints]
            if sum((w * sig for w, sig in zip(weights, sums)), Fraction(0)) > 1:
                return weights
        scale *= 100
    rho = _rho_below_inv_sqrt(value_sq, scale=10**12)  # exact fallback
    return [sig * rho for sig in sums]


def _cut_from_witness(
    res: NormResult, x_hat: SparseVector, space: SpaceSpec
) -> tuple[tuple[tuple[Fraction, Node, Node], ...], AdmissibleFamily]:
    """Weights and segments of one valid unit-ball constraint violated by x_hat."""
    weighted = []
    kept = []
    if space.aggregates_l1:
        for seg in res.witness.segments:
            s = sum((v for n, v in x_hat.entries if seg.contains(n)), Fraction(0))
            if s > 0:
                weighted.append((Fraction(1), seg.top, seg.bottom))
                kept.append(seg)
            elif s < 0:
                weighted.append((Fraction(-1), seg.top, seg.bottom))
                kept.append(seg)
        if not is_admissible(kept, space):
            raise InvalidFunctionalError("internal error: unsound L1 cut")
    else:
        sums = []
        for seg in res.witness.segments:
            s = sum((v for n, v in x_hat.entries if seg.contains(n)), Fraction(0))
            if s != 0:
                sums.append(s)
                kept.append(seg)
        cut_weights = _molecule_cut_weights(sums, res.value_sq)
        total_sq = sum((w * w for w in cut_weights), Fraction(0))
        if total_sq > 1:
            raise InvalidFunctionalError("internal error: unsound molecule cut")
        weighted = [(w, seg.top, seg.bottom) for w, seg in zip(cut_weights, kept)]
    return tuple(weighted), AdmissibleFamily(tuple(kept), space)


def dual_norm(
    g: DualFunctional,
    space: SpaceSpec,
    level_cap: int | None = None,
    tol: Fraction | None = None,
    config: RunConfig = DEFAULT_CONFIG,
) -> DualNormCertificate:
    """Certified dual norm of g over the level-truncated unit ball.

    The default cap is the deepest node of g, which already makes the
    truncated value equal the full dual norm.  Raises PreconditionError when
    g uses nodes deeper than an explicit cap, ConvergenceError past the
    iteration cap.
    """
    tol = config.tol if tol is None else tol
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    if space.segment_variant != "interval":
        raise PreconditionError("dual norms are defined for the interval segment reading")
    depth = g.depth()
    cap = depth if level_cap is None else level_cap
    if depth > cap:
        raise PreconditionError(f"functional uses nodes at level {depth} beyond cap {cap}")

    variables = _variables(g, space, cap)
    index = {v: i for i, v in enumerate(variables)}
    coeffs = g.coefficient_map()
    if space.kind is SpaceKind.M_HYP:
        coeffs.pop(ROOT, None)  # the hyperplane never sees the root coordinate
    objective = [coeffs.get(v, Fraction(0)) for v in variables]

    rows: list[tuple[list[Fraction], Fraction]] = []
    row_keys: set[tuple[Fraction, ...]] = set()
    for i in range(len(variables)):
        for sign in (1, -1):
            row = [Fraction(0)] * len(variables)
            row[i] = Fraction(sign)
            rows.append((row, Fraction(1)))
            row_keys.add(tuple(row))

    lower = Fraction(0)
    witness = SparseVector(())
    for i, v in enumerate(variables):  # seed with coordinate vectors
        c = objective[i]
        if abs(c) > lower:
            lower = abs(c)
            witness = SparseVector(((v, Fraction(1 if c > 0 else -1)),))
    seed = SparseVector(tuple((v, c) for v, c in zip(variables, objective) if c != 0))
    if not seed.is_zero:  # coefficient-proportional direction, rescaled exactly
        seed_norm = norm(seed, SpaceSpec(space.kind), config)
        if space.aggregates_l1:
            scaled_seed = seed.scale(Fraction(1) / seed_norm.value)
        else:
            scaled_seed = seed.scale(_rho_below_inv_sqrt(seed_norm.value_sq, scale=10**9))
        cand = evaluate(g, scaled_seed)
        if cand > lower:
            lower = cand
            witness = scaled_seed

    cuts: list[AdmissibleFamily] = []
    rounds = 0
    while True:
        rounds += 1
        if rounds > config.iteration_cap:
            raise ConvergenceError(f"dual_norm exceeded {config.iteration_cap} cutting rounds")
        upper, xvec = simplex_max(objective, rows)
        if upper <= lower:
            upper = lower
            break
        x_hat = SparseVector(tuple((v, c) for v, c in zip(variables, xvec) if c != 0))
        res = norm(x_hat, SpaceSpec(space.kind), config)
        if res.le(Fraction(1)):
            lower = upper
            witness = x_hat
            break
        # feasible rescaling of the iterate
        if space.aggregates_l1:
            cand = upper / res.value
            scaled = x_hat.scale(Fraction(1) / res.value)
        else:
            rho = _rho_below_inv_sqrt(res.value_sq, scale=10**9)
            cand = upper * rho
            scaled = x_hat.scale(rho)
        if cand > lower:
            lower = cand
            witness = scaled
        if not space.aggregates_l1 and upper - lower <= tol:
            break
        weighted, family = _cut_from_witness(res, x_hat, space)
        row = [Fraction(0)] * len(variables)
        for w, top, bottom in weighted:
            for k in range(len(top), len(bottom) + 1):
                node = bottom[:k]
                if node in index:
                    row[index[node]] += w
        key = tuple(row)
        if key in row_keys:
            raise ConvergenceError("dual_norm stalled on a repeated cut")
        row_keys.add(key)
        rows.append((row, Fraction(1)))
        cuts.append(family)

    return DualNormCertificate(
        lower=lower,
        upper=upper,
        witness_vector=witness,
        cuts=tuple(cuts),
        tol=tol,
        iterations=rounds,
    )


def certify_unit_ball(g: DualFunctional, space: SpaceSpec, config: RunConfig = DEFAULT_CONFIG) -> bool:
    """Dual norm <= 1, by class when possible, else by cutting planes."""
    from .functionals import is_unit_ball_certified

    if is_unit_ball_certified(g, space):
        return True
    cert = dual_norm(g, space, config=config)
    return cert.upper <= 1
