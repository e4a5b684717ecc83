"""Constructive witnesses: ball-preserving extensions, diameter-two
certificates for convex combinations of slices, octahedrality deficits, and
the level-1 l1-row check.

Every certificate is verified exactly by the norm engine before it is
returned; a construction that fails its own recheck raises instead of
returning a bad certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .config import DEFAULT_CONFIG, RunConfig
from .dualnorm import certify_unit_ball, dual_norm
from .errors import (
    CertificationError,
    PreconditionError,
    SpaceMismatchError,
)
from .functionals import GENERAL, SIGNED_FAMILY, DualFunctional, evaluate, validate_functional
from .norms import norm
from .slices import SliceSpec, slice_members
from .spaces import ROOT, M_HYP, Node, SparseVector, SpaceKind, SpaceSpec, unit_vector
from .trees import Segment, max_index_used


def _bits(value: int, width: int) -> Node:
    return tuple(value >> (width - 1 - i) & 1 for i in range(width))


def _anchor_and_level(space: SpaceSpec, paths, min_count: int) -> tuple[Node, int]:
    """Deterministic anchor strictly below every given path, plus the common
    level that fits `min_count` pairwise-incomparable descendants."""
    deepest = max((len(p) for p in paths), default=-1)
    anchor_level = deepest + 1
    if space.dyadic:
        anchor = (0,) * anchor_level
        width = max(1, (min_count - 1).bit_length())
        return anchor, anchor_level + width
    fresh = max_index_used(paths) + 1
    anchor = ((fresh,) + (0,) * (anchor_level - 1)) if anchor_level >= 1 else ROOT
    return anchor, anchor_level + 1


def _descendants_at(space: SpaceSpec, anchor: Node, level: int, count: int) -> tuple[Node, ...]:
    gap = level - len(anchor)
    if space.dyadic:
        if 2**gap < count:
            raise CertificationError("dyadic level too shallow for the requested fan-out")
        return tuple(anchor + _bits(i, gap) for i in range(count))
    return tuple(anchor + (i,) + (0,) * (gap - 1) for i in range(count))


def extend_within_ball(
    x: SparseVector,
    n: int,
    signs: tuple[int, ...],
    space: SpaceSpec,
    config: RunConfig = DEFAULT_CONFIG,
) -> SparseVector:
    """Append n fresh +-1/n entries at a common deep level, staying in the ball.

    Requires ||x|| <= 1 - 1/n (checked exactly).  The new nodes sit under an
    anchor strictly below the support, pairwise incomparable at one level.
    The result is rechecked by the norm engine before returning.  For JT_INF
    the guarantee only holds for root-free vectors (the increments ride any
    root chain into the fresh branch), so root mass is rejected there.
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise PreconditionError("signs must be n values in {-1, +1}")
    x.validate_for(space)
    res = norm(x, space, config)
    bound = 1 - Fraction(1, n)
    if not res.le(bound):
        raise PreconditionError(f"norm must be <= 1 - 1/n = {bound}")
    if space.kind is SpaceKind.JT_INF and x.value_at(ROOT) != 0:
        raise PreconditionError(
            "JT_INF extension requires a root-free vector: a root chain into the "
            "fresh branch can push the square sum past one"
        )
    anchor, level = _anchor_and_level(space, x.support, n)
    nodes = _descendants_at(space, anchor, level, n)
    y = x + SparseVector(tuple((t, Fraction(s, n)) for t, s in zip(nodes, signs)))
    if not norm(y, space, config).le(Fraction(1)):
        raise CertificationError("extension left the unit ball; construction invalid")
    return y


@dataclass(frozen=True)
class Sd2pCertificate:
    """Distance-2 witness for a convex combination of slices.

    y_i, z_i lie in the i-th slice with norm <= 1; the separating functional
    is a signed family of fresh singletons, so its dual norm is at most one,
    and it maps the difference of the convex combinations to exactly 2.
    """

    functionals: tuple[DualFunctional, ...]
    alphas: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    interior_points: tuple[SparseVector, ...]
    y_vectors: tuple[SparseVector, ...]
    z_vectors: tuple[SparseVector, ...]
    separating: DualFunctional
    fresh_level: int
    m: int
    distance: Fraction


def sd2p_witnesses(
    slices: tuple[tuple[DualFunctional, Fraction], ...],
    weights: tuple[Fraction, ...],
    space: SpaceSpec,
    config: RunConfig = DEFAULT_CONFIG,
) -> Sd2pCertificate:
    """Diameter-2 certificate for sum_i weight_i * S(B, x*_i, alpha_i)."""
    if space.kind not in (SpaceKind.JH, SpaceKind.JH_INF):
        raise SpaceMismatchError("sd2p witnesses are built for JH and JH_INF")
    if not slices:
        raise PreconditionError("at least one slice required")
    if len(weights) != len(slices):
        raise PreconditionError("one weight per slice required")
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        raise PreconditionError("weights must be positive and sum to 1")
    if any(alpha <= 0 for _, alpha in slices):
        raise PreconditionError("slices require alpha > 0")
    for g, _ in slices:
        if not certify_unit_ball(g, space, config):
            raise CertificationError("slice functional not certified inside the dual ball")

    interior: list[SparseVector] = []
    for g, alpha in slices:
        cert = dual_norm(g, space, config=config)
        w = cert.witness_vector
        w_norm = norm(w, space, config).value
        if w_norm == 0:
            raise CertificationError("dual-norm witness vector is zero")
        eta = 1 - alpha / 4 if alpha < 2 else Fraction(1, 2)
        x_i = w.scale(eta / w_norm)
        if not evaluate(g, x_i) > 1 - alpha:
            raise CertificationError("interior point misses the slice")
        interior.append(x_i)

    norms = [norm(x_i, space, config).value for x_i in interior]
    worst = max(norms)
    if worst >= 1:
        raise CertificationError("interior points must have norm < 1")
    # smallest m with every ||x_i|| <= 1 - 1/m
    m = max(2, _ceil_fraction(Fraction(1) / (1 - worst)))

    all_paths = [node for x_i in interior for node in x_i.support]
    for g, _ in slices:
        all_paths.extend(n for n in g.nodes())
    total = 2 * m * len(slices)
    anchor, level = _anchor_and_level(space, all_paths, total)
    fan = _descendants_at(space, anchor, level, total)

    y_vecs: list[SparseVector] = []
    z_vecs: list[SparseVector] = []
    separating_terms: list[tuple[Fraction, Segment]] = []
    for i, ((g, alpha), x_i) in enumerate(zip(slices, interior)):
        block = fan[i * 2 * m : (i + 1) * 2 * m]
        signs = []
        for t in block:
            v = evaluate(g, unit_vector(t))
            signs.append(1 if v >= 0 else -1)  # sign(0) := +1
        y = x_i + SparseVector(
            tuple((t, Fraction(s, m)) for t, s in zip(block[:m], signs[:m]))
        )
        z = x_i + SparseVector(
            tuple((t, Fraction(s, m)) for t, s in zip(block[m:], signs[m:]))
        )
        if not norm(y, space, config).le(Fraction(1)):
            raise CertificationError("y vector left the unit ball")
        if not norm(z, space, config).le(Fraction(1)):
            raise CertificationError("z vector left the unit ball")
        if not evaluate(g, y) > 1 - alpha or not evaluate(g, z) > 1 - alpha:
            raise CertificationError("extended vectors fell out of the slice")
        y_vecs.append(y)
        z_vecs.append(z)
        for t, s in zip(block[:m], signs[:m]):
            separating_terms.append((Fraction(s), Segment(t, t)))
        for t, s in zip(block[m:], signs[m:]):
            separating_terms.append((Fraction(-s), Segment(t, t)))

    separating = DualFunctional(tuple(separating_terms), SIGNED_FAMILY)
    validate_functional(separating, space)  # fresh same-level singletons: admissible

    combo = SparseVector(())
    for w, y, z in zip(weights, y_vecs, z_vecs):
        combo = combo + (y - z).scale(w)
    distance = evaluate(separating, combo)
    if distance != 2:
        raise CertificationError(f"separating functional gives {distance}, expected 2")

    return Sd2pCertificate(
        functionals=tuple(g for g, _ in slices),
        alphas=tuple(alpha for _, alpha in slices),
        weights=tuple(weights),
        interior_points=tuple(interior),
        y_vectors=tuple(y_vecs),
        z_vectors=tuple(z_vecs),
        separating=separating,
        fresh_level=level,
        m=m,
        distance=Fraction(2),
    )


def _ceil_fraction(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


@dataclass(frozen=True)
class CcwCertificate:
    """Pair of convex combinations of w*-slice members at dual distance 2.

    plus/minus differ by 2 * sum_i weight_i f_{S_i} with the S_i nested on a
    support-avoiding branch; evaluating at the basis vector of `witness_node`
    gives the lower bound 2, the triangle inequality the matching upper bound.
    """

    slice_vectors: tuple[SparseVector, ...]
    epsilons: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    members_plus: tuple[DualFunctional, ...]
    members_minus: tuple[DualFunctional, ...]
    plus: DualFunctional
    minus: DualFunctional
    witness_node: Node
    distance: Fraction


def m_ccw_witness(
    slices: tuple[tuple[SparseVector, Fraction], ...],
    weights: tuple[Fraction, ...],
    config: RunConfig = DEFAULT_CONFIG,
) -> CcwCertificate:
    """Distance-2 witness pair for a convex combination of w*-slices of the
    hyperplane's norming set."""
    if not slices:
        raise PreconditionError("at least one slice required")
    if len(weights) != len(slices):
        raise PreconditionError("one weight per slice required")
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        raise PreconditionError("weights must be positive and sum to 1")
    for x_i, eps in slices:
        x_i.validate_for(M_HYP)
        if x_i.is_zero:
            raise PreconditionError("slice vectors must be nonzero")
        if eps <= 0:
            raise PreconditionError("slice width epsilon must be positive")

    chosen: list[DualFunctional] = []
    for x_i, eps in slices:
        members = slice_members(SliceSpec(x_i, eps, M_HYP), config)
        if not members:
            raise CertificationError("slice is empty at the requested epsilon")
        chosen.append(members[0])

    supports = [n for x_i, _ in slices for n in x_i.support]
    used_paths = supports + [n for g in chosen for n in g.nodes()]
    r = 1 + max(
        max(s.q for g in chosen for s in g.segments),
        max((len(n) for n in supports), default=0),
    )
    fresh_ext = max_index_used(used_paths) + 1

    extended: list[DualFunctional] = []
    for (x_i, eps), g in zip(slices, chosen):
        terms = []
        for coeff, seg in g.terms:
            if seg.q < r:
                bottom = seg.bottom + (fresh_ext,) + (0,) * (r - seg.q - 1)
                seg = Segment(seg.top, bottom)
            terms.append((coeff, seg))
        g_ext = DualFunctional(tuple(terms), SIGNED_FAMILY)
        validate_functional(g_ext, M_HYP)
        if evaluate(g_ext, x_i) != evaluate(g, x_i):
            raise CertificationError("zero-padding changed a slice member's value")
        extended.append(g_ext)

    branch_head = fresh_ext + 1
    branch = tuple((branch_head,) + (0,) * (k - 1) for k in range(1, r + 1))
    witness_node = branch[r - 1]

    members_plus: list[DualFunctional] = []
    members_minus: list[DualFunctional] = []
    for (x_i, eps), g_ext in zip(slices, extended):
        p_i = g_ext.segments[0].p
        s_i = Segment(branch[p_i - 1], witness_node)
        plus_i = DualFunctional(g_ext.terms + ((Fraction(1), s_i),), SIGNED_FAMILY)
        minus_i = DualFunctional(g_ext.terms + ((Fraction(-1), s_i),), SIGNED_FAMILY)
        validate_functional(plus_i, M_HYP)
        validate_functional(minus_i, M_HYP)
        threshold_res = norm(x_i, M_HYP, config)
        for member in (plus_i, minus_i):
            if not threshold_res.exceeds_threshold(evaluate(member, x_i), eps):
                raise CertificationError("padded member fell out of its slice")
        members_plus.append(plus_i)
        members_minus.append(minus_i)

    plus = DualFunctional(
        tuple((w * c, s) for w, g in zip(weights, members_plus) for c, s in g.terms), GENERAL
    )
    minus = DualFunctional(
        tuple((w * c, s) for w, g in zip(weights, members_minus) for c, s in g.terms), GENERAL
    )
    unit_eval = evaluate(plus - minus, unit_vector(witness_node))
    if unit_eval != 2:
        raise CertificationError(f"witness node evaluation gives {unit_eval}, expected 2")
    # upper bound: ||plus - minus|| = 2||sum_i w_i f_{S_i}|| <= 2 by the triangle
    # inequality, each f_S being a norm-one functional; with the unit witness
    # vector the distance is exactly 2.
    return CcwCertificate(
        slice_vectors=tuple(x for x, _ in slices),
        epsilons=tuple(e for _, e in slices),
        weights=tuple(weights),
        members_plus=tuple(members_plus),
        members_minus=tuple(members_minus),
        plus=plus,
        minus=minus,
        witness_node=witness_node,
        distance=Fraction(2),
    )


@dataclass(frozen=True)
class OctahedralityReport:
    """Minimum of ||l*x + y|| / (|l| + ||y||) over a finite mesh.

    A deficit of 1 means the candidate direction x is exactly octahedral for
    the sampled subspace; values below 1 witness non-octahedral directions.
    For JT_INF the exact minimum is carried as components (num_sq, |l|,
    den_sq) because the ratio itself is irrational in general.
    """

    space: SpaceKind
    basis: tuple[SparseVector, ...]
    candidate: SparseVector
    mesh: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]
    deficit: Fraction | None
    deficit_parts: tuple[Fraction, Fraction, Fraction] | None
    argmin: tuple[Fraction, tuple[Fraction, ...]]

    @property
    def float_value(self) -> float:
        if self.deficit is not None:
            return float(self.deficit)
        num_sq, lam, den_sq = self.deficit_parts
        return float(num_sq) ** 0.5 / (float(lam) + float(den_sq) ** 0.5)


def _ratio_pair_le(a: tuple, b: tuple) -> bool:
    """Exact a <= b for ratios sqrt(A)/(u + sqrt(B)) given as (A, u, B)."""
    a_num, a_u, a_b = a
    b_num, b_u, b_b = b
    # a <= b  <=>  A_a (u_b + sqrt(B_b))^2 <= A_b (u_a + sqrt(B_a))^2
    p = a_num * (b_u * b_u + b_b)
    s = 2 * a_num * b_u  # coefficient of sqrt(B_b)
    q = b_num * (a_u * a_u + a_b)
    t = 2 * b_num * a_u  # coefficient of sqrt(B_a)
    return _sqrt_sum_le(p, s, b_b, q, t, a_b)


def _sqrt_sum_le(p, s, B_s, q, t, B_t) -> bool:
    """Exact test p + s*sqrt(B_s) <= q + t*sqrt(B_t), s, t >= 0."""
    if _sqrt_sum_eq(p, s, B_s, q, t, B_t):
        return True
    scale = 10**9
    while True:
        ls = Fraction(isqrt(B_s.numerator * B_s.denominator * scale * scale), B_s.denominator * scale)
        hs = ls if ls * ls == B_s else ls + Fraction(1, B_s.denominator * scale)
        lt = Fraction(isqrt(B_t.numerator * B_t.denominator * scale * scale), B_t.denominator * scale)
        ht = lt if lt * lt == B_t else lt + Fraction(1, B_t.denominator * scale)
        if p + s * hs <= q + t * lt:
            return True
        if p + s * ls > q + t * ht:
            return False
        scale *= 10**3


def _sqrt_sum_eq(p, s, B_s, q, t, B_t) -> bool:
    if s == 0 and t == 0:
        return p == q
    if s == 0:  # p - q = t*sqrt(B_t)
        diff = p - q
        return diff >= 0 and diff * diff == t * t * B_t
    if t == 0:  # q - p = s*sqrt(B_s)
        diff = q - p
        return diff >= 0 and diff * diff == s * s * B_s
    # p - q = t*sqrt(B_t) - s*sqrt(B_s); square twice
    lhs = t * t * B_t + s * s * B_s - (p - q) * (p - q)
    return lhs >= 0 and lhs * lhs == 4 * t * t * s * s * B_t * B_s


def octahedrality_deficit(
    space: SpaceSpec,
    basis: tuple[SparseVector, ...],
    candidate: SparseVector,
    mesh: tuple[tuple[Fraction, tuple[Fraction, ...]], ...],
    config: RunConfig = DEFAULT_CONFIG,
) -> OctahedralityReport:
    """Exact mesh minimum of the octahedrality ratio for candidate x.

    Mesh points are (scalar, coefficients for the basis); the all-zero point
    is rejected.  Degenerate points where both the scalar and the combination
    vanish (dependent basis) are skipped.
    """
    if not mesh:
        raise PreconditionError("mesh must be nonempty")
    candidate.validate_for(space)
    if not norm(candidate, space, config).eq(Fraction(1)):
        raise PreconditionError("candidate must have norm exactly 1")
    for lam, coeffs in mesh:
        if len(coeffs) != len(basis):
            raise PreconditionError("each mesh point needs one coefficient per basis vector")
        if lam == 0 and all(c == 0 for c in coeffs):
            raise PreconditionError("mesh must not contain the all-zero point")

    best_l1: Fraction | None = None
    best_parts: tuple | None = None
    argmin = mesh[0]
    for lam, coeffs in mesh:
        y = SparseVector(())
        for c, vec in zip(coeffs, basis):
            if c != 0:
                y = y + vec.scale(c)
        v = candidate.scale(lam) + y
        num = norm(v, space, config)
        den = norm(y, space, config)
        if space.aggregates_l1:
            denominator = abs(lam) + den.value
            if denominator == 0:
                continue
            ratio = num.value / denominator
            if best_l1 is None or ratio < best_l1:
                best_l1 = ratio
                argmin = (lam, tuple(coeffs))
        else:
            if lam == 0 and den.value_sq == 0:
                continue
            parts = (num.value_sq, abs(lam), den.value_sq)
            if best_parts is None or (
                _ratio_pair_le(parts, best_parts) and not _ratio_pair_le(best_parts, parts)
            ):
                best_parts = parts
                argmin = (lam, tuple(coeffs))
    if best_l1 is None and best_parts is None:
        raise PreconditionError("every mesh point was degenerate")
    return OctahedralityReport(
        space=space.kind,
        basis=tuple(basis),
        candidate=candidate,
        mesh=tuple((l, tuple(c)) for l, c in mesh),
        deficit=best_l1,
        deficit_parts=best_parts,
        argmin=argmin,
    )


def fresh_direction(basis: tuple[SparseVector, ...]) -> SparseVector:
    """Unit vector on a branch avoiding every basis support, one level deeper
    than all of them (infinite-branching spaces)."""
    from .trees import avoiding_branch

    paths = [n for vec in basis for n in vec.support]
    depth = max((len(n) for n in paths), default=0) + 1
    branch = avoiding_branch(paths, depth)
    return unit_vector(branch[-1])


def l1_basis_check(
    space: SpaceSpec, coefficients: tuple[Fraction, ...], config: RunConfig = DEFAULT_CONFIG
) -> tuple[Fraction, bool]:
    """Norm of sum a_i e_(i) over level-1 siblings, and whether it equals
    sum |a_i| exactly (the isometric l1 rows of the infinitely branching
    spaces)."""
    if space.kind not in (SpaceKind.JH_INF, SpaceKind.M_HYP):
        raise SpaceMismatchError("l1 rows live in JH_INF and M_HYP")
    if len(coefficients) < 1:
        raise PreconditionError("need at least one coefficient")
    x = SparseVector(tuple(((i + 1,), Fraction(c)) for i, c in enumerate(coefficients) if c != 0))
    value = norm(x, space, config).value
    expected = sum((abs(Fraction(c)) for c in coefficients), Fraction(0))
    return value, value == expected
