"""Exact norm evaluation with attaining witness families.

The optimized engine never enumerates families wholesale.  For the
level-aligned (L1) spaces it sweeps the finitely many (p, q) level windows
and, inside each window, picks per level-p ancestor the chain with the
largest absolute sum (chains under distinct level-p nodes never conflict, and
no two admissible segments can share a level-p node, so the window optimum is
the sum of per-node optima).  For JT_INF it solves the disjoint-chain packing
problem by dynamic programming over the support closure, with memoized chain
sums.  The naive exhaustive oracle lives in `reference` and is used in tests
only; both routes must agree exactly.

Witnesses are deterministic: the attaining family that is first in the
canonical enumeration order (segment count, then node count, then lex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .config import DEFAULT_CONFIG, RunConfig
from .errors import EnumerationCapError, JamesTreeError, SpaceMismatchError
from .spaces import Node, ROOT, SparseVector, SpaceKind, SpaceSpec
from .trees import (
    AdmissibleFamily,
    Closure,
    Segment,
    literal_chain_subsets,
    materialize_core,
    max_index_used,
)


@dataclass(frozen=True)
class NormResult:
    """Exact optimum of the norm expression plus an attaining family.

    JT_INF norms are stored squared (`value_sq`) to stay rational; the L1
    spaces store the norm itself (`value`).  Exactly one of the two is set.
    """

    space: SpaceSpec
    value: Fraction | None
    value_sq: Fraction | None
    witness: AdmissibleFamily

    @property
    def float_value(self) -> float:
        if self.value is not None:
            return float(self.value)
        return float(self.value_sq) ** 0.5

    # Exact comparisons against rational bounds (squares for JT_INF).
    def le(self, bound: Fraction) -> bool:
        if self.value is not None:
            return self.value <= bound
        return bound >= 0 and self.value_sq <= bound * bound

    def lt(self, bound: Fraction) -> bool:
        if self.value is not None:
            return self.value < bound
        return bound > 0 and self.value_sq < bound * bound

    def eq(self, bound: Fraction) -> bool:
        if self.value is not None:
            return self.value == bound
        return bound >= 0 and self.value_sq == bound * bound

    def ge(self, bound: Fraction) -> bool:
        return self.eq(bound) or not self.le(bound)

    def gt(self, bound: Fraction) -> bool:
        return not self.le(bound)

    def exceeds_threshold(self, evaluation: Fraction, alpha: Fraction) -> bool:
        """True iff evaluation > norm - alpha, decided exactly."""
        if self.value is not None:
            return evaluation > self.value - alpha
        # evaluation + alpha > sqrt(value_sq)
        lhs = evaluation + alpha
        if lhs < 0:
            return False
        return lhs * lhs > self.value_sq


def _prefix_sums(x: SparseVector, closure: Closure) -> dict[Node, Fraction]:
    sums: dict[Node, Fraction] = {}
    for node in sorted(closure.nodes, key=len):
        parent_sum = sums[node[:-1]] if node != ROOT else Fraction(0)
        sums[node] = parent_sum + x.value_at(node)
    return sums


def _chain_sum(sums: dict[Node, Fraction], top: Node, bottom: Node) -> Fraction:
    above = sums[top[:-1]] if top != ROOT else Fraction(0)
    return sums[bottom] - above


def _aligned_norm(x: SparseVector, space: SpaceSpec, config: RunConfig) -> NormResult:
    closure = Closure(x.support)
    sums = _prefix_sums(x, closure)
    fresh = max_index_used(x.support) + 1
    p_min = space.min_top_level
    top_level = closure.max_level

    best_value = Fraction(0)
    best_family: AdmissibleFamily | None = None

    for q in range(p_min, top_level + 1):
        for p in range(p_min, q + 1):
            total = Fraction(0)
            parts: list[Segment] = []
            for u in closure.by_level.get(p, ()):
                best_abs = Fraction(0)
                arg_bottoms: list[Node] = []
                for v in closure.descendants_or_self(u):
                    if len(v) > q:
                        continue
                    if len(v) < q and not closure.extendable(v, space):
                        continue
                    a = abs(_chain_sum(sums, u, v))
                    if a > best_abs:
                        best_abs = a
                        arg_bottoms = [v]
                    elif a == best_abs and a > 0:
                        arg_bottoms.append(v)
                if best_abs > 0:
                    total += best_abs
                    seg = min(
                        (materialize_core(closure, u, v, q, space, fresh) for v in arg_bottoms),
                        key=Segment.sort_key,
                    )
                    parts.append(seg)
            if total == 0:
                continue
            if total > best_value:
                best_value = total
                best_family = AdmissibleFamily(tuple(parts), space)
            elif total == best_value and best_family is not None:
                fam = AdmissibleFamily(tuple(parts), space)
                if fam.sort_key() < best_family.sort_key():
                    best_family = fam
    if best_family is None:
        best_family = AdmissibleFamily((), space)
    return NormResult(space, best_value, None, best_family)


def _jt_candidates(x: SparseVector, closure: Closure, sums, config: RunConfig):
    """Support-meeting closure chains with nonzero sum, in canonical order."""
    cands: list[tuple[Segment, Fraction]] = []
    for top in closure.sorted_nodes:
        for bottom in closure.descendants_or_self(top):
            s = _chain_sum(sums, top, bottom)
            if s != 0:
                cands.append((Segment(top, bottom), s))
                if len(cands) > config.candidate_cap:
                    raise EnumerationCapError(f"candidate segments exceeded cap {config.candidate_cap}")
    cands.sort(key=lambda cs: cs[0].sort_key())
    return cands


def _jt_value_sq(x: SparseVector, closure: Closure, sums) -> Fraction:
    children = closure.children
    dp: dict[Node, Fraction] = {}
    for node in sorted(closure.nodes, key=len, reverse=True):
        best = sum((dp[c] for c in children[node]), Fraction(0))
        for bottom in closure.descendants_or_self(node):
            s = _chain_sum(sums, node, bottom)
            val = s * s
            for k in range(len(node), len(bottom) + 1):
                w = bottom[:k]
                nxt = bottom[: k + 1] if k < len(bottom) else None
                for c in children[w]:
                    if c != nxt:
                        val += dp[c]
            if val > best:
                best = val
        dp[node] = best
    return dp[ROOT]


def _jt_witness(
    target: Fraction, cands: list[tuple[Segment, Fraction]], config: RunConfig
) -> AdmissibleFamily:
    """First attaining family in canonical order (count, node count, lex)."""
    from .trees import segments_disjoint

    squares = [s * s for _, s in cands]
    suffix = [Fraction(0)] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + squares[i]

    for count_limit in range(1, len(cands) + 1):
        attaining: list[AdmissibleFamily] = []
        chosen: list[Segment] = []

        def rec(start: int, acc: Fraction) -> None:
            if acc == target:
                attaining.append(AdmissibleFamily(tuple(chosen), SpaceSpec(SpaceKind.JT_INF)))
                return
            if len(chosen) == count_limit:
                return
            for j in range(start, len(cands)):
                if acc + suffix[j] < target:
                    return
                seg = cands[j][0]
                if all(segments_disjoint(seg, c) for c in chosen):
                    chosen.append(seg)
                    rec(j + 1, acc + squares[j])
                    chosen.pop()
                    if len(attaining) > config.family_cap:
                        raise EnumerationCapError("witness search exceeded family cap")

        rec(0, Fraction(0))
        if attaining:
            return min(attaining, key=AdmissibleFamily.sort_key)
    raise JamesTreeError("internal error: no family attains the computed norm")


def norm(x: SparseVector, space: SpaceSpec, config: RunConfig = DEFAULT_CONFIG) -> NormResult:
    """Exact norm of a finitely supported vector, with attaining witness.

    For JT_INF the result carries the exact squared value.  The literal
    segment variant has its own entry point (`literal_norm_sq_jt`).
    """
    if space.segment_variant != "interval":
        raise SpaceMismatchError("norm() computes the interval variant; use literal_norm_sq_jt")
    x.validate_for(space)
    if x.is_zero:
        empty = AdmissibleFamily((), space)
        if space.aggregates_l1:
            return NormResult(space, Fraction(0), None, empty)
        return NormResult(space, None, Fraction(0), empty)

    if space.aggregates_l1:
        return _aligned_norm(x, space, config)

    closure = Closure(x.support)
    sums = _prefix_sums(x, closure)
    value_sq = _jt_value_sq(x, closure, sums)
    cands = _jt_candidates(x, closure, sums, config)
    witness = _jt_witness(value_sq, cands, config)
    return NormResult(space, None, value_sq, witness)


def evaluate_family(family: AdmissibleFamily, x: SparseVector) -> Fraction:
    """Norm expression of one family: sum of |segment sums| (L1) or of squares."""
    total = Fraction(0)
    for seg in family.segments:
        s = sum((v for n, v in x.entries if seg.contains(n)), Fraction(0))
        total += abs(s) if family.space.aggregates_l1 else s * s
    return total


def literal_norm_sq_jt(
    x: SparseVector, config: RunConfig = DEFAULT_CONFIG
) -> tuple[Fraction, tuple[tuple[Node, ...], ...]]:
    """JT_INF norm squared under the literal segment reading (gaps allowed).

    Returns the exact squared value and a minimal attaining collection of
    totally ordered node sets.  Exhaustive over support-chain subsets, so this
    is a flagged diagnostic, not an engine path.
    """
    if x.is_zero:
        return Fraction(0), ()
    chains = [c for c in literal_chain_subsets(x.support)]
    sums = [sum((x.value_at(n) for n in c), Fraction(0)) for c in chains]
    cands = [(c, s * s) for c, s in zip(chains, sums) if s != 0]
    cands.sort(key=lambda cs: (len(cs[0]), cs[0]))
    suffix = [Fraction(0)] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + cands[i][1]

    best = Fraction(0)
    visited = 0

    def rec(start: int, acc: Fraction, used: frozenset) -> None:
        nonlocal best, visited
        if acc > best:
            best = acc
        for j in range(start, len(cands)):
            if acc + suffix[j] <= best:
                return
            nodes = frozenset(cands[j][0])
            if not (nodes & used):
                visited += 1
                if visited > config.family_cap:
                    raise EnumerationCapError("literal enumeration exceeded family cap")
                rec(j + 1, acc + cands[j][1], used | nodes)

    rec(0, Fraction(0), frozenset())

    # Minimal attaining collection, by (count, node count, lex).
    best_key = None
    best_sel: tuple[tuple[Node, ...], ...] = ()
    for count_limit in range(1, len(cands) + 1):
        found: list[tuple] = []

        def rec2(start: int, acc: Fraction, used: frozenset, sel: list[int]) -> None:
            if acc == best:
                found.append(tuple(cands[j][0] for j in sel))
                return
            if len(sel) == count_limit:
                return
            for j in range(start, len(cands)):
                if acc + suffix[j] < best:
                    return
                nodes = frozenset(cands[j][0])
                if not (nodes & used):
                    sel.append(j)
                    rec2(j + 1, acc + cands[j][1], used | nodes, sel)
                    sel.pop()

        rec2(0, Fraction(0), frozenset(), [])
        if found:
            for sel in found:
                key = (len(sel), sum(len(c) for c in sel), sel)
                if best_key is None or key < best_key:
                    best_key = key
                    best_sel = sel
            break
    return best, best_sel
