import random
from fractions import Fraction

import pytest

from jamestree.errors import SpaceMismatchError
from jamestree.norms import evaluate_family, literal_norm_sq_jt, norm
from jamestree.reference import naive_norm
from jamestree.sampling import nonzero_fraction, random_vector
from jamestree.spaces import (
    ALL_SPACES,
    JH,
    JH_INF,
    JT_INF,
    JT_INF_LITERAL,
    M_HYP,
    SparseVector,
    project_levels,
    unit_vector,
)
from jamestree.trees import Segment, is_admissible


def singleton_slice_vector(eps):
    return SparseVector(
        (
            ((), 1 - eps),
            ((0,), eps),
            ((1,), -eps),
            ((0, 0), -eps),
            ((0, 1), -eps),
            ((1, 0), -eps),
            ((1, 1), eps),
        )
    )


def test_jh_seven_node_unit_vector():
    eps = Fraction(1, 5)
    res = norm(singleton_slice_vector(eps), JH)
    assert res.value == 1
    assert res.witness.segments == (Segment((), (0,)),)
    # every other family stays under max(1 - eps, 4 eps)
    from jamestree.trees import enumerate_admissible_families

    x = singleton_slice_vector(eps)
    for family in enumerate_admissible_families(x.support, JH):
        if family.segments != (Segment((), (0,)),):
            assert evaluate_family(family, x) <= max(1 - eps, 4 * eps)


def test_jt_two_point_vector_is_unit():
    x = SparseVector((((), Fraction(4, 5)), ((1,), Fraction(1, 5))))
    res = norm(x, JT_INF)
    assert res.value_sq == 1
    assert res.witness.segments == (Segment((), (1,)),)


def test_jt_sibling_sum_sqrt_two():
    res = norm(unit_vector((1,)) + unit_vector((2,)), JT_INF)
    assert res.value_sq == 2
    assert res.witness.segments == (Segment((1,), (1,)), Segment((2,), (2,)))


def test_jh_three_node_example():
    x = unit_vector(()) + unit_vector((0,)) + unit_vector((1,))
    assert norm(x, JH).value == 2


def test_empty_vector_norm_zero():
    for space in ALL_SPACES:
        res = norm(SparseVector(()), space)
        assert res.witness.segments == ()
        assert res.float_value == 0.0


def test_unit_vectors_have_norm_one_everywhere():
    for space in ALL_SPACES:
        node = (1, 0) if space.dyadic else (2, 1)
        assert norm(unit_vector(node), space).eq(Fraction(1))


def test_engine_matches_oracle_including_witness_key():
    rng = random.Random(23)
    for space in ALL_SPACES:
        for _ in range(60):
            x = random_vector(rng, space, max_level=3, max_nodes=5)
            res = norm(x, space)
            value, witness = naive_norm(x, space)
            engine_value = res.value if res.value is not None else res.value_sq
            assert engine_value == value
            if not x.is_zero:
                assert res.witness.sort_key() == witness.sort_key()
                assert evaluate_family(res.witness, x) == value
                assert is_admissible(res.witness.segments, space)


def test_norm_axioms_randomized():
    rng = random.Random(29)
    for space in ALL_SPACES:
        for _ in range(25):
            x = random_vector(rng, space, max_level=3, max_nodes=4)
            y = random_vector(rng, space, max_level=3, max_nodes=4)
            q = nonzero_fraction(rng)
            rx, ry, rxy = norm(x, space), norm(y, space), norm(x + y, space)
            rqx = norm(x.scale(q), space)
            if rx.value is not None:
                assert rqx.value == abs(q) * rx.value
                assert rxy.value <= rx.value + ry.value
            else:
                assert rqx.value_sq == q * q * rx.value_sq
                diff = rxy.value_sq - rx.value_sq - ry.value_sq
                assert diff <= 0 or diff * diff <= 4 * rx.value_sq * ry.value_sq
            assert (rx.value == 0 if rx.value is not None else rx.value_sq == 0) == x.is_zero


def test_monotone_projections():
    rng = random.Random(31)
    for space in ALL_SPACES:
        for _ in range(25):
            x = random_vector(rng, space, max_level=4, max_nodes=5)
            full = norm(x, space)
            for level in range(0, max(x.max_level, 0) + 1):
                part = norm(project_levels(x, level), space)
                if full.value is not None:
                    assert part.value <= full.value
                else:
                    assert part.value_sq <= full.value_sq


def test_hyperplane_restriction_matches_jh_inf():
    rng = random.Random(37)
    for _ in range(50):
        x = random_vector(rng, M_HYP, max_level=3, max_nodes=5)
        assert norm(x, JH_INF).value == norm(x, M_HYP).value


def test_literal_variant():
    # sign cancellations can be skipped, so literal >= interval
    rng = random.Random(41)
    for _ in range(30):
        x = random_vector(rng, JT_INF, max_level=3, max_nodes=4)
        literal_sq, witness = literal_norm_sq_jt(x)
        assert literal_sq >= norm(x, JT_INF).value_sq
        if not x.is_zero:
            total = Fraction(0)
            for chain in witness:
                s = sum((x.value_at(n) for n in chain), Fraction(0))
                total += s * s
            assert total == literal_sq
    # a gapped chain beats every interval family here
    x = SparseVector((((), Fraction(1)), ((1,), Fraction(-1)), ((1, 1), Fraction(1))))
    assert norm(x, JT_INF).value_sq == 3  # three disjoint singletons
    literal_sq, _ = literal_norm_sq_jt(x)
    assert literal_sq == 5  # {root, (1,1)} skipping the flip, plus {(1,)}


def test_norm_rejects_literal_spec():
    with pytest.raises(SpaceMismatchError):
        norm(unit_vector(()), JT_INF_LITERAL)


def test_engine_matches_truncated_universe():
    # third route: every admissible family of an explicit bounded tree,
    # including support-disjoint segments and below-support bottoms
    from jamestree.reference import truncated_universe_norm

    rng = random.Random(59)
    for space in ALL_SPACES:
        depth = 3 if space.dyadic else 2
        for _ in range(8):
            x = random_vector(rng, space, max_level=2, max_nodes=3, branching=2)
            res = norm(x, space)
            brute = truncated_universe_norm(x, space, branching=2 if space.dyadic else 3, depth=depth)
            engine_value = res.value if res.value is not None else res.value_sq
            assert engine_value == brute, (space.kind, x.entries)
