"""Acceptance gate: every criterion runs end-to-end at its stated tolerance.

Each test prints one pass/fail line (the same report `jamestree verify`
emits) and asserts the criterion passed.
"""

from jamestree.config import DEFAULT_CONFIG
from jamestree.verify import CHECKS


def _run(ident):
    result = CHECKS[ident](DEFAULT_CONFIG)
    print(f"[{'PASS' if result.passed else 'FAIL'}] criterion {result.ident}: {result.name} -- {result.detail}")
    assert result.passed, result.detail
    return result


def test_criterion_01_norm_oracle_equivalence():
    result = _run("1")
    assert result.seconds < 60


def test_criterion_02_singleton_slice_diameter_zero():
    _run("2")


def test_criterion_03_sqrt2_slice_bound():
    _run("3")


def test_criterion_04_disjoint_pair_53_bound():
    result = _run("4")
    assert result.seconds < 300


def test_criterion_05_sd2p_certificates():
    _run("5")


def test_criterion_06_hyperplane_ccw_distance_two():
    _run("6")


def test_criterion_07_l1_rows():
    _run("7")


def test_criterion_08_ball_preserving_extensions():
    _run("8")


def test_criterion_09_octahedrality_deficits():
    _run("9")


def test_criterion_10_structural_invariants():
    _run("10")
