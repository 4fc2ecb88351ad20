"""Convolutional MDP construction and verification tests."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from coding.completion import count_sets
from coding.convmdp import (
    ConvCode,
    Layout,
    ParityCheckCode,
    build_diag,
    build_low_rate,
    build_vdm2,
    build_vdm3,
    code_degree,
    column_distance_bound,
    column_distance_bruteforce,
    diag_extension_degree,
    dual_mdp_check,
    encode_stream,
    find_z,
    is_mdp,
    is_mdp_paritycheck,
    is_noncatastrophic,
    mds_extension_check,
    nontrivial_sets_generator,
    nontrivial_sets_paritycheck,
    parity_check_from_generator,
    sliding,
    sliding_tie_pattern,
    toeplitz_lower,
    validate_code,
    window_bound,
)
from coding.errors import (
    DimensionMismatch,
    FieldTooSmall,
    NoValidZ,
    ParameterViolation,
    TooLarge,
    UnsupportedWindow,
)
from coding.exactla import from_ints, scale_rows, zeros
from coding.gf import in_subfield, make_field, minimal_polynomial

GF2 = make_field(2)
GF5 = make_field(5)


@pytest.fixture(scope="module")
def small_diag() -> ConvCode:
    return build_diag(3, 2, GF5)


def _catastrophic() -> ConvCode:
    row = from_ints(GF2, [[1, 1]])
    return ConvCode(n=2, k=1, field=GF2, coeffs=(row, row), delta=1)


def test_window_bound_and_column_bounds() -> None:
    assert window_bound(4, 2, 2).L == 2
    assert window_bound(4, 2, 2).bounds == (3, 5, 7)
    assert window_bound(5, 3, 2).L == 1
    assert column_distance_bound(3, 2, 1) == 3
    with pytest.raises(ParameterViolation):
        window_bound(3, 3, 1)


@pytest.mark.parametrize(
    ("n", "k", "j", "expected"),
    [(4, 2, 1, 53), (5, 3, 1, 155), (3, 2, 1, 12), (4, 2, 0, 6)],
)
def test_nontrivial_generator_set_counts(n: int, k: int, j: int, expected: int) -> None:
    assert count_sets(nontrivial_sets_generator(n, k, j)) == expected


def test_nontrivial_paritycheck_set_counts() -> None:
    assert count_sets(nontrivial_sets_paritycheck(4, 2, 1)) == 53
    assert count_sets(nontrivial_sets_paritycheck(5, 2, 1)) == 155


def test_sliding_layouts_are_transposed_block_orders() -> None:
    g0 = from_ints(GF5, [[1, 2, 3], [4, 0, 1]])
    g1 = from_ints(GF5, [[2, 0, 0], [0, 0, 0]])
    generator = sliding([g0, g1], 1, "generator").body
    assert generator.shape == (4, 6)
    assert generator.row(0) == (1, 2, 3, 2, 0, 0)
    assert generator.row(2) == (0, 0, 0, 1, 2, 3)
    parity = sliding([g0, g1], 1, Layout.PARITYCHECK).body
    assert parity.row(0) == (1, 2, 3, 0, 0, 0)
    assert parity.row(2) == (2, 0, 0, 1, 2, 3)
    with pytest.raises(UnsupportedWindow):
        sliding([g0], -1, Layout.GENERATOR)


def test_conv_code_validates_shapes() -> None:
    with pytest.raises(ParameterViolation):
        ConvCode(n=2, k=3, field=GF5, coeffs=(zeros(GF5, 3, 2),), delta=0)
    with pytest.raises(DimensionMismatch):
        ConvCode(n=3, k=2, field=GF5, coeffs=(zeros(GF5, 2, 2),), delta=0)
    with pytest.raises(ParameterViolation):
        ParityCheckCode(n=3, k=3, field=GF5, coeffs=(), delta=0)


def test_small_diag_code_is_mdp(small_diag: ConvCode) -> None:
    assert small_diag.field == GF5
    assert small_diag.memory == 1
    assert code_degree(small_diag) == 1
    report = is_mdp(small_diag)
    assert report.passed
    assert report.total_sets == 12
    assert report.details == {"window": 1, "L": 1, "layout": "generator"}
    assert mds_extension_check(small_diag)


def test_column_distances_meet_the_bound(small_diag: ConvCode) -> None:
    assert column_distance_bruteforce(small_diag, 0) == 2
    assert column_distance_bruteforce(small_diag, 1) == column_distance_bound(3, 2, 1)
    assert column_distance_bruteforce(small_diag, 1, threads=3) == 3
    with pytest.raises(TooLarge):
        column_distance_bruteforce(small_diag, 1, max_evaluations=10)


def test_zeroed_tail_loses_mdp(small_diag: ConvCode) -> None:
    flat = ConvCode(
        n=3,
        k=2,
        field=GF5,
        coeffs=(small_diag.coeffs[0], zeros(GF5, 2, 3)),
        delta=1,
    )
    assert not is_mdp(flat, window=1).passed
    assert not mds_extension_check(flat)
    with pytest.raises(ParameterViolation):
        validate_code(flat)


@pytest.mark.parametrize("factors", [(1, 1), (2, 3), (4, 1)])
@pytest.mark.parametrize("zero_tail", [False, True])
def test_mdp_verdict_survives_row_scaling(
    small_diag: ConvCode, factors: tuple[int, int], zero_tail: bool
) -> None:
    tail = zeros(GF5, 2, 3) if zero_tail else small_diag.coeffs[1]
    code = ConvCode(n=3, k=2, field=GF5, coeffs=(small_diag.coeffs[0], tail), delta=1)
    scaled = ConvCode(
        n=3,
        k=2,
        field=GF5,
        coeffs=tuple(scale_rows(c, factors) for c in code.coeffs),
        delta=1,
    )
    before = is_mdp(code, window=1, failure_cap=None)
    after = is_mdp(scaled, window=1, failure_cap=None)
    assert after.passed == before.passed == (not zero_tail)
    assert after.failures == before.failures


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_paritycheck_sets_are_generator_complements(n: int) -> None:
    for k in range(1, n):
        for j in (0, 1):
            universe = frozenset(range((j + 1) * n))
            complements = {
                tuple(sorted(universe - set(colset)))
                for colset in nontrivial_sets_generator(n, k, j)
            }
            assert complements == set(nontrivial_sets_paritycheck(n, k, j))


def test_encode_stream_applies_the_memory(small_diag: ConvCode) -> None:
    out = encode_stream(small_diag, [[1, 0], [0, 0]])
    assert [x.value for x in out[0]] == list(small_diag.coeffs[0].row(0))
    assert [x.value for x in out[1]] == list(small_diag.coeffs[1].row(0))
    with pytest.raises(DimensionMismatch):
        encode_stream(small_diag, [[1, 0, 0]])


def test_diag_over_extension_field() -> None:
    code = build_diag(5, 3, make_field(11))
    assert diag_extension_degree(2) == 2
    assert code.field.order == 121
    alpha = code.coeffs[1].at(0, 0)
    assert len(minimal_polynomial(alpha, 1)) - 1 == 2
    report = is_mdp(code, threads=2)
    assert report.passed
    assert report.checked_sets == 155


def test_builder_refusals() -> None:
    with pytest.raises(ParameterViolation):
        build_diag(4, 2, make_field(11))
    with pytest.raises(FieldTooSmall):
        build_diag(5, 3, make_field(7))
    with pytest.raises(ParameterViolation):
        build_vdm2(3, GF5)
    with pytest.raises(ParameterViolation):
        build_vdm2(6, GF5)
    with pytest.raises(ParameterViolation):
        build_vdm3(6, make_field(7))
    with pytest.raises(ParameterViolation):
        build_low_rate(5, 4, GF5)


def test_vdm2_checks_the_first_window(caplog: pytest.LogCaptureFixture) -> None:
    code = build_vdm2(4, GF5)
    assert code.field.order == 25
    with caplog.at_level(logging.WARNING, logger="coding.convmdp"):
        report = is_mdp(code)
    assert report.passed
    assert report.details["L"] == 2
    assert report.details["window"] == 1
    assert any("Window bound" in record.message for record in caplog.records)


@pytest.fixture(scope="module")
def vdm3_code() -> ConvCode:
    return build_vdm3(7, make_field(7))


def test_vdm3_is_mdp_through_both_layouts(vdm3_code: ConvCode) -> None:
    assert vdm3_code.field.order == 343
    assert (vdm3_code.k, vdm3_code.delta) == (4, 3)

    primal = is_mdp(vdm3_code, failure_cap=None, threads=4)
    assert primal.passed
    assert primal.checked_sets == primal.total_sets == 2114

    dual = dual_mdp_check(vdm3_code, failure_cap=None, threads=4)
    assert dual.label == "dual-mdp"
    assert dual.passed
    assert dual.total_sets == 2114

    assert is_noncatastrophic(vdm3_code)


def test_dual_check_refuses_rate_one_codes() -> None:
    full_rate = ConvCode(n=2, k=2, field=GF5, coeffs=(from_ints(GF5, [[1, 0], [0, 1]]),), delta=0)
    with pytest.raises(ParameterViolation):
        dual_mdp_check(full_rate)


def test_find_z_char2_exclusion() -> None:
    with pytest.raises(NoValidZ):
        find_z(GF2)
    z = find_z(make_field(2, 2))
    assert z.field.order == 64
    assert not in_subfield(z, 2)
    z3 = find_z(make_field(3))
    assert minimal_polynomial(z3, 1)[0].value != 2


def test_toeplitz_lower_layout() -> None:
    f = make_field(5)
    betas = [f.element(2), f.element(3), f.one]
    assert toeplitz_lower(f, betas).to_ints() == [[2, 0, 0], [3, 2, 0], [1, 3, 2]]


def test_noncatastrophic_methods_agree(small_diag: ConvCode) -> None:
    assert is_noncatastrophic(small_diag, "structural")
    assert is_noncatastrophic(small_diag, "gcd")
    bad = _catastrophic()
    assert code_degree(bad) == 1
    assert not is_noncatastrophic(bad)
    with pytest.raises(ParameterViolation):
        is_noncatastrophic(bad, "structural")
    with pytest.raises(ValueError):
        is_noncatastrophic(bad, "bogus")


def test_parity_check_of_unit_memory_row() -> None:
    code = ConvCode(
        n=2,
        k=1,
        field=GF5,
        coeffs=(from_ints(GF5, [[1, 0]]), from_ints(GF5, [[0, 1]])),
        delta=1,
    )
    pcode = parity_check_from_generator(code)
    assert pcode.k == 1
    assert [c.to_ints() for c in pcode.coeffs] == [[[0, 4]], [[1, 0]]]


def test_low_rate_code_through_parity_checks() -> None:
    pcode = build_low_rate(5, 2, GF5)
    assert pcode.coeffs[0].shape == (3, 5)
    report = is_mdp_paritycheck(pcode)
    assert report.passed
    assert report.total_sets == 155


def test_tie_pattern_shape() -> None:
    pattern = sliding_tie_pattern(3, 2)
    assert (pattern.rows, pattern.cols) == (4, 6)
    assert not pattern.free[2][0]
    assert pattern.free[2][3]
    assert len(pattern.ties) == 6
    with pytest.raises(UnsupportedWindow):
        sliding_tie_pattern(3, 2, j=2)
