"""MR-LRC construction, verification, decoding and update tests."""

from __future__ import annotations

import logging
import sys
from dataclasses import replace
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from coding.completion import count_sets
from coding.errors import (
    DegreeTooSmall,
    FieldTooSmall,
    InconsistentCodeword,
    IndexOutOfRange,
    LengthMismatch,
    ProfileViolation,
    Unrecoverable,
)
from coding.exactla import from_ints
from coding.gf import field_of_order, make_field
from coding.mrlrc import (
    MrLrcCode,
    admissible_column_sets,
    build_mr_lrc,
    build_profile,
    decode_erasures,
    encode,
    erasure_pattern_recoverable,
    field_degree_bound,
    local_rank_check,
    qh,
    qh_closed_form,
    qh_max,
    structure_violations,
    update_symbol,
    verify_mr,
    zero_parities,
)

GF7 = make_field(7)


@pytest.fixture(scope="module")
def reference_code() -> MrLrcCode:
    return build_mr_lrc(build_profile(2, 2, [4, 4], [2, 2]), GF7)


def test_profile_layout() -> None:
    profile = build_profile(2, 1, [3, 4], [1, 2])
    assert (profile.K, profile.N) == (3, 8)
    assert profile.groups == [range(0, 3), range(3, 7)]
    assert profile.global_columns == range(7, 8)
    assert profile.row_offsets == [0, 1]
    assert profile.group_of(7) == 2
    with pytest.raises(IndexOutOfRange):
        profile.group_of(8)


@pytest.mark.parametrize(
    ("ell", "h", "ns", "ks"),
    [(0, 1, [], []), (2, 1, [4], [2]), (1, 1, [2], [3]), (1, -1, [4], [2])],
)
def test_profile_rejects_invalid_shapes(ell: int, h: int, ns: list[int], ks: list[int]) -> None:
    with pytest.raises(ProfileViolation):
        build_profile(ell, h, ns, ks)


def test_degree_bound_matches_quadratic_form() -> None:
    assert field_degree_bound(build_profile(2, 2, [4, 4], [2, 2])) == 2
    assert field_degree_bound(build_profile(3, 3, [5, 5, 5], [3, 3, 3])) == 5
    assert field_degree_bound(build_profile(3, 1, [4, 4, 4], [2, 2, 2])) == 1


def test_reference_code_shape(reference_code: MrLrcCode) -> None:
    assert reference_code.degree == 2
    assert reference_code.ext_field.order == 49
    assert reference_code.generator.shape == (4, 10)
    assert structure_violations(reference_code) == []
    assert local_rank_check(reference_code) == []


def test_admissible_set_counts() -> None:
    assert count_sets(admissible_column_sets(build_profile(2, 2, [4, 4], [2, 2]))) == 160
    assert count_sets(admissible_column_sets(build_profile(2, 1, [3, 4], [1, 2]))) == 36


def test_reference_code_is_maximally_recoverable(reference_code: MrLrcCode) -> None:
    report = verify_mr(reference_code)
    assert report.passed
    assert report.summary() == "mr-lrc: passed, 160/160 minors"
    assert report.details["local_failures"] == []


def test_unequal_groups_pass_at_degree_one() -> None:
    code = build_mr_lrc(build_profile(2, 1, [3, 4], [1, 2]), GF7)
    assert code.ext_field == GF7
    assert verify_mr(code, threads=2).passed


@pytest.fixture(scope="module")
def unequal_code() -> MrLrcCode:
    return build_mr_lrc(build_profile(2, 2, [5, 4], [3, 2]), field_of_order(8))


def test_unequal_groups_with_two_globals(unequal_code: MrLrcCode) -> None:
    assert unequal_code.ext_field.name == "GF(64)"
    assert unequal_code.degree == 2
    report = verify_mr(unequal_code, failure_cap=None)
    assert report.passed
    assert report.checked_sets == report.total_sets == 340


def test_update_past_the_global_rows_leaves_globals_alone(unequal_code: MrLrcCode) -> None:
    message = [1, 2, 3, 4, 5]
    codeword = encode(unequal_code, message)
    profile = unequal_code.profile
    assert profile.global_columns == range(9, 11)

    result = update_symbol(unequal_code, codeword, 0, 2, 7)
    assert result.touched == (0, 1, 2, 3, 4)
    assert result.codeword == encode(unequal_code, [1, 2, 7, 4, 5])
    changed = [c for c, (a, b) in enumerate(zip(codeword, result.codeword)) if a != b]
    assert not set(changed) & set(profile.global_columns)

    second = update_symbol(unequal_code, codeword, 1, 1, 0)
    assert second.touched == (5, 6, 7, 8, 10)
    assert second.codeword == encode(unequal_code, [1, 2, 3, 4, 0])


def test_zeroed_parities_break_recoverability(reference_code: MrLrcCode) -> None:
    broken = zero_parities(reference_code, 0)
    assert structure_violations(broken)
    report = verify_mr(broken, failure_cap=None)
    assert not report.passed
    assert report.failures
    assert all(len(colset) == 4 for colset in report.failures)


def test_structure_violation_is_reported(reference_code: MrLrcCode) -> None:
    f = reference_code.ext_field
    tampered = replace(
        reference_code,
        parities=(from_ints(f, [[1, 0], [0, 2]]), reference_code.parities[1]),
    )
    assert structure_violations(tampered) == ["P_0[1,1] = 2, expected 1"]


def test_builder_refusals(caplog: pytest.LogCaptureFixture) -> None:
    with pytest.raises(ProfileViolation):
        build_mr_lrc(build_profile(2, 3, [4, 4], [2, 2]), GF7)
    with pytest.raises(FieldTooSmall):
        build_mr_lrc(build_profile(2, 2, [4, 4], [2, 2]), make_field(5))
    profile = build_profile(2, 2, [4, 4], [2, 2])
    with pytest.raises(DegreeTooSmall):
        build_mr_lrc(profile, GF7, 1)
    with caplog.at_level(logging.WARNING, logger="coding.mrlrc"):
        code = build_mr_lrc(profile, GF7, 1, allow_below_bound=True)
    assert code.degree == 1
    assert any("below the degree bound" in record.message for record in caplog.records)


def test_encode_decode_single_local_erasure(reference_code: MrLrcCode) -> None:
    message = [1, 2, 3, 4]
    codeword = encode(reference_code, message)
    received: list[int | None] = [x.value for x in codeword]
    received[1] = None
    result = decode_erasures(reference_code, received)
    assert [x.value for x in result.message] == message
    assert result.codeword == codeword
    assert result.repaired_groups == (0,)
    assert not result.global_solve


def test_decode_falls_back_to_global_solve(reference_code: MrLrcCode) -> None:
    message = [6, 0, 5, 1]
    codeword = encode(reference_code, message)
    received: list[int | None] = [x.value for x in codeword]
    for column in (0, 1, 2):
        received[column] = None
    result = decode_erasures(reference_code, received)
    assert result.global_solve
    assert [x.value for x in result.message] == message


def test_decode_failures(reference_code: MrLrcCode) -> None:
    codeword = [x.value for x in encode(reference_code, [1, 1, 1, 1])]
    lost: list[int | None] = list(codeword)
    for column in (0, 1, 2, 3, 8, 9):
        lost[column] = None
    assert not erasure_pattern_recoverable(reference_code, [v is None for v in lost])
    with pytest.raises(Unrecoverable):
        decode_erasures(reference_code, lost)
    with pytest.raises(LengthMismatch):
        decode_erasures(reference_code, codeword[:-1])
    corrupted = list(codeword)
    corrupted[2] = reference_code.ext_field.add(corrupted[2], 1)
    with pytest.raises(InconsistentCodeword):
        decode_erasures(reference_code, corrupted)


def test_update_touches_only_the_row_support(reference_code: MrLrcCode) -> None:
    message = [1, 2, 3, 4]
    codeword = encode(reference_code, message)
    result = update_symbol(reference_code, codeword, 0, 0, 5)
    assert result.codeword == encode(reference_code, [5, 2, 3, 4])
    assert result.touched == (0, 1, 2, 3, 8)
    second = update_symbol(reference_code, codeword, 1, 1, 0)
    assert second.touched == (4, 5, 6, 7, 9)
    with pytest.raises(IndexOutOfRange):
        update_symbol(reference_code, codeword, 2, 0, 1)
    with pytest.raises(IndexOutOfRange):
        update_symbol(reference_code, codeword, 0, 2, 1)


def test_quadratic_form_maximum() -> None:
    assert qh((1, 1)) == 1
    assert qh((2, 0, 2)) == 8
    assert qh_max(3, 4) == 8
    for ell in range(1, 5):
        for h in range(0, 7):
            assert qh_max(ell, h) == qh_closed_form(ell, h)
    with pytest.raises(ProfileViolation):
        qh_max(0, 2)
