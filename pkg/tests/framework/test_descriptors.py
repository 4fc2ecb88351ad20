"""Descriptor document round trips and validation."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

import pytest
from pydantic import ValidationError

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from coding.completion import verify_nonvanishing
from coding.convmdp import ConvCode, build_diag
from coding.errors import CodingError
from coding.exactla import identity
from coding.gf import make_field
from coding.mrlrc import MrLrcCode, build_mr_lrc, build_profile
from framework import descriptors
from framework.descriptors import (
    DescriptorError,
    InvariantViolation,
    ParseError,
    ReportModel,
    SchemaViolation,
    descriptor_from_code,
    dump_descriptor,
    load_code,
    parse_descriptor,
    read_descriptor,
    write_descriptor,
)


@pytest.fixture(scope="module")
def mrlrc_code() -> MrLrcCode:
    return build_mr_lrc(build_profile(2, 2, [4, 4], [2, 2]), make_field(7))


@pytest.fixture(scope="module")
def conv_code() -> ConvCode:
    return build_diag(3, 2, make_field(5))


def _write_payload(path: Path, payload: dict[str, Any]) -> Path:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_error_hierarchy() -> None:
    for error in (ParseError, SchemaViolation, InvariantViolation):
        assert issubclass(error, DescriptorError)
        assert issubclass(error, CodingError)


def test_mrlrc_round_trip(tmp_path: Path, mrlrc_code: MrLrcCode) -> None:
    path = write_descriptor(mrlrc_code, tmp_path / "codes" / "mrlrc.json")
    assert path.exists()
    loaded = load_code(path, strict=True)
    assert isinstance(loaded, MrLrcCode)
    assert loaded.generator == mrlrc_code.generator
    assert loaded.alpha == mrlrc_code.alpha
    assert read_descriptor(path).kind == "mr-lrc"


def test_conv_round_trip(tmp_path: Path, conv_code: ConvCode) -> None:
    path = write_descriptor(descriptor_from_code(conv_code), tmp_path / "diag.json")
    loaded = load_code(path, strict=True)
    assert isinstance(loaded, ConvCode)
    assert loaded.coeffs == conv_code.coeffs
    assert loaded.construction == "diag"
    assert json.loads(dump_descriptor(read_descriptor(path)))["kind"] == "conv"


def test_load_code_builds_the_code_once(
    tmp_path: Path, conv_code: ConvCode, monkeypatch: pytest.MonkeyPatch
) -> None:
    path = write_descriptor(conv_code, tmp_path / "diag.json")
    calls: list[bool] = []
    original = descriptors.code_from_descriptor

    def counting(doc: Any, *, strict: bool = False) -> Any:
        calls.append(strict)
        return original(doc, strict=strict)

    monkeypatch.setattr(descriptors, "code_from_descriptor", counting)
    loaded = load_code(path, strict=True)
    assert loaded.coeffs == conv_code.coeffs
    assert calls == [True]


def test_matrices_carry_their_field(tmp_path: Path, conv_code: ConvCode) -> None:
    payload = descriptor_from_code(conv_code).model_dump(mode="json")
    assert payload["coeffs"][0]["field"] == {"p": 5, "m": 1, "modulus": [0, 1]}

    inherited = json.loads(json.dumps(payload))
    for block in inherited["coeffs"]:
        del block["field"]
    loaded = load_code(_write_payload(tmp_path / "inherited.json", inherited))
    assert loaded.coeffs == conv_code.coeffs

    foreign = json.loads(json.dumps(payload))
    foreign["coeffs"][1]["field"] = {"p": 7, "m": 1, "modulus": [0, 1]}
    with pytest.raises(InvariantViolation):
        read_descriptor(_write_payload(tmp_path / "foreign.json", foreign))


def test_parse_errors(tmp_path: Path) -> None:
    with pytest.raises(ParseError):
        read_descriptor(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        read_descriptor(broken)


def test_schema_violations(conv_code: ConvCode) -> None:
    payload = descriptor_from_code(conv_code).model_dump(mode="json")
    with pytest.raises(SchemaViolation):
        parse_descriptor(json.dumps({**payload, "unexpected": 1}))
    with pytest.raises(SchemaViolation):
        parse_descriptor(json.dumps({**payload, "kind": "block"}))
    non_monic = {**payload, "field": {"p": 5, "m": 1, "modulus": [0, 2]}}
    with pytest.raises(SchemaViolation):
        parse_descriptor(json.dumps(non_monic))
    ragged = dict(payload)
    ragged["coeffs"] = [{"rows": 2, "cols": 3, "entries": [[1, 2, 3], [1]]}]
    with pytest.raises(SchemaViolation):
        parse_descriptor(json.dumps(ragged))


def test_invariant_violations(tmp_path: Path, conv_code: ConvCode) -> None:
    payload = descriptor_from_code(conv_code).model_dump(mode="json")

    reducible = {**payload, "field": {"p": 2, "m": 2, "modulus": [1, 0, 1]}}
    with pytest.raises(InvariantViolation):
        read_descriptor(_write_payload(tmp_path / "reducible.json", reducible))

    outside = json.loads(json.dumps(payload))
    outside["coeffs"][0]["entries"][0][0] = 99
    with pytest.raises(InvariantViolation):
        read_descriptor(_write_payload(tmp_path / "outside.json", outside))

    wrong_degree = {**payload, "delta": 2}
    path = _write_payload(tmp_path / "degree.json", wrong_degree)
    assert read_descriptor(path).kind == "conv"
    with pytest.raises(InvariantViolation):
        read_descriptor(path, strict=True)


def test_strict_mode_checks_parity_layout(tmp_path: Path, mrlrc_code: MrLrcCode) -> None:
    payload = descriptor_from_code(mrlrc_code).model_dump(mode="json")
    payload["parities"][0]["entries"][1][1] = 2
    path = _write_payload(tmp_path / "tampered.json", payload)
    assert isinstance(load_code(path), MrLrcCode)
    with pytest.raises(InvariantViolation):
        load_code(path, strict=True)


def test_missing_blocks_are_invariant_violations(tmp_path: Path, mrlrc_code: MrLrcCode) -> None:
    payload = descriptor_from_code(mrlrc_code).model_dump(mode="json")
    payload["locals"] = payload["locals"][:1]
    with pytest.raises(InvariantViolation):
        read_descriptor(_write_payload(tmp_path / "short.json", payload))


def test_report_model_validation() -> None:
    f = make_field(7)
    report = verify_nonvanishing(identity(f, 2), [(0, 1)], label="toy")
    model = ReportModel.from_report(report)
    assert model.passed
    assert model.label == "toy"
    with pytest.raises(ValidationError):
        ReportModel(passed=True, total_sets=1, checked_sets=2)
