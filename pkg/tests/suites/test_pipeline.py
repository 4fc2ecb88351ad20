"""Acceptance suite pipeline tests."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from suites.acceptance.pipeline import (
    STEP_REGISTRY,
    AcceptanceSuite,
    StepDefaults,
    StepExecutionConfig,
    SuiteConfig,
    SuiteExecutionError,
    SuiteRuntime,
    SuiteStep,
    load_suite_config,
    main,
    run_char2_exclusion,
    run_mrlrc_reference,
    run_noncatastrophic,
    run_qh_oracle,
    smallest_prime_power,
    suite_passed,
)
from utils.guards import SkipStep


def _config(*names: str, disabled: tuple[str, ...] = ()) -> SuiteConfig:
    return SuiteConfig(
        step_defaults={name: StepDefaults(enabled=name not in disabled) for name in names},
        modes={"quick": tuple(StepExecutionConfig(name=name) for name in names)},
    )


def test_suite_logs_and_skips_steps(caplog: pytest.LogCaptureFixture) -> None:
    triggered: list[str] = []

    def _skip_runner(*_: object, **__: object) -> dict[str, str]:
        raise SkipStep("field too small")

    def _ok_runner(*_: object, **__: object) -> dict[str, str]:
        triggered.append("ok")
        return {"detail": "ran"}

    suite = AcceptanceSuite(
        config=_config("skip", "ok"),
        registry={
            "skip": SuiteStep(name="skip", description="Skip", runner=_skip_runner),
            "ok": SuiteStep(name="ok", description="OK", runner=_ok_runner),
        },
    )

    with caplog.at_level(logging.INFO):
        results = suite.run(SuiteRuntime(mode="quick"))

    assert results["skip"] == {"status": "skipped", "reason": "field too small"}
    assert results["ok"] == {"detail": "ran", "status": "passed"}
    assert triggered == ["ok"]
    assert suite_passed(results)
    assert any("field too small" in record.message for record in caplog.records)


def test_disabled_unknown_and_failing_steps() -> None:
    def _boom(*_: object, **__: object) -> dict[str, str]:
        raise RuntimeError("boom")

    registry = {
        "off": SuiteStep(name="off", description="", runner=_boom),
        "boom": SuiteStep(name="boom", description="", runner=_boom),
    }
    config = _config("off", "ghost", "boom", disabled=("off",))
    suite = AcceptanceSuite(config=config, registry=registry)
    results = suite.run(SuiteRuntime(mode="quick"))
    assert results["off"]["status"] == "skipped"
    assert results["ghost"]["status"] == "error"
    assert results["boom"] == {"status": "error", "error": "boom"}
    assert not suite_passed(results)

    with pytest.raises(SuiteExecutionError):
        suite.run(SuiteRuntime(mode="quick", fail_fast=True))


def test_shipped_config_covers_the_registry() -> None:
    config = load_suite_config()
    for mode in ("quick", "full"):
        names = {step.name for step in config.steps_for_mode(mode)}
        assert names == set(STEP_REGISTRY)
    quick = {step.name: step for step in config.steps_for_mode("quick")}
    assert not quick["vdm3"].enabled
    assert quick["char2_exclusion"].options["orders"] == [2, 4]
    assert quick["mrlrc_reference"].options["expected_sets"] == 160


@pytest.mark.parametrize(("at_least", "expected"), [(1, 2), (4, 4), (6, 7), (9, 9), (10, 11)])
def test_smallest_prime_power(at_least: int, expected: int) -> None:
    assert smallest_prime_power(at_least) == expected


def test_reference_step_counts_admissible_sets() -> None:
    result = run_mrlrc_reference(SuiteRuntime(mode="quick"), {"expected_sets": 160})
    assert result["status"] == "passed"
    assert result["field"] == "GF(49)"
    assert result["report"]["total_sets"] == 160


def test_reference_step_flags_wrong_set_count() -> None:
    result = run_mrlrc_reference(SuiteRuntime(mode="quick"), {"expected_sets": 216})
    assert result["status"] == "failed"


def test_small_steps_pass() -> None:
    runtime = SuiteRuntime(mode="quick")
    assert run_qh_oracle(runtime, {"max_ell": 4, "max_h": 6})["status"] == "passed"
    char2 = run_char2_exclusion(runtime, {"orders": [2, 4], "expect_no_z": [2]})
    assert char2["status"] == "passed"
    assert char2["orders"][0]["valid_z"] is None
    noncat = run_noncatastrophic(runtime, {})
    assert noncat["status"] == "passed"
    assert noncat["counterexample_left_prime"] is False


def test_main_runs_a_configured_mode(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config_path = tmp_path / "suite.yaml"
    config_path.write_text(
        """
step_defaults:
  qh_oracle:
    options:
      max_ell: 3
      max_h: 4
modes:
  quick:
    - name: qh_oracle
""",
        encoding="utf-8",
    )
    assert main(["--mode", "quick", "--config", str(config_path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["qh_oracle"]["status"] == "passed"


def test_quick_mode_passes() -> None:
    results = AcceptanceSuite(config=load_suite_config()).run(SuiteRuntime(mode="quick"))
    failing = {name: r for name, r in results.items() if r["status"] not in {"passed", "skipped"}}
    assert failing == {}
