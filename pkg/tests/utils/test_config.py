"""Regression tests for the shared configuration helpers."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parents[2]))

from utils.config import (
    REPO_ROOT,
    ResolvedStepConfig,
    SuiteConfig,
    default_config_path,
    get_config_section,
    load_suite_config,
)


def test_load_suite_config_parses_defaults(tmp_path: Path) -> None:
    config_path = tmp_path / "suite.yaml"
    config_path.write_text(
        """
step_defaults:
  alpha:
    enabled: true
    options:
      q: 7
  beta:
    enabled: false
    options:
      q: 5
modes:
  quick:
    - name: alpha
    - name: beta
      enabled: true
      options:
        n: 4
    - gamma
""",
        encoding="utf-8",
    )

    config = load_suite_config(config_path)
    assert isinstance(config, SuiteConfig)
    assert config.steps_for_mode("quick") == (
        ResolvedStepConfig(name="alpha", enabled=True, options={"q": 7}),
        ResolvedStepConfig(name="beta", enabled=True, options={"q": 5, "n": 4}),
        ResolvedStepConfig(name="gamma", enabled=True, options={}),
    )
    with pytest.raises(KeyError):
        config.steps_for_mode("missing")


def test_load_suite_config_rejects_bad_entries(tmp_path: Path) -> None:
    config_path = tmp_path / "suite.yaml"
    config_path.write_text("modes:\n  quick:\n    - 3\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_suite_config(config_path)


def test_get_config_section_supports_profiles(tmp_path: Path) -> None:
    config_path = tmp_path / "config.yaml"
    config_path.write_text(
        """
verification:
  defaults:
    failure_cap: 16
    threads: 1
  overrides:
    exhaustive:
      failure_cap: null
      threads: 4
""",
        encoding="utf-8",
    )

    defaults = get_config_section("verification", config_path=config_path)
    assert defaults == {"failure_cap": 16, "threads": 1}

    override = get_config_section("verification", "exhaustive", config_path=config_path)
    assert override == {"failure_cap": None, "threads": 4}

    unknown = get_config_section("verification", "desk", config_path=config_path)
    assert unknown == defaults
    assert get_config_section("missing", config_path=config_path) == {}


def test_get_config_section_accepts_preloaded_mapping() -> None:
    config = {"coldist": {"defaults": {"max_evaluations": 10}, "overrides": {"desk": {}}}}
    assert get_config_section("coldist", "desk", config=config) == {"max_evaluations": 10}


def test_repository_config_declares_sections() -> None:
    path = REPO_ROOT / "config.yaml"
    for section in ("verification", "coldist", "search"):
        assert get_config_section(section, config_path=path)
    assert get_config_section("coldist", config_path=path)["max_evaluations"] == 10**8


def test_default_config_path_honours_environment(
    monkeypatch: pytest.MonkeyPatch, tmp_path: Path
) -> None:
    monkeypatch.delenv("CODING_CONFIG", raising=False)
    assert default_config_path() == REPO_ROOT / "config.yaml"
    monkeypatch.setenv("CODING_CONFIG", str(tmp_path / "other.yaml"))
    assert default_config_path() == tmp_path / "other.yaml"
