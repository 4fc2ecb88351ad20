"""Configuration helpers shared by the CLI, flows and the acceptance suite."""

from __future__ import annotations

import os
from collections.abc import Mapping, MutableMapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

REPO_ROOT = Path(__file__).resolve().parents[1]


@dataclass(frozen=True)
class StepDefaults:
    """Default enablement and options for a suite step."""

    enabled: bool = True
    options: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class StepExecutionConfig:
    """A single step entry of a mode as written in YAML."""

    name: str
    enabled_override: bool | None = None
    options: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ResolvedStepConfig:
    """Step configuration ready to be executed."""

    name: str
    enabled: bool
    options: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteConfig:
    """Step defaults plus the ordered step plan of each mode."""

    step_defaults: dict[str, StepDefaults]
    modes: dict[str, tuple[StepExecutionConfig, ...]]

    def steps_for_mode(self, mode: str) -> tuple[ResolvedStepConfig, ...]:
        if mode not in self.modes:
            raise KeyError(f"Mode '{mode}' is not defined in the suite configuration")
        resolved: list[ResolvedStepConfig] = []
        for entry in self.modes[mode]:
            defaults = self.step_defaults.get(entry.name, StepDefaults())
            enabled = defaults.enabled if entry.enabled_override is None else entry.enabled_override
            resolved.append(
                ResolvedStepConfig(
                    name=entry.name,
                    enabled=enabled,
                    options=_merge_options(defaults.options, entry.options),
                )
            )
        return tuple(resolved)


def _merge_options(
    defaults: Mapping[str, Any] | None, overrides: Mapping[str, Any] | None
) -> dict[str, Any]:
    merged: dict[str, Any] = {}
    if defaults:
        merged.update(defaults)
    if overrides:
        merged.update(overrides)
    return merged


def _normalize_step_entry(entry: Any) -> StepExecutionConfig:
    if isinstance(entry, str):
        return StepExecutionConfig(name=entry)
    if not isinstance(entry, Mapping):
        raise ValueError("Step entries must be strings or mappings")
    name = entry.get("name") or entry.get("step")
    if not name:
        raise ValueError("Step entries must declare a name")
    enabled = entry.get("enabled")
    return StepExecutionConfig(
        name=str(name),
        enabled_override=bool(enabled) if enabled is not None else None,
        options=dict(entry.get("options") or {}),
    )


def load_suite_config(path: str | Path) -> SuiteConfig:
    """Load an acceptance-suite plan from YAML."""

    raw = _load_yaml(Path(path))

    raw_defaults = raw.get("step_defaults", {})
    if not isinstance(raw_defaults, Mapping):
        raise ValueError("step_defaults must be a mapping")
    step_defaults: dict[str, StepDefaults] = {}
    for name, payload in raw_defaults.items():
        if payload is None:
            step_defaults[name] = StepDefaults()
            continue
        if not isinstance(payload, Mapping):
            raise ValueError(f"step_defaults entry for {name} must be a mapping")
        enabled = payload.get("enabled")
        step_defaults[name] = StepDefaults(
            enabled=bool(enabled) if enabled is not None else True,
            options=dict(payload.get("options") or {}),
        )

    raw_modes = raw.get("modes", {})
    if not isinstance(raw_modes, Mapping):
        raise ValueError("modes must be a mapping")
    modes: dict[str, tuple[StepExecutionConfig, ...]] = {}
    for mode_name, entries in raw_modes.items():
        if entries is None:
            modes[mode_name] = ()
            continue
        if not isinstance(entries, Sequence) or isinstance(entries, (str, bytes)):
            raise ValueError(f"Mode '{mode_name}' must be a sequence of step entries")
        modes[mode_name] = tuple(_normalize_step_entry(entry) for entry in entries)

    return SuiteConfig(step_defaults=step_defaults, modes=modes)


def _load_yaml(path: Path) -> MutableMapping[str, Any]:
    with path.open("r", encoding="utf-8") as handle:
        content = yaml.safe_load(handle) or {}
    if not isinstance(content, MutableMapping):
        raise ValueError(f"Configuration file {path} must contain a mapping at the root")
    return content


def default_config_path() -> Path:
    override = os.getenv("CODING_CONFIG")
    return Path(override) if override else REPO_ROOT / "config.yaml"


@lru_cache(maxsize=8)
def _load_app_config(path: Path) -> Mapping[str, Any]:
    if not path.exists():
        return {}
    return dict(_load_yaml(path))


def get_config_section(
    section: str,
    profile: str | None = None,
    *,
    config: Mapping[str, Any] | None = None,
    config_path: str | Path | None = None,
) -> dict[str, Any]:
    """Return a section's defaults merged with the overrides of ``profile``.

    Parameters
    ----------
    section:
        Top-level key within the configuration file.
    profile:
        Name of an override block (for example ``"exhaustive"``). ``None`` or an
        unknown name returns the defaults.
    config:
        Pre-loaded configuration mapping; ``config_path`` is ignored when given.
    config_path:
        Optional configuration file. Defaults to ``$CODING_CONFIG`` or the
        repository's ``config.yaml``.
    """

    if config is None:
        resolved = Path(config_path) if config_path is not None else default_config_path()
        config = _load_app_config(resolved)

    section_payload = config.get(section, {}) if config else {}
    if not isinstance(section_payload, Mapping):
        raise ValueError(f"Section '{section}' must be a mapping in the configuration")

    defaults = dict(section_payload.get("defaults") or {})
    overrides = section_payload.get("overrides") or {}
    if profile is None or not overrides:
        return defaults
    if not isinstance(overrides, Mapping):
        raise ValueError(f"Overrides for section '{section}' must be a mapping")

    override_payload = overrides.get(profile)
    if override_payload and isinstance(override_payload, Mapping):
        defaults.update(override_payload)
    return defaults


__all__ = [
    "REPO_ROOT",
    "ResolvedStepConfig",
    "StepDefaults",
    "StepExecutionConfig",
    "SuiteConfig",
    "default_config_path",
    "get_config_section",
    "load_suite_config",
]
