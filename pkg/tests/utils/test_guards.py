"""Skip and budget guard tests."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from coding.errors import FieldTooSmall, TooLarge
from utils.guards import SkipStep, ensure_within_budget, skip_on_refusal


def test_refusals_become_skips(caplog: pytest.LogCaptureFixture) -> None:
    @skip_on_refusal
    def builder(q: int) -> int:
        if q < 5:
            raise FieldTooSmall(f"q={q}")
        return q

    assert builder(7) == 7
    with caplog.at_level(logging.WARNING, logger="utils.guards"):
        with pytest.raises(SkipStep, match="FieldTooSmall: q=3"):
            builder(3)
    assert any("refused its parameters" in message for message in caplog.messages)


def test_other_errors_propagate() -> None:
    @skip_on_refusal(refusals=(KeyError,))
    def builder() -> None:
        raise ValueError("boom")

    with pytest.raises(ValueError):
        builder()


def test_budget_guard() -> None:
    assert ensure_within_budget(10, 10) == 10
    with pytest.raises(TooLarge, match="column distance"):
        ensure_within_budget(11, 10, "column distance")
