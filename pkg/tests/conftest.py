from __future__ import annotations

import sys
from collections.abc import Iterator
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from utils import config as app_config  # noqa: E402


@pytest.fixture(autouse=True)
def _repository_config(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    monkeypatch.delenv("CODING_CONFIG", raising=False)
    app_config._load_app_config.cache_clear()
    yield
    app_config._load_app_config.cache_clear()
