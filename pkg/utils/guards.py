"""Helper utilities for flow control and exhaustive-search budgets."""

from __future__ import annotations

import logging
import os
from collections.abc import Callable
from functools import wraps
from typing import ParamSpec, TypeVar

from coding.errors import CodingError, TooLarge

logger = logging.getLogger(__name__)

P = ParamSpec("P")
R = TypeVar("R")

DEFAULT_EVALUATION_BUDGET = int(os.getenv("CODING_MAX_EVALUATIONS", str(10**8)))


class SkipStep(RuntimeError):
    """Raised by flows when a step should be skipped without failing the pipeline."""


def skip_on_refusal(
    func: Callable[P, R] | None = None,
    *,
    refusals: tuple[type[BaseException], ...] = (CodingError,),
) -> Callable[[Callable[P, R]], Callable[P, R]] | Callable[P, R]:
    """Turn parameter refusals of the decorated builder into :class:`SkipStep`."""

    def decorator(target: Callable[P, R]) -> Callable[P, R]:
        @wraps(target)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            try:
                return target(*args, **kwargs)
            except SkipStep:
                raise
            except refusals as exc:
                logger.warning("%s refused its parameters: %s", target.__name__, exc)
                raise SkipStep(f"{type(exc).__name__}: {exc}") from exc

        return wrapper

    if func is not None:
        return decorator(func)
    return decorator


def ensure_within_budget(
    evaluations: int, budget: int | None = None, label: str = "search"
) -> int:
    """Raise :class:`TooLarge` when ``evaluations`` exceeds ``budget``."""

    limit = DEFAULT_EVALUATION_BUDGET if budget is None else int(budget)
    if evaluations > limit:
        raise TooLarge(f"{label} needs {evaluations} evaluations, budget is {limit}")
    logger.debug("%s within budget: %d <= %d", label, evaluations, limit)
    return evaluations


__all__ = ["DEFAULT_EVALUATION_BUDGET", "SkipStep", "ensure_within_budget", "skip_on_refusal"]
