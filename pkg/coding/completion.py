"""Non-trivial full-size minor verification.

A filled matrix passes when every minor selected by a family-specific
enumerator of non-trivial column sets is nonzero. Tie-free zero patterns get a
generic enumerator based on perfect matchings of the free-support bipartite
graph.
"""

from __future__ import annotations

import logging
import os
import time
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from coding.errors import (
    BadSetSize,
    DimensionMismatch,
    IndexOutOfRange,
    ParameterViolation,
    TiesUnsupported,
)
from coding.exactla import MatrixOverField, columns_minor_value
from observability.otel import init_tracing

logger = logging.getLogger(__name__)
_TRACER = init_tracing("coding-completion")

DEFAULT_FAILURE_CAP = 16
DEFAULT_THREADS = int(os.getenv("CODING_THREADS", "1"))

ColumnSet = tuple[int, ...]
Cell = tuple[int, int]


@dataclass(frozen=True)
class SupportPattern:
    """Zero/free structure of a ``rows x cols`` matrix plus optional equality ties."""

    rows: int
    cols: int
    free: tuple[tuple[bool, ...], ...]
    ties: frozenset[tuple[Cell, Cell]] = frozenset()

    def __post_init__(self) -> None:
        if len(self.free) != self.rows or any(len(line) != self.cols for line in self.free):
            raise DimensionMismatch(f"support grid is not {self.rows}x{self.cols}")
        for pair in self.ties:
            for i, j in pair:
                if not (0 <= i < self.rows and 0 <= j < self.cols):
                    raise IndexOutOfRange(f"tie cell {(i, j)} outside the pattern")

    @classmethod
    def all_free(cls, rows: int, cols: int) -> SupportPattern:
        return cls(rows, cols, tuple(tuple(True for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def from_matrix(cls, m: MatrixOverField) -> SupportPattern:
        """Pattern whose free cells are the nonzero entries of ``m``."""

        return cls(
            m.rows,
            m.cols,
            tuple(tuple(bool(v) for v in m.row(i)) for i in range(m.rows)),
        )

    @property
    def zero_cells(self) -> list[Cell]:
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if not self.free[i][j]]


@dataclass
class VerificationReport:
    """Outcome of a non-trivial minor sweep."""

    passed: bool
    total_sets: int
    checked_sets: int
    failures: list[ColumnSet] = field(default_factory=list)
    elapsed_ms: float = 0.0
    label: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    def summary(self) -> str:
        status = "passed" if self.passed else "failed"
        line = f"{status}, {self.checked_sets}/{self.total_sets} minors"
        if self.label:
            line = f"{self.label}: {line}"
        return line

    def merge(self, other: VerificationReport) -> VerificationReport:
        """Conjunction of two sweeps; counts add up and failures concatenate."""

        return VerificationReport(
            passed=self.passed and other.passed,
            total_sets=self.total_sets + other.total_sets,
            checked_sets=self.checked_sets + other.checked_sets,
            failures=sorted(self.failures + other.failures),
            elapsed_ms=self.elapsed_ms + other.elapsed_ms,
            label=self.label or other.label,
            details={**other.details, **self.details},
        )

    def as_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "passed": self.passed,
            "total_sets": self.total_sets,
            "checked_sets": self.checked_sets,
            "failures": [list(colset) for colset in self.failures],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.label:
            payload["label"] = self.label
        if self.details:
            payload["details"] = self.details
        return payload


def all_column_sets(cols: int, size: int) -> Iterator[ColumnSet]:
    """Every ``size``-subset of ``range(cols)`` in ascending lexicographic order."""

    yield from combinations(range(cols), size)


def count_sets(sets: Iterable[ColumnSet]) -> int:
    return sum(1 for _ in sets)


def _validate_sets(sets: Iterable[Sequence[int]], rows: int, cols: int) -> list[ColumnSet]:
    validated: list[ColumnSet] = []
    for raw in sets:
        colset = tuple(int(c) for c in raw)
        if len(colset) != rows:
            raise BadSetSize(f"column set {colset} does not have {rows} entries")
        if any(not 0 <= c < cols for c in colset):
            raise BadSetSize(f"column set {colset} leaves 0..{cols - 1}")
        if any(a >= b for a, b in zip(colset, colset[1:])):
            raise BadSetSize(f"column set {colset} is not strictly increasing")
        validated.append(colset)
    return validated


def _scan(
    m: MatrixOverField, chunk: Sequence[ColumnSet], offset: int, cap: int | None
) -> list[int]:
    vanishing: list[int] = []
    for position, colset in enumerate(chunk):
        if not columns_minor_value(m, colset):
            vanishing.append(offset + position)
            if cap is not None and len(vanishing) >= cap:
                break
    return vanishing


def verify_nonvanishing(
    m: MatrixOverField,
    sets: Iterable[Sequence[int]],
    failure_cap: int | None = DEFAULT_FAILURE_CAP,
    *,
    threads: int | None = None,
    label: str = "",
) -> VerificationReport:
    """Check that every listed full-row minor of ``m`` is nonzero.

    Parameters
    ----------
    m:
        Filled ``K x N`` matrix.
    sets:
        Sorted ``K``-column index sets, usually from a family enumerator.
    failure_cap:
        Stop after this many vanishing minors; ``None`` sweeps everything.
    threads:
        Worker count; the report is identical for every value.
    label:
        Optional name carried into the report.

    Raises
    ------
    BadSetSize
        If a set has the wrong size, is unsorted or leaves the column range.
    """

    workers = max(int(threads if threads is not None else DEFAULT_THREADS), 1)
    cap = failure_cap if failure_cap is not None and failure_cap > 0 else None
    ordered = _validate_sets(sets, m.rows, m.cols)
    total = len(ordered)
    start = time.perf_counter()
    with _TRACER.start_as_current_span("verify_nonvanishing") as span:
        span.set_attribute("rows", m.rows)
        span.set_attribute("cols", m.cols)
        span.set_attribute("sets", total)
        span.set_attribute("field_order", m.field.order)
        logger.info(
            "Sweeping %d minors of a %dx%d matrix over %s", total, m.rows, m.cols, m.field.name
        )
        if workers == 1 or total < 2 * workers:
            vanishing = _scan(m, ordered, 0, cap)
        else:
            size = -(-total // workers)
            chunks = [(ordered[i : i + size], i) for i in range(0, total, size)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(lambda item: _scan(m, item[0], item[1], cap), chunks)
                vanishing = sorted(index for part in parts for index in part)
        if cap is not None and len(vanishing) >= cap:
            vanishing = vanishing[:cap]
            checked = vanishing[-1] + 1
        else:
            checked = total
        failures = [ordered[index] for index in vanishing]
        passed = not failures and checked == total
        span.set_attribute("passed", passed)
    elapsed = (time.perf_counter() - start) * 1000.0
    report = VerificationReport(
        passed=passed,
        total_sets=total,
        checked_sets=checked,
        failures=failures,
        elapsed_ms=elapsed,
        label=label,
    )
    logger.info("%s in %.1f ms", report.summary(), elapsed)
    for colset in failures:
        logger.debug("Vanishing minor on columns %s", colset)
    return report


def has_perfect_matching(pattern: SupportPattern, colset: Sequence[int]) -> bool:
    """True iff the rows can be matched to ``colset`` through free cells."""

    if len(colset) != pattern.rows:
        raise BadSetSize(f"column set {tuple(colset)} does not have {pattern.rows} entries")
    block = np.array(
        [[pattern.free[i][j] for j in colset] for i in range(pattern.rows)], dtype=np.int8
    )
    if not block.any(axis=1).all() or not block.any(axis=0).all():
        return False
    matched = maximum_bipartite_matching(csr_matrix(block), perm_type="column")
    return bool((matched >= 0).all())


def zero_pattern_nontrivial_sets(pattern: SupportPattern) -> Iterator[ColumnSet]:
    """K-column sets whose patterned minor has a surviving permutation term.

    Raises
    ------
    TiesUnsupported
        If the pattern carries tie constraints.
    """

    if pattern.ties:
        raise TiesUnsupported("matching-based triviality only handles pure zero patterns")
    usable = [
        j for j in range(pattern.cols) if any(pattern.free[i][j] for i in range(pattern.rows))
    ]
    for colset in combinations(usable, pattern.rows):
        if has_perfect_matching(pattern, colset):
            yield colset


@dataclass(frozen=True)
class DegreeInstance:
    """Matrix built at one extension degree plus its non-trivial column sets."""

    matrix: MatrixOverField
    sets: Callable[[], Iterable[Sequence[int]]] | Iterable[Sequence[int]]

    def column_sets(self) -> Iterable[Sequence[int]]:
        return self.sets() if callable(self.sets) else self.sets


@dataclass
class DegreeSearchResult:
    smallest: int | None
    reports: dict[int, VerificationReport]

    def as_dict(self) -> dict[str, Any]:
        return {
            "smallest": self.smallest,
            "reports": {str(d): report.as_dict() for d, report in self.reports.items()},
        }


def minimal_degree_search(
    builder: Callable[[int], DegreeInstance],
    d_lo: int,
    d_hi: int,
    *,
    failure_cap: int | None = 1,
    threads: int | None = None,
) -> DegreeSearchResult:
    """Smallest extension degree in ``[d_lo, d_hi]`` whose build passes the sweep.

    Every degree in the range is evaluated so the reports document the whole
    window; builder errors propagate.
    """

    if d_lo > d_hi:
        raise ParameterViolation(f"empty degree window [{d_lo}, {d_hi}]")
    reports: dict[int, VerificationReport] = {}
    smallest: int | None = None
    with _TRACER.start_as_current_span("minimal_degree_search") as span:
        span.set_attribute("d_lo", d_lo)
        span.set_attribute("d_hi", d_hi)
        for d in range(d_lo, d_hi + 1):
            instance = builder(d)
            report = verify_nonvanishing(
                instance.matrix,
                instance.column_sets(),
                failure_cap,
                threads=threads,
                label=f"d={d}",
            )
            reports[d] = report
            if report.passed and smallest is None:
                smallest = d
        span.set_attribute("smallest", -1 if smallest is None else smallest)
    logger.info("Degree search over [%d, %d]: smallest passing d = %s", d_lo, d_hi, smallest)
    return DegreeSearchResult(smallest=smallest, reports=reports)


__all__ = [
    "DEFAULT_FAILURE_CAP",
    "DegreeInstance",
    "DegreeSearchResult",
    "SupportPattern",
    "VerificationReport",
    "all_column_sets",
    "count_sets",
    "has_perfect_matching",
    "minimal_degree_search",
    "verify_nonvanishing",
    "zero_pattern_nontrivial_sets",
]
