"""Dense exact linear algebra over a :class:`~coding.gf.FieldConfig`.

Matrices hold canonical element encodings row-major; every routine routes its
arithmetic through the owning field so results are exact.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations

from coding.errors import (
    DimensionMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NotSorted,
    NotSquare,
    RepeatedPoint,
    TooManyRows,
)
from coding.gf import FieldConfig, FieldElement, embed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatrixOverField:
    """Immutable ``rows x cols`` matrix over ``field``."""

    field: FieldConfig
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        order = self.field.order
        if any(not 0 <= value < order for value in self.entries):
            raise FieldMismatch(f"matrix entries outside {self.field.name}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def value(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def at(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.value(i, j))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_ints(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        return f"MatrixOverField({self.field.name}, {self.to_ints()})"


def from_ints(field: FieldConfig, grid: Sequence[Sequence[int | FieldElement]]) -> MatrixOverField:
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    flat: list[int] = []
    for line in grid:
        if len(line) != cols:
            raise DimensionMismatch("ragged rows")
        for entry in line:
            if isinstance(entry, FieldElement):
                if entry.field != field:
                    raise FieldMismatch(f"{entry.field.name} vs {field.name}")
                flat.append(entry.value)
            else:
                flat.append(int(entry))
    return MatrixOverField(field, rows, cols, tuple(flat))


def zeros(field: FieldConfig, rows: int, cols: int) -> MatrixOverField:
    return MatrixOverField(field, rows, cols, (0,) * (rows * cols))


def identity(field: FieldConfig, size: int) -> MatrixOverField:
    return MatrixOverField(
        field, size, size, tuple(1 if i == j else 0 for i in range(size) for j in range(size))
    )


def transpose(m: MatrixOverField) -> MatrixOverField:
    return MatrixOverField(
        m.field, m.cols, m.rows, tuple(m.value(i, j) for j in range(m.cols) for i in range(m.rows))
    )


def matmul(a: MatrixOverField, b: MatrixOverField) -> MatrixOverField:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} vs {b.field.name}")
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    f = a.field
    out: list[int] = []
    for i in range(a.rows):
        row = a.row(i)
        for j in range(b.cols):
            acc = 0
            for t, left in enumerate(row):
                if left:
                    acc = f.add(acc, f.mul(left, b.value(t, j)))
            out.append(acc)
    return MatrixOverField(f, a.rows, b.cols, tuple(out))


def add(a: MatrixOverField, b: MatrixOverField) -> MatrixOverField:
    if a.shape != b.shape or a.field != b.field:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    f = a.field
    summed = tuple(f.add(x, y) for x, y in zip(a.entries, b.entries))
    return MatrixOverField(f, a.rows, a.cols, summed)


def vector_times(vector: Sequence[int], m: MatrixOverField) -> list[int]:
    """Row vector (encodings) times matrix."""

    if len(vector) != m.rows:
        raise DimensionMismatch(f"vector of length {len(vector)} against {m.rows} rows")
    f = m.field
    out = [0] * m.cols
    for i, coeff in enumerate(vector):
        if not coeff:
            continue
        for j, entry in enumerate(m.row(i)):
            if entry:
                out[j] = f.add(out[j], f.mul(coeff, entry))
    return out


def hstack(blocks: Sequence[MatrixOverField]) -> MatrixOverField:
    field = blocks[0].field
    rows = blocks[0].rows
    if any(b.rows != rows or b.field != field for b in blocks):
        raise DimensionMismatch("hstack blocks must share row count and field")
    flat = tuple(v for i in range(rows) for b in blocks for v in b.row(i))
    return MatrixOverField(field, rows, sum(b.cols for b in blocks), flat)


def vstack(blocks: Sequence[MatrixOverField]) -> MatrixOverField:
    field = blocks[0].field
    cols = blocks[0].cols
    if any(b.cols != cols or b.field != field for b in blocks):
        raise DimensionMismatch("vstack blocks must share column count and field")
    flat = tuple(v for b in blocks for v in b.entries)
    return MatrixOverField(field, sum(b.rows for b in blocks), cols, flat)


def scale_rows(m: MatrixOverField, factors: Sequence[int | FieldElement]) -> MatrixOverField:
    if len(factors) != m.rows:
        raise DimensionMismatch("one factor per row is required")
    f = m.field
    flat = tuple(
        f.mul(int(factors[i]), v) for i in range(m.rows) for v in m.row(i)
    )
    return MatrixOverField(f, m.rows, m.cols, flat)


def embed_matrix(m: MatrixOverField, target: FieldConfig) -> MatrixOverField:
    """Entry-wise :func:`~coding.gf.embed` into an extension field."""

    if m.field == target:
        return m
    images: dict[int, int] = {}
    flat = []
    for value in m.entries:
        if value not in images:
            images[value] = embed(FieldElement(m.field, value), target).value
        flat.append(images[value])
    return MatrixOverField(target, m.rows, m.cols, tuple(flat))


def _check_indices(indices: Sequence[int], bound: int, label: str) -> None:
    for position, index in enumerate(indices):
        if not 0 <= index < bound:
            raise IndexOutOfRange(f"{label} index {index} outside 0..{bound - 1}")
        if position and indices[position - 1] >= index:
            raise NotSorted(f"{label} indices {list(indices)} are not strictly increasing")


def submatrix(
    m: MatrixOverField, rowset: Sequence[int] | None, colset: Sequence[int] | None
) -> MatrixOverField:
    """Select rows and columns; ``None`` keeps every index."""

    rowset = range(m.rows) if rowset is None else rowset
    colset = range(m.cols) if colset is None else colset
    _check_indices(rowset, m.rows, "row")
    _check_indices(colset, m.cols, "column")
    flat = tuple(m.value(i, j) for i in rowset for j in colset)
    return MatrixOverField(m.field, len(rowset), len(colset), flat)


def det(m: MatrixOverField) -> FieldElement:
    """Determinant by Gaussian elimination.

    Raises
    ------
    NotSquare
        If the matrix is not square.
    """

    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    return FieldElement(m.field, _det_value(m.field, [list(m.row(i)) for i in range(m.rows)]))


def _det_value(f: FieldConfig, a: list[list[int]]) -> int:
    size = len(a)
    result = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = f.neg(result)
        lead = a[col][col]
        result = f.mul(result, lead)
        inv = f.inv(lead)
        for r in range(col + 1, size):
            if a[r][col]:
                factor = f.mul(a[r][col], inv)
                row, top = a[r], a[col]
                for c in range(col, size):
                    if top[c]:
                        row[c] = f.sub(row[c], f.mul(factor, top[c]))
    return result


def minor(m: MatrixOverField, rowset: Sequence[int] | None, colset: Sequence[int]) -> FieldElement:
    return det(submatrix(m, rowset, colset))


def columns_minor_value(m: MatrixOverField, colset: Sequence[int]) -> int:
    """Full-row minor on ``colset`` without index validation (hot path of sweeps)."""

    return _det_value(m.field, [[m.entries[i * m.cols + j] for j in colset] for i in range(m.rows)])


def cofactor_det(m: MatrixOverField) -> FieldElement:
    """Determinant by permutation expansion; an independent oracle for small sizes."""

    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    f = m.field
    acc = 0
    for perm in permutations(range(m.rows)):
        term = 1
        for i, j in enumerate(perm):
            term = f.mul(term, m.value(i, j))
            if not term:
                break
        if not term:
            continue
        inversions = sum(
            1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b]
        )
        acc = f.sub(acc, term) if inversions % 2 else f.add(acc, term)
    return FieldElement(f, acc)


class SolveStatus(str, Enum):
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveResult:
    rank: int
    status: SolveStatus | None
    solution: MatrixOverField | None = None


def _rref(f: FieldConfig, a: list[list[int]], pivot_cols: int) -> list[int]:
    """In-place reduced row echelon form, pivoting only on the first ``pivot_cols`` columns."""

    pivots: list[int] = []
    rank = 0
    width = len(a[0]) if a else 0
    for col in range(pivot_cols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = f.inv(a[rank][col])
        a[rank] = [f.mul(inv, v) for v in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                factor = a[r][col]
                a[r] = [f.sub(a[r][c], f.mul(factor, a[rank][c])) for c in range(width)]
        pivots.append(col)
        rank += 1
        if rank == len(a):
            break
    return pivots


def rank(m: MatrixOverField) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.field, [list(m.row(i)) for i in range(m.rows)], m.cols))


def rank_and_solve(a: MatrixOverField, rhs: MatrixOverField | None = None) -> SolveResult:
    """Rank of ``a`` and, with a right-hand side, the unique solution of ``a x = rhs``.

    Parameters
    ----------
    a:
        Coefficient matrix.
    rhs:
        Optional right-hand side with ``a.rows`` rows.

    Returns
    -------
    SolveResult
        ``status`` is ``None`` without a right-hand side; otherwise ``UNIQUE`` carries
        the solution, ``UNDERDETERMINED`` and ``INCONSISTENT`` carry none.

    Raises
    ------
    DimensionMismatch
        If ``rhs`` does not have ``a.rows`` rows.
    """

    if rhs is None:
        return SolveResult(rank=rank(a), status=None)
    if rhs.rows != a.rows:
        raise DimensionMismatch(f"rhs has {rhs.rows} rows, matrix has {a.rows}")
    if a.field != rhs.field:
        raise FieldMismatch(f"{a.field.name} vs {rhs.field.name}")
    f = a.field
    augmented = [list(a.row(i)) + list(rhs.row(i)) for i in range(a.rows)]
    pivots = _rref(f, augmented, a.cols) if augmented else []
    rank_a = len(pivots)
    for r in range(rank_a, a.rows):
        if any(augmented[r][a.cols :]):
            return SolveResult(rank=rank_a, status=SolveStatus.INCONSISTENT)
    if rank_a < a.cols:
        return SolveResult(rank=rank_a, status=SolveStatus.UNDERDETERMINED)
    solution = tuple(augmented[r][a.cols + c] for r in range(a.cols) for c in range(rhs.cols))
    return SolveResult(
        rank=rank_a,
        status=SolveStatus.UNIQUE,
        solution=MatrixOverField(f, a.cols, rhs.cols, solution),
    )


def nullspace(m: MatrixOverField) -> MatrixOverField:
    """Basis of ``{x : m x = 0}`` as the rows of the returned matrix.

    Each basis vector sets one free variable to 1 and the others to 0, so a
    systematic ``[I | A]`` yields ``[-A^T | I]``.
    """

    f = m.field
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref(f, a, m.cols) if a else []
    free = [c for c in range(m.cols) if c not in pivots]
    basis: list[int] = []
    for var in free:
        vector = [0] * m.cols
        vector[var] = 1
        for r, pc in enumerate(pivots):
            vector[pc] = f.neg(a[r][var])
        basis.extend(vector)
    return MatrixOverField(f, len(free), m.cols, tuple(basis))


def _as_values(field: FieldConfig, points: Iterable[int | FieldElement]) -> list[int]:
    values = []
    for point in points:
        if isinstance(point, FieldElement):
            if point.field != field:
                raise FieldMismatch(f"{point.field.name} vs {field.name}")
            values.append(point.value)
        else:
            values.append(int(point))
    return values


def cauchy(
    field: FieldConfig,
    xs: Sequence[int | FieldElement],
    ys: Sequence[int | FieldElement],
) -> MatrixOverField:
    """Cauchy matrix with entry ``(i, j) = (x_i - y_j)^-1``.

    Raises
    ------
    RepeatedPoint
        If the ``len(xs) + len(ys)`` sample points are not pairwise distinct.
    """

    xv, yv = _as_values(field, xs), _as_values(field, ys)
    if len(set(xv + yv)) != len(xv) + len(yv):
        raise RepeatedPoint(f"Cauchy sample points {xv + yv} are not distinct")
    flat = tuple(field.inv(field.sub(x, y)) for x in xv for y in yv)
    return MatrixOverField(field, len(xv), len(yv), flat)


def vandermonde(
    field: FieldConfig, points: Sequence[int | FieldElement], k: int
) -> MatrixOverField:
    """``k x n`` Vandermonde matrix with entry ``(i, j) = points[j]^i``."""

    values = _as_values(field, points)
    if len(set(values)) != len(values):
        raise RepeatedPoint(f"Vandermonde points {values} are not distinct")
    if k > len(values):
        raise TooManyRows(f"{k} rows requested for {len(values)} points")
    flat = tuple(field.power(x, i) for i in range(k) for x in values)
    return MatrixOverField(field, k, len(values), flat)


def is_mds(m: MatrixOverField) -> bool:
    """True iff every ``rows x rows`` minor is nonzero (exhaustive)."""

    if m.rows > m.cols:
        raise TooManyRows(f"{m.rows} rows exceed {m.cols} columns")
    for colset in combinations(range(m.cols), m.rows):
        if not columns_minor_value(m, colset):
            logger.debug("Vanishing full-size minor on columns %s", colset)
            return False
    return True


def is_superregular(m: MatrixOverField) -> bool:
    """True iff every square minor of every order is nonzero (exhaustive)."""

    f = m.field
    for size in range(1, min(m.rows, m.cols) + 1):
        for rowset in combinations(range(m.rows), size):
            for colset in combinations(range(m.cols), size):
                block = [[m.value(i, j) for j in colset] for i in rowset]
                if not _det_value(f, block):
                    logger.debug("Vanishing minor rows=%s cols=%s", rowset, colset)
                    return False
    return True


__all__ = [
    "MatrixOverField",
    "SolveResult",
    "SolveStatus",
    "add",
    "cauchy",
    "cofactor_det",
    "columns_minor_value",
    "det",
    "embed_matrix",
    "from_ints",
    "hstack",
    "identity",
    "is_mds",
    "is_superregular",
    "matmul",
    "minor",
    "nullspace",
    "rank",
    "rank_and_solve",
    "scale_rows",
    "submatrix",
    "transpose",
    "vandermonde",
    "vector_times",
    "vstack",
]
