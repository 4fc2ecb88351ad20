"""Exact linear algebra tests."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[2]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from coding.errors import (
    DimensionMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NotSorted,
    NotSquare,
    RepeatedPoint,
    TooManyRows,
)
from coding.exactla import (
    MatrixOverField,
    SolveStatus,
    cauchy,
    cofactor_det,
    det,
    embed_matrix,
    from_ints,
    hstack,
    identity,
    is_mds,
    is_superregular,
    matmul,
    minor,
    nullspace,
    rank,
    rank_and_solve,
    scale_rows,
    submatrix,
    transpose,
    vandermonde,
    vstack,
    zeros,
)
from coding.gf import FieldConfig, embed, make_field

GF7 = make_field(7)


def _random_matrix(field: FieldConfig, size: int, rng: np.random.Generator) -> MatrixOverField:
    values = rng.integers(0, field.order, size=(size, size))
    return from_ints(field, values.tolist())


def test_determinant_small_case() -> None:
    m = from_ints(GF7, [[1, 2], [3, 4]])
    assert det(m).value == 5
    assert cofactor_det(m).value == 5


@pytest.mark.parametrize("q", [(7, 1), (3, 2), (2, 3)])
def test_elimination_matches_cofactor_expansion(q: tuple[int, int]) -> None:
    field = make_field(*q)
    rng = np.random.default_rng(7)
    for size in range(1, 5):
        for _ in range(10):
            m = _random_matrix(field, size, rng)
            assert det(m) == cofactor_det(m)


@pytest.mark.parametrize("q", [(7, 1), (3, 2), (2, 3), (5, 2)])
def test_determinant_is_multiplicative(q: tuple[int, int]) -> None:
    field = make_field(*q)
    rng = np.random.default_rng(11)
    for size in range(1, 5):
        for _ in range(10):
            a = _random_matrix(field, size, rng)
            b = _random_matrix(field, size, rng)
            assert det(matmul(a, b)) == det(a) * det(b)


def test_det_requires_square() -> None:
    with pytest.raises(NotSquare):
        det(zeros(GF7, 2, 3))


def test_submatrix_validates_indices() -> None:
    m = identity(GF7, 3)
    assert submatrix(m, [0, 2], None).shape == (2, 3)
    with pytest.raises(NotSorted):
        submatrix(m, [1, 0], None)
    with pytest.raises(IndexOutOfRange):
        minor(m, None, [0, 1, 5])


def test_entries_must_be_canonical() -> None:
    with pytest.raises(FieldMismatch):
        MatrixOverField(GF7, 1, 1, (7,))
    with pytest.raises(DimensionMismatch):
        MatrixOverField(GF7, 2, 2, (1, 2, 3))


def test_rank_and_solve_statuses() -> None:
    a = from_ints(GF7, [[1, 1], [1, 2]])
    unique = rank_and_solve(a, from_ints(GF7, [[3], [5]]))
    assert unique.status is SolveStatus.UNIQUE
    assert unique.solution is not None
    assert unique.solution.to_ints() == [[1], [2]]

    singular = from_ints(GF7, [[1, 1], [1, 1]])
    assert rank_and_solve(singular, from_ints(GF7, [[1], [2]])).status is SolveStatus.INCONSISTENT
    under = rank_and_solve(singular, from_ints(GF7, [[1], [1]]))
    assert under.status is SolveStatus.UNDERDETERMINED
    assert under.rank == 1
    assert rank_and_solve(a).status is None


def test_nullspace_of_systematic_matrix() -> None:
    m = from_ints(GF7, [[1, 0, 2], [0, 1, 3]])
    basis = nullspace(m)
    assert basis.to_ints() == [[5, 4, 1]]
    assert matmul(m, transpose(basis)).is_zero()
    assert rank(m) == 2
    assert rank(zeros(GF7, 3, 3)) == 0


def test_vandermonde_is_mds() -> None:
    v = vandermonde(GF7, [1, 2, 3, 4, 5], 3)
    assert v.shape == (3, 5)
    assert is_mds(v)
    with pytest.raises(TooManyRows):
        vandermonde(GF7, [1, 2, 3], 4)
    with pytest.raises(RepeatedPoint):
        vandermonde(GF7, [1, 1, 2], 2)


def test_cauchy_is_superregular() -> None:
    c = cauchy(GF7, [0, 1], [2, 3, 4])
    assert is_superregular(c)
    assert not is_superregular(from_ints(GF7, [[1, 1], [1, 1]]))
    with pytest.raises(RepeatedPoint):
        cauchy(GF7, [0, 1], [1, 2])


def test_stacking_and_scaling() -> None:
    a = identity(GF7, 2)
    b = from_ints(GF7, [[2, 3], [4, 5]])
    assert hstack([a, b]).to_ints() == [[1, 0, 2, 3], [0, 1, 4, 5]]
    assert vstack([a, b]).shape == (4, 2)
    assert scale_rows(b, [2, 3]).to_ints() == [[4, 6], [5, 1]]
    with pytest.raises(DimensionMismatch):
        hstack([a, zeros(GF7, 3, 1)])
    with pytest.raises(DimensionMismatch):
        matmul(a, zeros(GF7, 3, 1))


def test_embedding_commutes_with_determinant() -> None:
    small, big = make_field(2, 2), make_field(2, 4)
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = _random_matrix(small, 3, rng)
        assert det(embed_matrix(m, big)) == embed(det(m), big)
