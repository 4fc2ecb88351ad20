"""Univariate polynomials over a finite field and polynomial-matrix minors.

Polynomials are little-endian tuples of canonical encodings with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations

from coding.errors import DimensionMismatch, DivisionByZero
from coding.exactla import MatrixOverField
from coding.gf import FieldConfig

Poly = tuple[int, ...]
PolyMatrix = list[list[Poly]]


def normalize(coeffs: Sequence[int]) -> Poly:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def degree(poly: Poly) -> int:
    """Degree of ``poly``; ``-1`` for the zero polynomial."""

    return len(poly) - 1


def poly_add(f: FieldConfig, a: Poly, b: Poly) -> Poly:
    size = max(len(a), len(b))
    return normalize(
        [f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(size)]
    )


def poly_sub(f: FieldConfig, a: Poly, b: Poly) -> Poly:
    return poly_add(f, a, tuple(f.neg(c) for c in b))


def poly_mul(f: FieldConfig, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = f.add(out[i + j], f.mul(ca, cb))
    return normalize(out)


def poly_divmod(f: FieldConfig, num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise DivisionByZero("polynomial division by zero")
    rem = list(num)
    inv_lead = f.inv(den[-1])
    quot = [0] * max(len(num) - len(den) + 1, 0)
    while len(rem) >= len(den):
        factor = f.mul(rem[-1], inv_lead)
        shift = len(rem) - len(den)
        quot[shift] = factor
        for i, coeff in enumerate(den):
            rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, coeff))
        rem = list(normalize(rem))
    return normalize(quot), tuple(rem)


def monic(f: FieldConfig, poly: Poly) -> Poly:
    if not poly:
        return ()
    inv = f.inv(poly[-1])
    return tuple(f.mul(inv, c) for c in poly)


def poly_gcd(f: FieldConfig, a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""

    while b:
        _, rem = poly_divmod(f, a, b)
        a, b = b, rem
    return monic(f, a)


def evaluate(f: FieldConfig, poly: Poly, point: int) -> int:
    acc = 0
    for coeff in reversed(poly):
        acc = f.add(f.mul(acc, point), coeff)
    return acc


def poly_matrix(coeffs: Sequence[MatrixOverField]) -> PolyMatrix:
    """Entry-wise polynomial matrix ``sum_i coeffs[i] z^i``."""

    shape = coeffs[0].shape
    if any(c.shape != shape for c in coeffs):
        raise DimensionMismatch("coefficient matrices must share a shape")
    rows, cols = shape
    return [
        [normalize([c.value(i, j) for c in coeffs]) for j in range(cols)] for i in range(rows)
    ]


def poly_det(f: FieldConfig, grid: PolyMatrix) -> Poly:
    """Determinant of a square polynomial matrix by Laplace expansion along row 0."""

    size = len(grid)
    if size == 0:
        return (1,)
    if size == 1:
        return grid[0][0]
    acc: Poly = ()
    for j, entry in enumerate(grid[0]):
        if not entry:
            continue
        rest = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = poly_mul(f, entry, poly_det(f, rest))
        acc = poly_sub(f, acc, term) if j % 2 else poly_add(f, acc, term)
    return acc


def full_size_minors(f: FieldConfig, grid: PolyMatrix) -> dict[tuple[int, ...], Poly]:
    """All ``rows x rows`` minors keyed by column set (rows <= cols)."""

    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    if rows > cols:
        raise DimensionMismatch(f"{rows} rows exceed {cols} columns")
    minors = {}
    for colset in combinations(range(cols), rows):
        minors[colset] = poly_det(f, [[row[j] for j in colset] for row in grid])
    return minors


__all__ = [
    "Poly",
    "PolyMatrix",
    "degree",
    "evaluate",
    "full_size_minors",
    "monic",
    "normalize",
    "poly_add",
    "poly_det",
    "poly_divmod",
    "poly_gcd",
    "poly_matrix",
    "poly_mul",
    "poly_sub",
]
