"""Partial unit-memory convolutional codes with maximum distance profile.

A code is given by coefficient matrices ``G_0 .. G_mu`` of
``G(z) = sum_i G_i z^i``. MDP is certified through the non-trivial full-size
minors of the sliding generator matrix (or, for the dual, of the sliding
parity-check matrix) and cross-checked against brute-force column distances.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import combinations, islice, product

import numpy as np

from coding.completion import (
    DEFAULT_FAILURE_CAP,
    SupportPattern,
    VerificationReport,
    verify_nonvanishing,
)
from coding.errors import (
    DimensionMismatch,
    FieldMismatch,
    FieldTooSmall,
    NoSubfield,
    NoValidZ,
    ParameterViolation,
    ParityCheckFailure,
    UnsupportedWindow,
)
from coding.exactla import (
    MatrixOverField,
    cauchy,
    embed_matrix,
    from_ints,
    hstack,
    is_mds,
    is_superregular,
    nullspace,
    submatrix,
    vandermonde,
    vector_times,
    vstack,
    zeros,
)
from coding.gf import (
    FieldConfig,
    FieldElement,
    in_subfield,
    linearly_independent_over,
    make_field,
    minimal_polynomial,
    primitive_element,
)
from coding.polynomials import (
    Poly,
    degree,
    full_size_minors,
    normalize,
    poly_add,
    poly_gcd,
    poly_matrix,
    poly_mul,
)
from observability.otel import init_tracing
from utils.guards import ensure_within_budget

logger = logging.getLogger(__name__)
_TRACER = init_tracing("coding-convmdp")


class Layout(str, Enum):
    GENERATOR = "generator"
    PARITYCHECK = "paritycheck"


@dataclass(frozen=True)
class ConvCode:
    """``(n, k, delta)`` convolutional code with generator ``sum_i coeffs[i] z^i``."""

    n: int
    k: int
    field: FieldConfig
    coeffs: tuple[MatrixOverField, ...]
    delta: int
    base_field: FieldConfig | None = None
    construction: str = ""

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n:
            raise ParameterViolation(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if not self.coeffs:
            raise ParameterViolation("at least one coefficient matrix is required")
        for index, coeff in enumerate(self.coeffs):
            if coeff.shape != (self.k, self.n):
                raise DimensionMismatch(f"G_{index} has shape {coeff.shape}")
            if coeff.field != self.field:
                raise FieldMismatch(f"G_{index} lives in {coeff.field.name}")

    @property
    def memory(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class ParityCheckCode:
    """``(n, k, delta)`` code described by parity-check coefficients ``H_0 .. H_nu``."""

    n: int
    k: int
    field: FieldConfig
    coeffs: tuple[MatrixOverField, ...]
    delta: int
    construction: str = ""

    def __post_init__(self) -> None:
        if not 1 <= self.k < self.n:
            raise ParameterViolation(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        for index, coeff in enumerate(self.coeffs):
            if coeff.shape != (self.n - self.k, self.n):
                raise DimensionMismatch(f"H_{index} has shape {coeff.shape}")

    @property
    def memory(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class SlidingMatrix:
    j: int
    layout: Layout
    body: MatrixOverField


@dataclass(frozen=True)
class WindowBound:
    L: int  # noqa: N815
    bounds: tuple[int, ...]


def window_bound(n: int, k: int, delta: int) -> WindowBound:
    """Largest window ``L`` with attainable column-distance bounds ``(n-k)(j+1)+1``."""

    if not 1 <= k <= n - 1 or delta < 0:
        raise ParameterViolation(f"need 1 <= k <= n-1 and delta >= 0, got {(n, k, delta)}")
    L = delta // k + delta // (n - k)  # noqa: N806
    return WindowBound(L, tuple((n - k) * (j + 1) + 1 for j in range(L + 1)))


def sliding(coeffs: Sequence[MatrixOverField], j: int, layout: Layout | str) -> SlidingMatrix:
    """Block-Toeplitz window of the coefficient sequence.

    The generator layout puts ``coeffs[c - r]`` in block ``(r, c)`` (upper
    triangular); the parity-check layout puts ``coeffs[r - c]`` there (lower
    triangular). Coefficients beyond the memory are zero.
    """

    layout = Layout(layout)
    if j < 0:
        raise UnsupportedWindow(f"window index must be nonnegative, got {j}")
    field = coeffs[0].field
    rows, cols = coeffs[0].shape
    zero = zeros(field, rows, cols)
    block_rows = []
    for r in range(j + 1):
        blocks = []
        for c in range(j + 1):
            lag = c - r if layout is Layout.GENERATOR else r - c
            blocks.append(coeffs[lag] if 0 <= lag < len(coeffs) else zero)
        block_rows.append(hstack(blocks))
    return SlidingMatrix(j=j, layout=layout, body=vstack(block_rows))


def nontrivial_sets_generator(n: int, k: int, j: int) -> Iterator[tuple[int, ...]]:
    """``(j+1)k``-sets whose ``(sk+1)``-th smallest index exceeds ``sn`` (1-based), ``s <= j``."""

    for colset in combinations(range((j + 1) * n), (j + 1) * k):
        if all(colset[s * k] >= s * n for s in range(1, j + 1)):
            yield colset


def nontrivial_sets_paritycheck(n: int, k: int, j: int) -> Iterator[tuple[int, ...]]:
    """``(j+1)(n-k)``-sets whose ``s(n-k)``-th smallest index is at most ``sn`` (1-based)."""

    r = n - k
    for colset in combinations(range((j + 1) * n), (j + 1) * r):
        if all(colset[s * r - 1] < s * n for s in range(1, j + 1)):
            yield colset


def _resolve_window(n: int, k: int, delta: int, window: int | None) -> tuple[int, int]:
    L = window_bound(n, k, delta).L  # noqa: N806
    if window is not None:
        return window, L
    if L > 1:
        logger.warning("Window bound L=%d exceeds 1; checking the j=1 window only", L)
    return min(L, 1), L


def is_mdp(
    code: ConvCode,
    window: int | None = None,
    failure_cap: int | None = DEFAULT_FAILURE_CAP,
    *,
    threads: int | None = None,
) -> VerificationReport:
    """Sweep the non-trivial full-size minors of the sliding generator matrix.

    The window defaults to ``min(L, 1)``; the report records both ``window`` and
    ``L`` in its details.
    """

    j, L = _resolve_window(code.n, code.k, code.delta, window)  # noqa: N806
    body = sliding(code.coeffs, j, Layout.GENERATOR).body
    report = verify_nonvanishing(
        body,
        nontrivial_sets_generator(code.n, code.k, j),
        failure_cap,
        threads=threads,
        label="mdp",
    )
    report.details = {"window": j, "L": L, "layout": Layout.GENERATOR.value}
    return report


def is_mdp_paritycheck(
    pcode: ParityCheckCode,
    window: int | None = None,
    failure_cap: int | None = DEFAULT_FAILURE_CAP,
    *,
    threads: int | None = None,
) -> VerificationReport:
    """Sweep the non-trivial full-size minors of the sliding parity-check matrix."""

    j, L = _resolve_window(pcode.n, pcode.k, pcode.delta, window)  # noqa: N806
    body = sliding(pcode.coeffs, j, Layout.PARITYCHECK).body
    report = verify_nonvanishing(
        body,
        nontrivial_sets_paritycheck(pcode.n, pcode.k, j),
        failure_cap,
        threads=threads,
        label="mdp-paritycheck",
    )
    report.details = {"window": j, "L": L, "layout": Layout.PARITYCHECK.value}
    return report


def dual_mdp_check(
    code: ConvCode,
    failure_cap: int | None = DEFAULT_FAILURE_CAP,
    *,
    threads: int | None = None,
) -> VerificationReport:
    """Read ``G(z)`` as the parity-check matrix of the ``(n, n-k, delta)`` dual and sweep it."""

    if code.k >= code.n:
        raise ParameterViolation("the dual of a rate-one code is trivial")
    dual = ParityCheckCode(
        n=code.n,
        k=code.n - code.k,
        field=code.field,
        coeffs=code.coeffs,
        delta=code.delta,
        construction=f"dual:{code.construction}" if code.construction else "dual",
    )
    report = is_mdp_paritycheck(dual, failure_cap=failure_cap, threads=threads)
    report.label = "dual-mdp"
    return report


# ---------------------------------------------------------------------------
# Streams and column distances
# ---------------------------------------------------------------------------


def encode_stream(
    code: ConvCode, blocks: Sequence[Sequence[FieldElement | int]]
) -> list[list[FieldElement]]:
    """Truncated output ``v_t = sum_i u_{t-i} G_i`` for ``t`` over the input blocks."""

    f = code.field
    values = [[int(symbol) for symbol in block] for block in blocks]
    for block in values:
        if len(block) != code.k:
            raise DimensionMismatch(f"input block of length {len(block)}, expected {code.k}")
    outputs = []
    for t in range(len(values)):
        acc = [0] * code.n
        for i in range(min(t, code.memory) + 1):
            part = vector_times(values[t - i], code.coeffs[i])
            acc = [f.add(a, b) for a, b in zip(acc, part)]
        outputs.append([FieldElement(f, v) for v in acc])
    return outputs


def _leading_one_vectors(field: FieldConfig, length: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors whose first nonzero coordinate is 1 (one per projective point)."""

    for lead in range(length):
        for tail in product(range(field.order), repeat=length - lead - 1):
            yield (0,) * lead + (1,) + tail


def column_distance_bruteforce(
    code: ConvCode,
    j: int,
    max_evaluations: int | None = None,
    *,
    threads: int | None = None,
) -> int:
    """Exact ``j``-th column distance by exhaustive search over truncated inputs.

    ``u_0`` ranges over one representative per scalar class; ``u_1 .. u_j``
    range over everything.

    Raises
    ------
    TooLarge
        If the number of candidate inputs exceeds ``max_evaluations``.
    """

    f, k, n = code.field, code.k, code.n
    q = f.order
    representatives = (q**k - 1) // (q - 1)
    ensure_within_budget(representatives * q ** (k * j), max_evaluations, "column distance")

    codebook: list[tuple[tuple[int, ...], list[int]]] = []
    if j >= 1:
        for u in product(range(q), repeat=k):
            codebook.append((u, vector_times(u, code.coeffs[0])))
        codebook.sort(key=lambda item: sum(1 for v in item[1] if v))

    def shifted(history: list[tuple[int, ...]], t: int) -> list[int]:
        acc = [0] * n
        for i in range(1, min(t, code.memory) + 1):
            part = vector_times(history[t - i], code.coeffs[i])
            acc = [f.add(a, b) for a, b in zip(acc, part)]
        return acc

    def search(u0: tuple[int, ...]) -> int:
        best = n * (j + 1) + 1
        first = sum(1 for v in vector_times(u0, code.coeffs[0]) if v)
        history = [u0]

        def extend(t: int, weight: int) -> None:
            nonlocal best
            if t > j:
                best = min(best, weight)
                return
            offset = shifted(history, t)
            for u, image in codebook:
                w = weight + sum(1 for a, b in zip(offset, image) if f.add(a, b))
                if w >= best:
                    continue
                history.append(u)
                extend(t + 1, w)
                history.pop()

        extend(1, first)
        return best

    workers = max(int(threads or 1), 1)
    with _TRACER.start_as_current_span("column_distance_bruteforce") as span:
        span.set_attribute("n", n)
        span.set_attribute("k", k)
        span.set_attribute("j", j)
        span.set_attribute("field_order", q)
        starts = _leading_one_vectors(f, k)
        if workers == 1:
            result = min(search(u0) for u0 in starts)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                result = min(pool.map(search, list(starts)))
        span.set_attribute("distance", result)
    logger.info("Column distance d_%d = %d over %s", j, result, f.name)
    return result


# ---------------------------------------------------------------------------
# Degree, non-catastrophicity and parity checks
# ---------------------------------------------------------------------------


def _minors(code: ConvCode) -> dict[tuple[int, ...], Poly]:
    return full_size_minors(code.field, poly_matrix(code.coeffs))


def code_degree(code: ConvCode) -> int:
    """Largest degree among the full-size minors of ``G(z)`` (``-1`` if all vanish)."""

    return max(degree(minor) for minor in _minors(code).values())


def validate_code(code: ConvCode) -> None:
    """Raise :class:`ParameterViolation` unless ``G_mu != 0`` and the degree matches."""

    if code.coeffs[-1].is_zero() and code.memory > 0:
        raise ParameterViolation(f"G_{code.memory} is zero")
    computed = code_degree(code)
    if computed != code.delta:
        raise ParameterViolation(f"declared degree {code.delta}, computed {computed}")


def noncatastrophic_gcd(code: ConvCode) -> bool:
    """Left-primeness: the full-size minors of ``G(z)`` have a nonzero constant gcd."""

    g = reduce(lambda a, b: poly_gcd(code.field, a, b), _minors(code).values(), ())
    return g == (1,)


def noncatastrophic_structural(code: ConvCode) -> bool | None:
    """Shortcut for MDS ``G_0`` with higher coefficients vanishing on the last ``k`` columns.

    Returns ``None`` when the code does not have that shape.
    """

    tail = list(range(code.n - code.k, code.n))
    for coeff in code.coeffs[1:]:
        if not submatrix(coeff, None, tail).is_zero():
            return None
    if not is_mds(code.coeffs[0]):
        return None
    return True


def is_noncatastrophic(code: ConvCode, method: str = "auto") -> bool:
    """Whether ``G(z)`` is left prime.

    ``method`` is ``"gcd"``, ``"structural"`` or ``"auto"`` (structural when the
    shape allows it, gcd otherwise).
    """

    if method not in {"auto", "gcd", "structural"}:
        raise ValueError(f"unknown method {method!r}")
    if method != "gcd":
        fast = noncatastrophic_structural(code)
        if fast is not None:
            return fast
        if method == "structural":
            raise ParameterViolation("code does not have the structural shortcut shape")
    return noncatastrophic_gcd(code)


def _kernel_vectors(code: ConvCode, e: int) -> list[list[Poly]]:
    """Basis of polynomial vectors ``h`` of degree <= ``e`` with ``G(z) h(z)^T = 0``."""

    f, n, k, mu = code.field, code.n, code.k, code.memory
    equations: list[list[int]] = []
    for t in range(mu + e + 1):
        for row in range(k):
            line = [0] * (n * (e + 1))
            for i in range(e + 1):
                lag = t - i
                if 0 <= lag <= mu:
                    for col in range(n):
                        line[i * n + col] = code.coeffs[lag].value(row, col)
            equations.append(line)
    basis = nullspace(from_ints(f, equations))
    vectors = []
    for r in range(basis.rows):
        flat = basis.row(r)
        vectors.append([normalize([flat[i * n + col] for i in range(e + 1)]) for col in range(n)])
    return vectors


def _full_rank(f: FieldConfig, rows: list[list[Poly]]) -> bool:
    return any(minor for minor in full_size_minors(f, rows).values())


def parity_check_from_generator(
    code: ConvCode,
    random_checks: int = 8,
    seed: int = 0,
) -> ParityCheckCode:
    """Polynomial parity-check matrix of degree at most ``delta``.

    Kernel vectors are collected greedily by increasing degree, keeping each one
    that raises the rank over ``F(z)``; the result is confirmed on random
    codewords drawn with ``numpy``.

    Raises
    ------
    ParityCheckFailure
        If no full-rank ``(n-k) x n`` solution exists with degree ``<= delta``.
    """

    f, n, k = code.field, code.n, code.k
    rows: list[list[Poly]] = []
    nu = 0
    for e in range(code.delta + 1):
        for vector in _kernel_vectors(code, e):
            if len(rows) == n - k:
                break
            if _full_rank(f, [*rows, vector]):
                rows.append(vector)
                nu = max(nu, max(degree(entry) for entry in vector))
        if len(rows) == n - k:
            break
    if len(rows) < n - k:
        raise ParityCheckFailure(
            f"found {len(rows)} of {n - k} independent parity rows within degree {code.delta}"
        )
    coeffs = tuple(
        from_ints(f, [[entry[i] if i < len(entry) else 0 for entry in row] for row in rows])
        for i in range(nu + 1)
    )
    pcode = ParityCheckCode(
        n=n, k=k, field=f, coeffs=coeffs, delta=code.delta, construction="kernel"
    )
    _check_random_codewords(code, pcode, random_checks, seed)
    logger.info("Parity-check matrix of degree %d for an (%d,%d,%d) code", nu, n, k, code.delta)
    return pcode


def _check_random_codewords(
    code: ConvCode, pcode: ParityCheckCode, count: int, seed: int
) -> None:
    f = code.field
    rng = np.random.default_rng(seed)
    generator = poly_matrix(code.coeffs)
    parity = poly_matrix(pcode.coeffs)
    for _ in range(count):
        message = [
            normalize([int(x) for x in rng.integers(0, f.order, size=3)]) for _ in range(code.k)
        ]
        word = [
            reduce(
                lambda acc, i: poly_add(f, acc, poly_mul(f, message[i], generator[i][col])),
                range(code.k),
                (),
            )
            for col in range(code.n)
        ]
        for row in parity:
            syndrome: Poly = ()
            for entry, symbol in zip(row, word):
                syndrome = poly_add(f, syndrome, poly_mul(f, entry, symbol))
            if syndrome:
                raise ParityCheckFailure("parity-check matrix rejects a codeword")


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def toeplitz_lower(field: FieldConfig, betas: Sequence[FieldElement]) -> MatrixOverField:
    """Lower-triangular Toeplitz matrix with first column ``betas``."""

    size = len(betas)
    grid = [
        [betas[r - c].value if r >= c else 0 for c in range(size)] for r in range(size)
    ]
    return from_ints(field, grid)


def _unit_memory_tail(block: MatrixOverField, k: int) -> MatrixOverField:
    """``G_1 = [block | 0_{k x k}]``."""

    return hstack([block, zeros(block.field, k, k)])


def _first_points(field: FieldConfig, count: int) -> list[FieldElement]:
    return list(islice(field.elements(), count))


def diag_extension_degree(delta: int) -> int:
    return -(-(delta * delta - 1) // 4) + 1


def build_diag(n: int, k: int, q_field: FieldConfig) -> ConvCode:
    """Superregular ``G_0`` with ``G_1 = [[Diag(alpha, .., alpha^delta); 0] | 0]``.

    Parameters
    ----------
    n, k:
        Block length and dimension with ``k > n - k``.
    q_field:
        Base field with at least ``k + n`` elements.

    Raises
    ------
    ParameterViolation, FieldTooSmall
    """

    if not n - k < k < n:
        raise ParameterViolation(f"need n - k < k < n, got n={n}, k={k}")
    if q_field.order < k + n:
        raise FieldTooSmall(f"{q_field.name} cannot host {k + n} distinct Cauchy points")
    delta = n - k
    d = diag_extension_degree(delta)
    ext = make_field(q_field.p, q_field.m * d)
    alpha = primitive_element(ext)
    if len(minimal_polynomial(alpha, q_field.m)) - 1 != d:  # pragma: no cover
        raise ParameterViolation("primitive element does not generate the extension")

    points = _first_points(q_field, k + n)
    base = cauchy(q_field, points[:k], points[k:])
    if not is_superregular(base):  # pragma: no cover - Cauchy matrices are superregular
        raise ParameterViolation("Cauchy block is not superregular")
    g0 = embed_matrix(base, ext)
    grid = [[0] * delta for _ in range(k)]
    for t in range(delta):
        grid[t][t] = (alpha ** (t + 1)).value
    g1 = _unit_memory_tail(from_ints(ext, grid), k)
    code = ConvCode(n, k, ext, (g0, g1), delta, base_field=q_field, construction="diag")
    validate_code(code)
    logger.info("Built diag (%d,%d,%d) code over %s (d=%d)", n, k, delta, ext.name, d)
    return code


def _vandermonde_code(
    n: int, q_field: FieldConfig, delta: int, betas: Sequence[FieldElement], name: str
) -> ConvCode:
    k = n - delta
    ext = betas[0].field
    g0 = embed_matrix(vandermonde(q_field, _first_points(q_field, n), k), ext)
    x_hat = toeplitz_lower(ext, betas)
    if 2 * k > n:
        x_hat = vstack([zeros(ext, 2 * k - n, delta), x_hat])
    code = ConvCode(
        n, k, ext, (g0, _unit_memory_tail(x_hat, k)), delta, base_field=q_field, construction=name
    )
    validate_code(code)
    logger.info("Built %s (%d,%d,%d) code over %s", name, n, k, delta, ext.name)
    return code


def build_vdm2(n: int, q_field: FieldConfig) -> ConvCode:
    """Vandermonde ``G_0`` with Toeplitz tail from ``(gamma, 1)`` over ``GF(q^2)``.

    Raises
    ------
    ParameterViolation
        If ``q < n`` or ``n < 4``.
    """

    if n < 4 or q_field.order < n:
        raise ParameterViolation(f"need q >= n >= 4, got q={q_field.order}, n={n}")
    ext = make_field(q_field.p, 2 * q_field.m)
    gamma = primitive_element(ext)
    betas = [gamma, ext.one]
    if not linearly_independent_over(betas, q_field.m):  # pragma: no cover
        raise ParameterViolation("Toeplitz entries are dependent over the base field")
    return _vandermonde_code(n, q_field, 2, betas, "vdm2")


def find_z(q_field: FieldConfig, ext3_field: FieldConfig | None = None) -> FieldElement:
    """Smallest element of ``GF(q^3) - GF(q)`` whose minimal polynomial has constant != -1.

    Raises
    ------
    NoValidZ
        If every candidate has constant coefficient ``-1``.
    """

    ext = ext3_field or make_field(q_field.p, 3 * q_field.m)
    if ext.p != q_field.p or ext.m != 3 * q_field.m:
        raise NoSubfield(f"{ext.name} is not a cubic extension of {q_field.name}")
    minus_one = q_field.p - 1
    for z in ext.elements():
        if in_subfield(z, q_field.m):
            continue
        if minimal_polynomial(z, q_field.m)[0].value != minus_one:
            logger.debug("Selected z=%r over %s", z, q_field.name)
            return z
    raise NoValidZ(f"every cubic minimal polynomial over {q_field.name} has constant -1")


def build_vdm3(n: int, q_field: FieldConfig) -> ConvCode:
    """Vandermonde ``G_0`` with Toeplitz tail from ``(z, z^2, 1)`` over ``GF(q^3)``.

    Raises
    ------
    ParameterViolation
        If ``q < n`` or ``n < 7``.
    NoValidZ
        If no admissible ``z`` exists.
    """

    if n < 7 or q_field.order < n:
        raise ParameterViolation(f"need q >= n >= 7, got q={q_field.order}, n={n}")
    z = find_z(q_field)
    return _vandermonde_code(n, q_field, 3, [z, z * z, z.field.one], "vdm3")


def build_low_rate(n: int, k: int, q_field: FieldConfig) -> ParityCheckCode:
    """``(n, k, k)`` code for ``k`` in ``{2, 3}`` given by its parity-check matrix."""

    if k == 2:
        source = build_vdm2(n, q_field)
    elif k == 3:
        source = build_vdm3(n, q_field)
    else:
        raise ParameterViolation(f"low-rate construction needs k in {{2, 3}}, got {k}")
    return ParityCheckCode(
        n=n,
        k=k,
        field=source.field,
        coeffs=source.coeffs,
        delta=k,
        construction=f"low-rate:{source.construction}",
    )


def mds_extension_check(code: ConvCode) -> bool:
    """Whether ``[G_0 | X]`` is MDS, with ``X`` the first ``n - k`` columns of ``G_1``."""

    if code.memory < 1:
        raise ParameterViolation("the code has no G_1")
    x_hat = submatrix(code.coeffs[1], None, list(range(code.n - code.k)))
    return is_mds(hstack([code.coeffs[0], x_hat]))


def sliding_tie_pattern(n: int, k: int, j: int = 1) -> SupportPattern:
    """Zero/tie structure of the ``j = 1`` sliding generator window."""

    if j != 1:
        raise UnsupportedWindow(f"tie pattern is only defined for j=1, got {j}")
    free = tuple(
        tuple(not (row >= k and col < n) for col in range(2 * n)) for row in range(2 * k)
    )
    ties = frozenset(((i, c), (i + k, c + n)) for i in range(k) for c in range(n))
    return SupportPattern(2 * k, 2 * n, free, ties)


def column_distance_bound(n: int, k: int, j: int) -> int:
    return (n - k) * (j + 1) + 1


__all__ = [
    "ConvCode",
    "Layout",
    "ParityCheckCode",
    "SlidingMatrix",
    "WindowBound",
    "build_diag",
    "build_low_rate",
    "build_vdm2",
    "build_vdm3",
    "code_degree",
    "column_distance_bound",
    "column_distance_bruteforce",
    "diag_extension_degree",
    "dual_mdp_check",
    "encode_stream",
    "find_z",
    "is_mdp",
    "is_mdp_paritycheck",
    "is_noncatastrophic",
    "mds_extension_check",
    "noncatastrophic_gcd",
    "noncatastrophic_structural",
    "nontrivial_sets_generator",
    "nontrivial_sets_paritycheck",
    "parity_check_from_generator",
    "sliding",
    "sliding_tie_pattern",
    "toeplitz_lower",
    "validate_code",
    "window_bound",
]
