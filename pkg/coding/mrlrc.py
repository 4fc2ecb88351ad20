"""Maximally recoverable locally repairable codes with unequal locality.

The generator has one row block per local group: block ``i`` carries a
Cauchy ``G_i`` on the columns of group ``i`` and a parity block ``P_i`` on the
``h`` global columns, whose top ``h x h`` part is
``Diag(alpha^0, alpha^i, ..., alpha^((h-1) i))`` over ``GF(q^d)``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import islice

from coding.completion import (
    DEFAULT_FAILURE_CAP,
    DegreeInstance,
    VerificationReport,
    verify_nonvanishing,
)
from coding.errors import (
    DegreeTooSmall,
    FieldMismatch,
    FieldTooSmall,
    InconsistentCodeword,
    IndexOutOfRange,
    LengthMismatch,
    ProfileViolation,
    Unrecoverable,
)
from coding.exactla import (
    MatrixOverField,
    SolveStatus,
    cauchy,
    embed_matrix,
    from_ints,
    is_mds,
    rank,
    rank_and_solve,
    submatrix,
    transpose,
    vector_times,
    zeros,
)
from coding.gf import FieldConfig, FieldElement, make_field, primitive_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalityProfile:
    """Group sizes ``ns``, group dimensions ``ks`` and ``h`` global parities."""

    ell: int
    h: int
    ns: tuple[int, ...]
    ks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ProfileViolation("at least one local group is required")
        if self.h < 0:
            raise ProfileViolation("the number of global parities cannot be negative")
        if len(self.ns) != self.ell or len(self.ks) != self.ell:
            raise ProfileViolation(f"expected {self.ell} group sizes and dimensions")
        for n_i, k_i in zip(self.ns, self.ks):
            if not n_i >= k_i >= 1:
                raise ProfileViolation(f"group with n={n_i}, k={k_i} violates n >= k >= 1")

    @property
    def K(self) -> int:  # noqa: N802
        return sum(self.ks)

    @property
    def N(self) -> int:  # noqa: N802
        return sum(self.ns) + self.h

    @property
    def groups(self) -> list[range]:
        spans, start = [], 0
        for n_i in self.ns:
            spans.append(range(start, start + n_i))
            start += n_i
        return spans

    @property
    def global_columns(self) -> range:
        start = sum(self.ns)
        return range(start, start + self.h)

    @property
    def row_offsets(self) -> list[int]:
        offsets, start = [], 0
        for k_i in self.ks:
            offsets.append(start)
            start += k_i
        return offsets

    def group_of(self, column: int) -> int:
        """Group index of ``column``; ``ell`` for global columns."""

        for index, span in enumerate(self.groups):
            if column in span:
                return index
        if column in self.global_columns:
            return self.ell
        raise IndexOutOfRange(f"column {column} outside 0..{self.N - 1}")

    def describe(self) -> dict[str, object]:
        return {"ell": self.ell, "h": self.h, "ns": list(self.ns), "ks": list(self.ks)}


def build_profile(ell: int, h: int, ns: Sequence[int], ks: Sequence[int]) -> LocalityProfile:
    return LocalityProfile(int(ell), int(h), tuple(int(n) for n in ns), tuple(int(k) for k in ks))


@dataclass(frozen=True)
class MrLrcCode:
    profile: LocalityProfile
    base_field: FieldConfig
    ext_field: FieldConfig
    alpha: FieldElement
    locals: tuple[MatrixOverField, ...]
    parities: tuple[MatrixOverField, ...]

    @property
    def degree(self) -> int:
        return self.ext_field.m // self.base_field.m

    @cached_property
    def generator(self) -> MatrixOverField:
        return assemble_generator(self.profile, self.ext_field, self.locals, self.parities)


def assemble_generator(
    profile: LocalityProfile,
    field: FieldConfig,
    local_blocks: Sequence[MatrixOverField],
    parity_blocks: Sequence[MatrixOverField],
) -> MatrixOverField:
    """Block generator: ``G_i`` on group ``i``, ``P_i`` on the global columns."""

    grid = [[0] * profile.N for _ in range(profile.K)]
    for i, (span, offset) in enumerate(zip(profile.groups, profile.row_offsets)):
        local, parity = local_blocks[i], parity_blocks[i]
        if local.shape != (profile.ks[i], profile.ns[i]):
            raise ProfileViolation(f"G_{i} has shape {local.shape}")
        if parity.shape != (profile.ks[i], profile.h):
            raise ProfileViolation(f"P_{i} has shape {parity.shape}")
        for r in range(profile.ks[i]):
            for c, column in enumerate(span):
                grid[offset + r][column] = local.value(r, c)
            for c, column in enumerate(profile.global_columns):
                grid[offset + r][column] = parity.value(r, c)
    return from_ints(field, grid)


def field_degree_bound(profile: LocalityProfile) -> int:
    """Extension degree ``D`` above which the construction is guaranteed MR."""

    h = profile.h
    if h <= 1:
        return 1
    return (profile.ell - 1) * (h // 2) * ((h + 1) // 2) + 1


def diagonal_parity(
    field: FieldConfig, alpha: FieldElement, group: int, k: int, h: int
) -> MatrixOverField:
    """``k x h`` block with ``alpha^(t * group)`` at ``(t, t)`` for ``t < h``."""

    grid = [[0] * h for _ in range(k)]
    for t in range(h):
        grid[t][t] = (alpha ** (t * group)).value
    return from_ints(field, grid)


def build_mr_lrc(
    profile: LocalityProfile,
    q_field: FieldConfig,
    d: int | None = None,
    *,
    allow_below_bound: bool = False,
) -> MrLrcCode:
    """Construct the Cauchy/diagonal MR-LRC over ``GF(q^d)``.

    Parameters
    ----------
    profile:
        Locality profile with ``h <= min(ks)``.
    q_field:
        Base field ``GF(q)``; needs ``q >= k_i + n_i`` for every group.
    d:
        Extension degree; defaults to :func:`field_degree_bound`.
    allow_below_bound:
        Permit ``d`` below the bound for degree-search experiments.

    Raises
    ------
    ProfileViolation, FieldTooSmall, DegreeTooSmall
    """

    if profile.h > min(profile.ks):
        raise ProfileViolation(f"h={profile.h} exceeds min k_i={min(profile.ks)}")
    bound = field_degree_bound(profile)
    d = bound if d is None else int(d)
    if d < 1:
        raise DegreeTooSmall(f"extension degree must be positive, got {d}")
    if d < bound:
        if not allow_below_bound:
            raise DegreeTooSmall(f"d={d} is below the guaranteed bound D={bound}")
        logger.warning("Building below the degree bound: d=%d < D=%d", d, bound)
    needed = max(k + n for k, n in zip(profile.ks, profile.ns))
    if q_field.order < needed:
        raise FieldTooSmall(f"{q_field.name} has fewer than {needed} distinct sample points")

    ext = make_field(q_field.p, q_field.m * d)
    alpha = primitive_element(ext)
    locals_: list[MatrixOverField] = []
    parities: list[MatrixOverField] = []
    for i, (n_i, k_i) in enumerate(zip(profile.ns, profile.ks)):
        points = list(islice(q_field.elements(), k_i + n_i))
        local = cauchy(q_field, points[:k_i], points[k_i:])
        if not is_mds(local):  # pragma: no cover - Cauchy blocks are superregular
            raise ProfileViolation(f"local block {i} is not MDS")
        locals_.append(embed_matrix(local, ext))
        parities.append(diagonal_parity(ext, alpha, i, k_i, profile.h))
    code = MrLrcCode(profile, q_field, ext, alpha, tuple(locals_), tuple(parities))
    logger.info(
        "Built MR-LRC ell=%d h=%d ns=%s ks=%s over %s (d=%d, D=%d)",
        profile.ell,
        profile.h,
        list(profile.ns),
        list(profile.ks),
        ext.name,
        d,
        bound,
    )
    return code


def structure_violations(code: MrLrcCode) -> list[str]:
    """Deviations of the parity blocks from the diagonal power layout."""

    problems: list[str] = []
    profile, alpha = code.profile, code.alpha
    if len(code.locals) != profile.ell or len(code.parities) != profile.ell:
        return [f"expected {profile.ell} local and parity blocks"]
    for i, (local, parity) in enumerate(zip(code.locals, code.parities)):
        if local.shape != (profile.ks[i], profile.ns[i]):
            problems.append(f"G_{i} has shape {local.shape}")
        if parity.shape != (profile.ks[i], profile.h):
            problems.append(f"P_{i} has shape {parity.shape}")
            continue
        for r in range(parity.rows):
            for c in range(parity.cols):
                expected = (alpha ** (r * i)).value if r == c else 0
                if parity.value(r, c) != expected:
                    problems.append(f"P_{i}[{r},{c}] = {parity.value(r, c)}, expected {expected}")
    return problems


def zero_parities(code: MrLrcCode, group: int) -> MrLrcCode:
    """Copy of ``code`` with the parity block of ``group`` zeroed."""

    if not 0 <= group < code.profile.ell:
        raise IndexOutOfRange(f"group {group} outside 0..{code.profile.ell - 1}")
    parities = list(code.parities)
    parities[group] = zeros(code.ext_field, code.profile.ks[group], code.profile.h)
    return replace(code, parities=tuple(parities))


def admissible_column_sets(profile: LocalityProfile) -> Iterator[tuple[int, ...]]:
    """K-column sets with at most ``k_i`` columns from group ``i``, lexicographic."""

    K, N = profile.K, profile.N
    caps = [*profile.ks, profile.h]
    owner = [profile.group_of(c) for c in range(N)]
    used = [0] * (profile.ell + 1)
    prefix: list[int] = []

    def extend(start: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == K:
            yield tuple(prefix)
            return
        for column in range(start, N - (K - len(prefix)) + 1):
            group = owner[column]
            if used[group] >= caps[group]:
                continue
            used[group] += 1
            prefix.append(column)
            yield from extend(column + 1)
            prefix.pop()
            used[group] -= 1

    yield from extend(0)


def local_rank_check(code: MrLrcCode) -> list[int]:
    """Groups whose restricted code has dimension above ``k_i``."""

    violations = []
    for i, span in enumerate(code.profile.groups):
        block = submatrix(code.generator, None, list(span))
        if rank(block) > code.profile.ks[i]:
            violations.append(i)
    return violations


def verify_mr(
    code: MrLrcCode,
    failure_cap: int | None = DEFAULT_FAILURE_CAP,
    *,
    threads: int | None = None,
) -> VerificationReport:
    """Exhaustively certify maximal recoverability.

    Passes iff every admissible minor of the generator is nonzero, every local
    block is MDS and no group exceeds its local dimension.
    """

    report = verify_nonvanishing(
        code.generator,
        admissible_column_sets(code.profile),
        failure_cap,
        threads=threads,
        label="mr-lrc",
    )
    local_failures = [i for i, block in enumerate(code.locals) if not is_mds(block)]
    rank_violations = local_rank_check(code)
    report.details = {
        "global_passed": report.passed,
        "local_failures": local_failures,
        "local_rank_violations": rank_violations,
    }
    report.passed = report.passed and not local_failures and not rank_violations
    if local_failures:
        logger.warning("Local blocks %s are not MDS", local_failures)
    return report


def degree_search_builder(
    profile: LocalityProfile, q_field: FieldConfig
) -> Callable[[int], DegreeInstance]:
    """Builder for :func:`~coding.completion.minimal_degree_search` over ``d``."""

    def build(d: int) -> DegreeInstance:
        code = build_mr_lrc(profile, q_field, d, allow_below_bound=True)
        return DegreeInstance(code.generator, lambda: admissible_column_sets(profile))

    return build


# ---------------------------------------------------------------------------
# Encoding, erasure decoding and updates
# ---------------------------------------------------------------------------


def _values(field: FieldConfig, symbols: Sequence[FieldElement | int]) -> list[int]:
    values = []
    for symbol in symbols:
        if isinstance(symbol, FieldElement):
            if symbol.field != field:
                raise FieldMismatch(f"{symbol.field.name} vs {field.name}")
            values.append(symbol.value)
        else:
            value = int(symbol)
            if not 0 <= value < field.order:
                raise FieldMismatch(f"{value} is not an element of {field.name}")
            values.append(value)
    return values


def encode(code: MrLrcCode, message: Sequence[FieldElement | int]) -> list[FieldElement]:
    """Codeword ``message * generator`` computed block by block."""

    profile, f = code.profile, code.ext_field
    if len(message) != profile.K:
        raise LengthMismatch(f"message has {len(message)} symbols, expected {profile.K}")
    values = _values(f, message)
    codeword: list[int] = []
    parity = [0] * profile.h
    for i, offset in enumerate(profile.row_offsets):
        block = values[offset : offset + profile.ks[i]]
        codeword.extend(vector_times(block, code.locals[i]))
        if profile.h:
            contribution = vector_times(block, code.parities[i])
            parity = [f.add(a, b) for a, b in zip(parity, contribution)]
    codeword.extend(parity)
    return [FieldElement(f, v) for v in codeword]


@dataclass(frozen=True)
class DecodeResult:
    message: list[FieldElement]
    codeword: list[FieldElement]
    repaired_groups: tuple[int, ...]
    global_solve: bool


def _solve_message(
    generator: MatrixOverField, columns: Sequence[int], values: Sequence[int]
) -> list[int]:
    system = transpose(submatrix(generator, None, list(columns)))
    rhs = from_ints(generator.field, [[v] for v in values])
    result = rank_and_solve(system, rhs)
    if result.status is SolveStatus.UNIQUE and result.solution is not None:
        return list(result.solution.entries)
    if result.status is SolveStatus.INCONSISTENT:
        raise InconsistentCodeword("surviving symbols are not consistent with any message")
    raise Unrecoverable(
        f"surviving columns have rank {result.rank} < K={generator.rows}"
    )


def decode_erasures(
    code: MrLrcCode, received: Sequence[FieldElement | int | None]
) -> DecodeResult:
    """Recover the message from a word with erasures (``None`` entries).

    Groups with at most ``n_i - k_i`` erasures are repaired from their own
    surviving symbols; the remaining message blocks are solved from every
    surviving and repaired column.

    Raises
    ------
    LengthMismatch, Unrecoverable, InconsistentCodeword
    """

    profile, f = code.profile, code.ext_field
    if len(received) != profile.N:
        raise LengthMismatch(f"received word has {len(received)} symbols, expected {profile.N}")
    known: dict[int, int] = {}
    for column, symbol in enumerate(received):
        if symbol is not None:
            known[column] = _values(f, [symbol])[0]

    message: list[int | None] = [None] * profile.K
    repaired: list[int] = []
    for i, (span, offset) in enumerate(zip(profile.groups, profile.row_offsets)):
        survivors = [c for c in span if c in known]
        if len(survivors) < profile.ks[i]:
            continue
        chosen = survivors[: profile.ks[i]]
        local_columns = [c - span.start for c in chosen]
        block = _solve_message(code.locals[i], local_columns, [known[c] for c in chosen])
        message[offset : offset + profile.ks[i]] = block
        if len(survivors) < len(span):
            repaired.append(i)
            for c, value in zip(span, vector_times(block, code.locals[i])):
                known.setdefault(c, value)

    global_solve = any(symbol is None for symbol in message)
    if global_solve:
        columns = sorted(known)
        logger.debug("Global solve over %d surviving columns", len(columns))
        solved = _solve_message(code.generator, columns, [known[c] for c in columns])
    else:
        solved = [int(v) for v in message]  # type: ignore[arg-type]

    codeword = encode(code, solved)
    for column, symbol in enumerate(received):
        if symbol is not None and codeword[column].value != known[column]:
            raise InconsistentCodeword(f"symbol {column} disagrees with the decoded codeword")
    return DecodeResult(
        message=[FieldElement(f, v) for v in solved],
        codeword=codeword,
        repaired_groups=tuple(repaired),
        global_solve=global_solve,
    )


def erasure_pattern_recoverable(code: MrLrcCode, erased: Sequence[bool]) -> bool:
    """True iff the non-erased generator columns have rank ``K``."""

    if len(erased) != code.profile.N:
        raise LengthMismatch(f"mask has {len(erased)} entries, expected {code.profile.N}")
    survivors = [c for c, gone in enumerate(erased) if not gone]
    if len(survivors) < code.profile.K:
        return False
    return rank(submatrix(code.generator, None, survivors)) == code.profile.K


@dataclass(frozen=True)
class UpdateResult:
    codeword: list[FieldElement]
    touched: tuple[int, ...]


def update_symbol(
    code: MrLrcCode,
    codeword: Sequence[FieldElement | int],
    group: int,
    index: int,
    new_value: FieldElement | int,
) -> UpdateResult:
    """Replace message symbol ``index`` of ``group`` and patch the affected columns.

    Only columns in the support of the corresponding generator row change: the
    group's own columns and, for ``index < h``, global parity ``index``.

    Raises
    ------
    IndexOutOfRange, InconsistentCodeword
    """

    profile, f = code.profile, code.ext_field
    if not 0 <= group < profile.ell:
        raise IndexOutOfRange(f"group {group} outside 0..{profile.ell - 1}")
    if not 0 <= index < profile.ks[group]:
        raise IndexOutOfRange(f"index {index} outside 0..{profile.ks[group] - 1}")
    decoded = decode_erasures(code, list(codeword))
    row = profile.row_offsets[group] + index
    new = _values(f, [new_value])[0]
    diff = f.sub(new, decoded.message[row].value)
    generator_row = code.generator.row(row)
    touched = tuple(c for c, entry in enumerate(generator_row) if entry)
    values = [symbol.value for symbol in decoded.codeword]
    for c in touched:
        values[c] = f.add(values[c], f.mul(diff, generator_row[c]))
    globals_touched = [c for c in touched if c in profile.global_columns]
    logger.debug(
        "Update of group %d index %d touched %d columns (%d global)",
        group,
        index,
        len(touched),
        len(globals_touched),
    )
    return UpdateResult(codeword=[FieldElement(f, v) for v in values], touched=touched)


# ---------------------------------------------------------------------------
# Weight quadratic form
# ---------------------------------------------------------------------------


def qh(xs: Sequence[int]) -> int:
    """``sum_{i<j} (j - i) x_i x_j``."""

    return sum((j - i) * xs[i] * xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs)))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ordered ways to write ``total`` as ``parts`` nonnegative integers."""

    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in compositions(total - head, parts - 1):
            yield (head, *tail)


def qh_max(ell: int, h: int) -> int:
    """Brute-force maximum of :func:`qh` over compositions of ``h`` into ``ell`` parts."""

    if ell < 1 or h < 0:
        raise ProfileViolation(f"qh_max needs ell >= 1 and h >= 0, got ell={ell}, h={h}")
    return max(qh(xs) for xs in compositions(h, ell))


def qh_closed_form(ell: int, h: int) -> int:
    return (ell - 1) * (h // 2) * ((h + 1) // 2)


__all__ = [
    "DecodeResult",
    "LocalityProfile",
    "MrLrcCode",
    "UpdateResult",
    "admissible_column_sets",
    "assemble_generator",
    "build_profile",
    "build_mr_lrc",
    "compositions",
    "decode_erasures",
    "degree_search_builder",
    "diagonal_parity",
    "encode",
    "erasure_pattern_recoverable",
    "field_degree_bound",
    "local_rank_check",
    "qh",
    "qh_closed_form",
    "qh_max",
    "structure_violations",
    "update_symbol",
    "verify_mr",
    "zero_parities",
]
