"""Exact arithmetic in prime and extension fields GF(p^m).

Elements are stored by their canonical integer encoding
``enc(x) = sum(coeffs[i] * p**i)`` over the polynomial basis of a monic
irreducible modulus. Small fields (order at most ``GF_TABLE_LIMIT``) multiply
through log/exp tables; larger fields fall back to schoolbook polynomial
multiplication with extended-Euclid inverses. Both paths produce identical
results.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy import Poly, factorint, isprime, symbols

from coding.errors import (
    DivisionByZero,
    FieldMismatch,
    NoSubfield,
    NotPrime,
    OrderOverflow,
    ReducibleModulus,
)

logger = logging.getLogger(__name__)

GF_MAX_ORDER = 2**31
GF_TABLE_LIMIT = int(os.getenv("GF_TABLE_LIMIT", str(1 << 16)))

_X = symbols("x")


# ---------------------------------------------------------------------------
# Polynomials over GF(p), little-endian coefficient lists
# ---------------------------------------------------------------------------


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    rem = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(rem) - len(den) + 1, 0)
    while len(rem) >= len(den) and rem:
        shift = len(rem) - len(den)
        factor = (rem[-1] * inv_lead) % p
        quot[shift] = factor
        for i, coeff in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * coeff) % p
        _trim(rem)
    return _trim(quot), rem


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    size = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(size)
    ]
    return _trim(out)


def is_irreducible(p: int, coeffs: Sequence[int]) -> bool:
    """Return ``True`` when the little-endian polynomial is irreducible over GF(p)."""

    poly = _trim([int(c) % p for c in coeffs])
    if len(poly) < 2:
        return False
    if len(poly) == 2:
        return True
    return bool(Poly(list(reversed(poly)), _X, modulus=p).is_irreducible)


# ---------------------------------------------------------------------------
# Field configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldConfig:
    """An explicit finite field GF(p^m) with a fixed polynomial basis."""

    p: int
    m: int
    modulus: tuple[int, ...]

    # -- basic metadata -----------------------------------------------------
    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def name(self) -> str:
        return f"GF({self.order})"

    def __repr__(self) -> str:
        return f"FieldConfig({self.name}, modulus={list(self.modulus)})"

    def describe(self) -> dict[str, object]:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, payload: dict[str, object]) -> FieldConfig:
        modulus = payload.get("modulus")
        return make_field(
            int(payload["p"]),  # type: ignore[call-overload]
            int(payload["m"]),  # type: ignore[call-overload]
            None if modulus is None else [int(c) for c in modulus],  # type: ignore[union-attr]
        )

    # -- element construction -----------------------------------------------
    def element(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not a canonical encoding in {self.name}")
        return FieldElement(self, int(value))

    __call__ = element

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def constant(self, value: int) -> FieldElement:
        """Image of the integer ``value`` in the prime subfield."""

        return FieldElement(self, value % self.p)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        return FieldElement(self, self._from_digits(_reduce(list(coeffs), self.modulus, self.p)))

    def elements(self) -> Iterator[FieldElement]:
        for value in range(self.order):
            yield FieldElement(self, value)

    # -- digit plumbing -------------------------------------------------------
    def _digits(self, value: int) -> list[int]:
        digits = []
        for _ in range(self.m):
            value, digit = divmod(value, self.p)
            digits.append(digit)
        return digits

    def _from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for digit in reversed(digits):
            value = value * self.p + digit
        return value

    # -- integer-level arithmetic -------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.m == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.m == 1:
            return (-a) % p
        if p == 2:
            return a
        out, place = 0, 1
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return (a * b) % self.p
        if self._tables is not None:
            exp, log = self._tables
            return exp[log[a] + log[b]]
        return self._poly_mul_value(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self.name}")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self._tables is not None:
            exp, log = self._tables
            return exp[(self.order - 1 - log[a]) % (self.order - 1)]
        return self._euclid_inverse(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, exponent: int) -> int:
        if exponent < 0:
            return self.power(self.inv(a), -exponent)
        if exponent == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, exponent, self.p)
        if self._tables is not None:
            exp, log = self._tables
            return exp[(log[a] * exponent) % (self.order - 1)]
        result, base = 1, a
        while exponent:
            if exponent & 1:
                result = self._poly_mul_value(result, base)
            base = self._poly_mul_value(base, base)
            exponent >>= 1
        return result

    def _poly_mul_value(self, a: int, b: int) -> int:
        product = _poly_mul(self._digits(a), self._digits(b), self.p)
        return self._from_digits(_reduce(product, self.modulus, self.p))

    def _euclid_inverse(self, a: int) -> int:
        p = self.p
        r0, r1 = list(self.modulus), _trim(self._digits(a))
        s0: list[int] = []
        s1: list[int] = [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
        # r0 is a nonzero constant because the modulus is irreducible
        scale = pow(r0[0], -1, p)
        return self._from_digits(_reduce([(c * scale) % p for c in s0], self.modulus, p))

    def _order_of(self, a: int, mul) -> int:  # type: ignore[no-untyped-def]
        group = self.order - 1
        order = group
        for prime, multiplicity in factorint(group).items():
            for _ in range(multiplicity):
                candidate = order // prime
                if _pow_with(a, candidate, mul) == 1:
                    order = candidate
                else:
                    break
        return order

    @cached_property
    def primitive_value(self) -> int:
        """Smallest canonical encoding of a multiplicative generator."""

        group = self.order - 1
        if group == 1:
            return 1
        mul = (lambda x, y: (x * y) % self.p) if self.m == 1 else self._poly_mul_value
        prime_factors = list(factorint(group))
        for candidate in range(1, self.order):
            if all(_pow_with(candidate, group // r, mul) != 1 for r in prime_factors):
                return candidate
        raise AssertionError(f"{self.name} has no generator")  # pragma: no cover

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]] | None:
        if self.m == 1 or self.order > GF_TABLE_LIMIT:
            if self.m > 1:
                logger.debug("%s exceeds table limit %d; using polynomial arithmetic", self.name,
                             GF_TABLE_LIMIT)
            return None
        group = self.order - 1
        generator = self.primitive_value
        exp = [0] * (2 * group)
        log = [0] * self.order
        value = 1
        for i in range(group):
            exp[i] = value
            log[value] = i
            value = self._poly_mul_value(value, generator)
        for i in range(group, 2 * group):
            exp[i] = exp[i - group]
        return exp, log


def _pow_with(a: int, exponent: int, mul) -> int:  # type: ignore[no-untyped-def]
    result, base = 1, a
    while exponent:
        if exponent & 1:
            result = mul(result, base)
        base = mul(base, base)
        exponent >>= 1
    return result


def _reduce(poly: list[int], modulus: Sequence[int], p: int) -> list[int]:
    """Reduce ``poly`` modulo the monic ``modulus``; returns exactly ``deg`` digits."""

    m = len(modulus) - 1
    poly = [c % p for c in poly]
    for top in range(len(poly) - 1, m - 1, -1):
        factor = poly[top]
        if factor == 0:
            continue
        shift = top - m
        for i, coeff in enumerate(modulus):
            poly[shift + i] = (poly[shift + i] - factor * coeff) % p
    poly = poly[:m]
    return poly + [0] * (m - len(poly))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of a :class:`FieldConfig`."""

    field: FieldConfig
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field.name}:{self.value}"

    def __bool__(self) -> bool:
        return self.value != 0

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> FieldElement:
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, value))

    __radd__ = __add__

    def __sub__(self, other: object) -> FieldElement:
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, value))

    def __rsub__(self, other: object) -> FieldElement:
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(value, self.value))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other: object) -> FieldElement:
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, value))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> FieldElement:
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, value))

    def __rtruediv__(self, other: object) -> FieldElement:
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(value, self.value))

    def __pow__(self, exponent: int) -> FieldElement:
        return FieldElement(self.field, self.field.power(self.value, exponent))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, power: int = 1) -> FieldElement:
        """Return ``x ** (p ** power)``."""

        return self ** (self.field.p ** (power % self.field.m))

    def multiplicative_order(self) -> int:
        if self.is_zero:
            raise DivisionByZero("zero has no multiplicative order")
        return self.field._order_of(self.value, self.field.mul)


# ---------------------------------------------------------------------------
# Field construction and structure
# ---------------------------------------------------------------------------


def make_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldConfig:
    """Build and validate GF(p^m).

    Parameters
    ----------
    p:
        Field characteristic; must be prime.
    m:
        Extension degree.
    modulus:
        Optional little-endian coefficients ``c_0 .. c_m`` of a monic irreducible
        polynomial. When omitted the irreducible monic polynomial with the smallest
        canonical encoding is selected.

    Raises
    ------
    NotPrime, ReducibleModulus, OrderOverflow
    """

    return _make_field(int(p), int(m), None if modulus is None else tuple(int(c) for c in modulus))


@lru_cache(maxsize=None)
def _make_field(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldConfig:
    if p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ReducibleModulus(f"extension degree must be positive, got {m}")
    if p**m > GF_MAX_ORDER:
        raise OrderOverflow(f"{p}^{m} exceeds the supported order {GF_MAX_ORDER}")
    if modulus is None:
        modulus = _default_modulus(p, m)
    else:
        if len(modulus) != m + 1 or modulus[-1] % p != 1:
            raise ReducibleModulus(f"modulus {list(modulus)} is not monic of degree {m}")
        if any(not 0 <= c < p for c in modulus):
            raise ReducibleModulus(f"modulus {list(modulus)} has coefficients outside GF({p})")
        if m > 1 and not is_irreducible(p, modulus):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
        if m == 1:
            # every monic linear modulus yields the same prime field
            modulus = _default_modulus(p, 1)
    field = FieldConfig(p=p, m=m, modulus=modulus)
    logger.debug("Constructed %r", field)
    return field


def field_of_order(q: int, modulus: Sequence[int] | None = None) -> FieldConfig:
    """``GF(q)`` for a prime power ``q``, factored with sympy.

    Raises
    ------
    NotPrime
        If ``q`` is not a prime power.
    """

    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, m),) = factors.items()
    return make_field(int(p), int(m), modulus)


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for low in range(p**m):
        coeffs = []
        for _ in range(m):
            low, digit = divmod(low, p)
            coeffs.append(digit)
        candidate = (*coeffs, 1)
        if is_irreducible(p, candidate):
            return candidate
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


def primitive_element(field: FieldConfig) -> FieldElement:
    """Multiplicative generator with the smallest canonical encoding."""

    return FieldElement(field, field.primitive_value)


def _subfield_degree(field: FieldConfig, over: int) -> int:
    if over < 1 or field.m % over != 0:
        raise NoSubfield(f"GF({field.p}^{over}) is not a subfield of {field.name}")
    return field.m // over


@lru_cache(maxsize=None)
def _embedding_root(source: FieldConfig, target: FieldConfig) -> int:
    """Smallest-encoding root of ``source.modulus`` inside ``target``."""

    if source.p != target.p:
        raise FieldMismatch(f"{source.name} and {target.name} have different characteristic")
    _subfield_degree(target, source.m)
    if source.m == 1:
        return 0
    # roots of an irreducible degree-a polynomial live in the unique subfield of order p^a
    group = target.order - 1
    sub_group = source.order - 1
    generator = target.power(target.primitive_value, group // sub_group)
    candidate = 1
    root = None
    for _ in range(sub_group):
        if _evaluate(target, source.modulus, candidate) == 0:
            root = candidate
            break
        candidate = target.mul(candidate, generator)
    if root is None:  # pragma: no cover - irreducible modulus always splits there
        raise NoSubfield(f"{source.name} modulus has no root in {target.name}")
    conjugates = [root]
    value = root
    for _ in range(source.m - 1):
        value = target.power(value, target.p)
        conjugates.append(value)
    return min(conjugates)


def _evaluate(field: FieldConfig, coeffs: Sequence[int], point: int) -> int:
    """Evaluate a GF(p)-coefficient polynomial at ``point`` (Horner)."""

    acc = 0
    for coeff in reversed(coeffs):
        acc = field.add(field.mul(acc, point), coeff % field.p)
    return acc


def embed(x: FieldElement, target: FieldConfig) -> FieldElement:
    """Ring-homomorphic image of ``x`` in a field whose degree is a multiple of its own."""

    source = x.field
    if source == target:
        return x
    if source.p != target.p:
        raise FieldMismatch(f"{source.name} and {target.name} have different characteristic")
    _subfield_degree(target, source.m)
    if source.m == 1:
        return FieldElement(target, x.value)
    root = _embedding_root(source, target)
    acc = 0
    for coeff in reversed(x.coeffs):
        acc = target.add(target.mul(acc, root), coeff)
    return FieldElement(target, acc)


@lru_cache(maxsize=None)
def _restriction_table(source: FieldConfig, target: FieldConfig) -> dict[int, int]:
    return {embed(element, target).value: element.value for element in source.elements()}


def restrict(y: FieldElement, subfield: FieldConfig) -> FieldElement:
    """Inverse of :func:`embed` for elements lying in the image of ``subfield``."""

    target = y.field
    if subfield == target:
        return y
    _subfield_degree(target, subfield.m)
    if subfield.m == 1:
        if y.value >= subfield.p:
            raise NoSubfield(f"{y!r} does not lie in {subfield.name}")
        return FieldElement(subfield, y.value)
    table = _restriction_table(subfield, target)
    if y.value not in table:
        raise NoSubfield(f"{y!r} does not lie in {subfield.name}")
    return FieldElement(subfield, table[y.value])


def subfield(field: FieldConfig, over: int) -> FieldConfig:
    """The default-modulus field GF(p^over) used as the subfield of ``field``."""

    _subfield_degree(field, over)
    return make_field(field.p, over)


def in_subfield(x: FieldElement, over: int) -> bool:
    _subfield_degree(x.field, over)
    return x ** (x.field.p**over) == x


def minimal_polynomial(x: FieldElement, over: int = 1) -> tuple[FieldElement, ...]:
    """Monic minimal polynomial of ``x`` over GF(p^over), little-endian.

    The polynomial is the product of ``X - c`` over the distinct Frobenius
    conjugates ``c = x^(q^i)`` with ``q = p^over``; its coefficients are returned
    as elements of :func:`subfield`.

    Raises
    ------
    NoSubfield
        If ``over`` does not divide the extension degree.
    """

    field = x.field
    _subfield_degree(field, over)
    q = field.p**over
    conjugates = [x]
    current = x**q
    while current != x:
        conjugates.append(current)
        current = current**q
    poly = [field.one]
    for root in conjugates:
        shifted = [field.zero, *poly]
        for i, coeff in enumerate(poly):
            shifted[i] = shifted[i] - root * coeff
        poly = shifted
    small = subfield(field, over)
    return tuple(restrict(coeff, small) for coeff in poly)


def linearly_independent_over(elems: Sequence[FieldElement], over: int) -> bool:
    """True iff no nontrivial GF(p^over)-combination of ``elems`` vanishes."""

    if not elems:
        return True
    field = elems[0].field
    for elem in elems:
        if elem.field != field:
            raise FieldMismatch(f"{elem.field.name} vs {field.name}")
    _subfield_degree(field, over)
    small = subfield(field, over)
    basis = [embed(small.element(small.p**t), field) for t in range(over)]
    rows = [list((elem * b).coeffs) for elem in elems for b in basis]
    return _rank_mod_p(rows, field.p) == len(rows)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    matrix = [list(row) for row in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col] % p), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = pow(matrix[rank][col], -1, p)
        matrix[rank] = [(v * inv) % p for v in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [(a - factor * b) % p for a, b in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank


__all__ = [
    "FieldConfig",
    "FieldElement",
    "GF_MAX_ORDER",
    "GF_TABLE_LIMIT",
    "embed",
    "field_of_order",
    "in_subfield",
    "is_irreducible",
    "linearly_independent_over",
    "make_field",
    "minimal_polynomial",
    "primitive_element",
    "restrict",
    "subfield",
]
