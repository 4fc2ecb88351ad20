"""JSON descriptor documents for constructed codes.

Matrices are stored inline as integer grids using the canonical element
encoding. Reading re-checks field validity, matrix shapes and the block
structure; ``strict=True`` additionally checks the construction-specific
layout (diagonal parity powers, declared convolutional degree).
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    TypeAdapter,
    ValidationError,
    ValidationInfo,
    field_validator,
    model_validator,
)

from coding.completion import VerificationReport
from coding.convmdp import ConvCode, validate_code
from coding.errors import CodingError
from coding.exactla import MatrixOverField, from_ints
from coding.gf import FieldConfig, make_field
from coding.mrlrc import LocalityProfile, MrLrcCode, assemble_generator, structure_violations

logger = logging.getLogger(__name__)


class DescriptorError(CodingError):
    """Base class for descriptor document problems."""


class ParseError(DescriptorError):
    """The file is missing or is not JSON."""


class SchemaViolation(DescriptorError):
    """The JSON does not match the descriptor schema."""


class InvariantViolation(DescriptorError):
    """The document is well-formed but describes an invalid code."""


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class FieldModel(_Document):
    p: int = Field(ge=2)
    m: int = Field(ge=1)
    modulus: list[int]

    @model_validator(mode="after")
    def _monic_modulus(self) -> FieldModel:
        if len(self.modulus) != self.m + 1:
            raise ValueError(f"modulus needs {self.m + 1} coefficients")
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError(f"modulus coefficients must lie in 0..{self.p - 1}")
        return self

    @classmethod
    def from_field(cls, f: FieldConfig) -> FieldModel:
        return cls(p=f.p, m=f.m, modulus=list(f.modulus))

    def to_field(self) -> FieldConfig:
        try:
            return make_field(self.p, self.m, self.modulus)
        except CodingError as exc:
            raise InvariantViolation(f"invalid field: {exc}") from exc


class MatrixModel(_Document):
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    entries: list[list[int]]
    # absent means the enclosing document's field
    field: FieldModel | None = None

    @model_validator(mode="after")
    def _rectangular(self) -> MatrixModel:
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(f"row of length {len(row)} in a {self.cols}-column matrix")
            if any(v < 0 for v in row):
                raise ValueError("encodings are nonnegative")
        return self

    @classmethod
    def from_matrix(cls, m: MatrixOverField) -> MatrixModel:
        return cls(
            rows=m.rows, cols=m.cols, entries=m.to_ints(), field=FieldModel.from_field(m.field)
        )

    def to_matrix(self, f: FieldConfig) -> MatrixOverField:
        if self.field is not None and self.field.to_field() != f:
            raise InvariantViolation(
                f"matrix declares GF({self.field.p}^{self.field.m}) inside a {f.name} document"
            )
        if self.rows == 0 or self.cols == 0:
            return MatrixOverField(f, self.rows, self.cols, ())
        try:
            return from_ints(f, self.entries)
        except CodingError as exc:
            raise InvariantViolation(f"matrix entries outside {f.name}: {exc}") from exc


class ProfileModel(_Document):
    ell: int = Field(ge=1)
    h: int = Field(ge=0)
    ns: list[int]
    ks: list[int]


class MrLrcDescriptor(_Document):
    kind: Literal["mr-lrc"] = "mr-lrc"
    profile: ProfileModel
    base_field: FieldModel
    ext_field: FieldModel
    alpha: int = Field(ge=1)
    locals: list[MatrixModel]
    parities: list[MatrixModel]


class ConvDescriptor(_Document):
    kind: Literal["conv"] = "conv"
    n: int = Field(ge=1)
    k: int = Field(ge=1)
    delta: int = Field(ge=0)
    field: FieldModel
    base_field: FieldModel | None = None
    construction: str = ""
    coeffs: list[MatrixModel] = Field(min_length=1)


class ReportModel(_Document):
    passed: bool
    total_sets: int = Field(ge=0)
    checked_sets: int = Field(ge=0)
    failures: list[list[int]] = Field(default_factory=list)
    elapsed_ms: float = 0.0
    label: str = ""
    details: dict[str, Any] = Field(default_factory=dict)

    @field_validator("checked_sets")
    @classmethod
    def _bounded(cls, value: int, info: ValidationInfo) -> int:
        total = info.data.get("total_sets")
        if total is not None and value > total:
            raise ValueError("checked_sets exceeds total_sets")
        return value

    @classmethod
    def from_report(cls, report: VerificationReport) -> ReportModel:
        return cls.model_validate(report.as_dict())


Descriptor = Annotated[MrLrcDescriptor | ConvDescriptor, Field(discriminator="kind")]
_DESCRIPTOR_ADAPTER: TypeAdapter[MrLrcDescriptor | ConvDescriptor] = TypeAdapter(Descriptor)

Code = MrLrcCode | ConvCode


def descriptor_from_code(code: Code) -> MrLrcDescriptor | ConvDescriptor:
    if isinstance(code, MrLrcCode):
        profile = code.profile
        return MrLrcDescriptor(
            profile=ProfileModel(
                ell=profile.ell, h=profile.h, ns=list(profile.ns), ks=list(profile.ks)
            ),
            base_field=FieldModel.from_field(code.base_field),
            ext_field=FieldModel.from_field(code.ext_field),
            alpha=code.alpha.value,
            locals=[MatrixModel.from_matrix(m) for m in code.locals],
            parities=[MatrixModel.from_matrix(m) for m in code.parities],
        )
    if isinstance(code, ConvCode):
        return ConvDescriptor(
            n=code.n,
            k=code.k,
            delta=code.delta,
            field=FieldModel.from_field(code.field),
            base_field=None if code.base_field is None else FieldModel.from_field(code.base_field),
            construction=code.construction,
            coeffs=[MatrixModel.from_matrix(m) for m in code.coeffs],
        )
    raise TypeError(f"cannot describe {type(code).__name__}")


def _mrlrc_from_descriptor(doc: MrLrcDescriptor, strict: bool) -> MrLrcCode:
    base = doc.base_field.to_field()
    ext = doc.ext_field.to_field()
    if ext.p != base.p or ext.m % base.m:
        raise InvariantViolation(f"{ext.name} is not an extension of {base.name}")
    if doc.alpha >= ext.order:
        raise InvariantViolation(f"alpha={doc.alpha} is not an element of {ext.name}")
    try:
        profile = LocalityProfile(
            ell=doc.profile.ell, h=doc.profile.h, ns=tuple(doc.profile.ns), ks=tuple(doc.profile.ks)
        )
        code = MrLrcCode(
            profile=profile,
            base_field=base,
            ext_field=ext,
            alpha=ext.element(doc.alpha),
            locals=tuple(m.to_matrix(ext) for m in doc.locals),
            parities=tuple(m.to_matrix(ext) for m in doc.parities),
        )
        if len(code.locals) != profile.ell or len(code.parities) != profile.ell:
            raise InvariantViolation(f"expected {profile.ell} local and parity blocks")
        assemble_generator(profile, ext, code.locals, code.parities)
    except InvariantViolation:
        raise
    except CodingError as exc:
        raise InvariantViolation(str(exc)) from exc
    if strict:
        problems = structure_violations(code)
        if problems:
            raise InvariantViolation("; ".join(problems))
    return code


def _conv_from_descriptor(doc: ConvDescriptor, strict: bool) -> ConvCode:
    f = doc.field.to_field()
    base = doc.base_field.to_field() if doc.base_field is not None else None
    try:
        code = ConvCode(
            n=doc.n,
            k=doc.k,
            field=f,
            coeffs=tuple(m.to_matrix(f) for m in doc.coeffs),
            delta=doc.delta,
            base_field=base,
            construction=doc.construction,
        )
        if strict:
            validate_code(code)
    except InvariantViolation:
        raise
    except CodingError as exc:
        raise InvariantViolation(str(exc)) from exc
    return code


def code_from_descriptor(
    doc: MrLrcDescriptor | ConvDescriptor, *, strict: bool = False
) -> Code:
    """Rebuild the code object, re-checking every structural invariant.

    Raises
    ------
    InvariantViolation
        If the field, the matrix shapes, the block structure or (with
        ``strict``) the construction-specific layout is inconsistent.
    """

    if isinstance(doc, MrLrcDescriptor):
        return _mrlrc_from_descriptor(doc, strict)
    return _conv_from_descriptor(doc, strict)


def parse_descriptor(text: str) -> MrLrcDescriptor | ConvDescriptor:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"descriptor is not valid JSON: {exc}") from exc
    try:
        return _DESCRIPTOR_ADAPTER.validate_python(raw)
    except ValidationError as exc:
        raise SchemaViolation(str(exc)) from exc


def _read_validated(
    path: str | Path, strict: bool
) -> tuple[MrLrcDescriptor | ConvDescriptor, Code]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    doc = parse_descriptor(text)
    code = code_from_descriptor(doc, strict=strict)
    logger.debug("Read %s descriptor from %s", doc.kind, path)
    return doc, code


def read_descriptor(
    path: str | Path, *, strict: bool = False
) -> MrLrcDescriptor | ConvDescriptor:
    """Parse and validate a descriptor file."""

    return _read_validated(path, strict)[0]


def load_code(path: str | Path, *, strict: bool = False) -> Code:
    return _read_validated(path, strict)[1]


def dump_descriptor(doc: MrLrcDescriptor | ConvDescriptor) -> str:
    return json.dumps(doc.model_dump(mode="json"), indent=2) + "\n"


def write_descriptor(
    document: MrLrcDescriptor | ConvDescriptor | Code, path: str | Path
) -> Path:
    """Validate and write a descriptor; code objects are described first."""

    doc = (
        document
        if isinstance(document, (MrLrcDescriptor, ConvDescriptor))
        else descriptor_from_code(document)
    )
    code_from_descriptor(doc)
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dump_descriptor(doc), encoding="utf-8")
    logger.info("Wrote %s descriptor to %s", doc.kind, target)
    return target


__all__ = [
    "ConvDescriptor",
    "Descriptor",
    "DescriptorError",
    "FieldModel",
    "InvariantViolation",
    "MatrixModel",
    "MrLrcDescriptor",
    "ParseError",
    "ProfileModel",
    "ReportModel",
    "SchemaViolation",
    "code_from_descriptor",
    "descriptor_from_code",
    "dump_descriptor",
    "load_code",
    "parse_descriptor",
    "read_descriptor",
    "write_descriptor",
]
