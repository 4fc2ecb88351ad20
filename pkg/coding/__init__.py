"""Exact finite-field arithmetic and matrix-completion code constructions."""

from coding.errors import CodingError
from coding.gf import FieldConfig, FieldElement, field_of_order, make_field

__all__ = ["CodingError", "FieldConfig", "FieldElement", "field_of_order", "make_field"]
