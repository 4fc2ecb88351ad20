"""Descriptor persistence and provenance helpers."""

from framework.descriptors import (
    DescriptorError,
    load_code,
    read_descriptor,
    write_descriptor,
)
from framework.provenance import content_digest, record_provenance

__all__ = [
    "DescriptorError",
    "content_digest",
    "load_code",
    "read_descriptor",
    "record_provenance",
    "write_descriptor",
]
