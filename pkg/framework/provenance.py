"""Content digests and provenance records for descriptors and reports."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from collections.abc import Mapping, MutableMapping, Sequence
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from typing import Any

logger = logging.getLogger(__name__)

DIGEST_ALGORITHM = os.getenv("CODING_DIGEST_ALGORITHM", "sha256")
VOLATILE_KEYS = frozenset({"elapsed_ms", "recorded_at"})


def hash_bytes(payload: bytes, *, algorithm: str = DIGEST_ALGORITHM) -> str:
    """Return a hexadecimal digest for the provided byte payload."""

    if not isinstance(payload, (bytes, bytearray)):
        raise TypeError("hash_bytes expects a bytes-like object")
    digest = hashlib.new(algorithm)
    digest.update(payload)
    return digest.hexdigest()


def _stringify(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (datetime, date)):
        return value.isoformat()
    if isinstance(value, bytes):
        return value.decode("utf-8", errors="ignore")
    if isinstance(value, Mapping):
        return {str(key): _stringify(item) for key, item in value.items()}
    if isinstance(value, Sequence) and not isinstance(value, (str, bytes, bytearray)):
        return [_stringify(item) for item in value]
    if hasattr(value, "model_dump"):
        return _stringify(value.model_dump(mode="json"))
    return str(value)


def _strip_volatile(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {
            key: _strip_volatile(item) for key, item in value.items() if key not in VOLATILE_KEYS
        }
    if isinstance(value, list):
        return [_strip_volatile(item) for item in value]
    return value


def canonical_json(payload: Any) -> str:
    """Sorted, whitespace-free JSON with wall-clock fields removed."""

    return json.dumps(
        _strip_volatile(_stringify(payload)), sort_keys=True, separators=(",", ":")
    )


def content_digest(payload: Any, *, algorithm: str = DIGEST_ALGORITHM) -> str:
    return hash_bytes(canonical_json(payload).encode("utf-8"), algorithm=algorithm)


@dataclass(frozen=True)
class ProvenanceRecord:
    source: str
    digest: str
    recorded_at: str
    meta: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "digest": self.digest,
            "recorded_at": self.recorded_at,
            "meta": self.meta,
        }


def _sanitize_meta(meta: Mapping[str, Any] | None) -> MutableMapping[str, Any]:
    payload: MutableMapping[str, Any] = {}
    if not meta:
        return payload
    for key, value in meta.items():
        payload[str(key)] = _stringify(value)
    return payload


def record_provenance(
    source: str, payload: Any, meta: Mapping[str, Any] | None = None
) -> ProvenanceRecord:
    """Digest ``payload`` and log a provenance line for it."""

    record = ProvenanceRecord(
        source=source,
        digest=content_digest(payload),
        recorded_at=datetime.now(timezone.utc).isoformat(),
        meta=dict(_sanitize_meta(meta)),
    )
    logger.info("Provenance %s %s=%s", source, DIGEST_ALGORITHM, record.digest)
    return record


__all__ = [
    "DIGEST_ALGORITHM",
    "ProvenanceRecord",
    "canonical_json",
    "content_digest",
    "hash_bytes",
    "record_provenance",
]
