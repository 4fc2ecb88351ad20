"""OpenTelemetry helpers for initializing tracing across the library."""

from __future__ import annotations

import os
from threading import Lock

from opentelemetry import trace
from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import SERVICE_NAME, Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter

_LOCK = Lock()
_CONFIGURED = False


def _build_processor() -> BatchSpanProcessor | None:
    exporter_name = os.getenv("OTEL_TRACES_EXPORTER", "none").lower()
    endpoint = os.getenv("OTEL_EXPORTER_OTLP_ENDPOINT")

    if endpoint and exporter_name in {"otlp", "none"}:
        return BatchSpanProcessor(OTLPSpanExporter(endpoint=endpoint))
    if exporter_name == "console":
        return BatchSpanProcessor(ConsoleSpanExporter())
    return None


def init_tracing(service_name: str = "coding-completion") -> trace.Tracer:
    """Initialize tracing once and return a tracer for the requested service."""

    global _CONFIGURED

    with _LOCK:
        if not _CONFIGURED:
            resource = Resource.create({SERVICE_NAME: os.getenv("OTEL_SERVICE_NAME", service_name)})
            provider = TracerProvider(resource=resource)
            processor = _build_processor()
            if processor is not None:
                provider.add_span_processor(processor)
            trace.set_tracer_provider(provider)
            _CONFIGURED = True

    return trace.get_tracer(service_name)


__all__ = ["init_tracing"]
