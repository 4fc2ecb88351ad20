"""Tracing setup shared by the sweeps, flows and CLI."""

from .otel import init_tracing

__all__ = ["init_tracing"]
