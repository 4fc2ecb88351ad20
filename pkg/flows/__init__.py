"""Prefect flows orchestrating long-running code searches."""

from .degree_scan import field_degree_scan

__all__ = ["field_degree_scan"]
