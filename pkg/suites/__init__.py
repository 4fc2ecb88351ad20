"""Acceptance suites exercising the constructions end to end."""
