"""Configurable acceptance pipeline for the code constructions."""

from suites.acceptance.pipeline import AcceptanceSuite, SuiteRuntime, main

__all__ = ["AcceptanceSuite", "SuiteRuntime", "main"]
