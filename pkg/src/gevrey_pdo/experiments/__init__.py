"""Batch verification suites, configuration and reports."""
