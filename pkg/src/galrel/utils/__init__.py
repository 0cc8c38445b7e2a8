"""Utilities for galrel."""
