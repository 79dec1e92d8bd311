"""Shared store for acceptance result lines (printed at session end)."""

LINES: dict[str, str] = {}
