"""
Command-line surface for ordsel.

This package provides:
- Settings and constants (config)
- The `ordsel` entry point and its subcommands
- Error-to-exit-code handling and timing (middleware)
- JSON-lines, CSV and markdown rendering (output)
"""

__all__ = []
