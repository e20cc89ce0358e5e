"""Tests for hexagauss.

Test structure:
    - unit/: Unit tests for individual modules and functions
    - integration/: Generate-and-verify pipeline and batch-level checks
    - helpers.py: Random multivectors and lines shared by the tests
"""
