"""Unit tests for the calculus package."""
