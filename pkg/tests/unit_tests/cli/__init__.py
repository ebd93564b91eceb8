"""Unit tests for the cli package."""
