"""Unit tests for the problems package."""
