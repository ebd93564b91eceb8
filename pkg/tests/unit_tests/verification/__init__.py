"""Unit tests for the verification package."""
