"""Unit tests for the func package."""
