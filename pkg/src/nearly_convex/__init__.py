"""Approximate subdifferential calculus for nearly convex functions and sets."""
