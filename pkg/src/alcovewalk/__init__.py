"""Macdonald polynomials via alcove walks."""
