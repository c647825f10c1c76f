"""Exact K-theoretic Hall algebra engine for symmetric quivers."""
