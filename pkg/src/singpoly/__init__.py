"""Exact Dunkl operators and singular polynomials for the symmetric group S_N."""
