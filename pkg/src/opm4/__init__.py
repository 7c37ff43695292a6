"""Orthogonal permutative matrices of order 4: construction, decomposition, classification."""
