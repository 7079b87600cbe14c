"""Involutive non-degenerate set-theoretic Yang-Baxter solutions, finite left
braces, and the brace structure on the permutation group of a solution."""

__version__ = "0.1.0"
