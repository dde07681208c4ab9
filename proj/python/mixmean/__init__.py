"""Verifier for the mixed arithmetic-geometric mean inequality.

For a nonnegative m x n matrix and submatrix shape (k, l) with 2k > m and
2l > n, the geometric mean of the arithmetic means of all k x l submatrices
is at least the arithmetic mean of their geometric means, with equality
exactly for constant matrices.  This package evaluates both sides, checks
the decomposition identity and derivation chain behind the result, and
exposes the degenerate-range counterexample.
"""

from mixmean._core import (
    VerifierError,
    coefficient_check,
    counterexample,
    evaluate,
    holder_mixed,
    lemma_identity,
    parse_matrix,
    proof_trace,
    random_scan,
    serialize_matrix,
    subset_mixed_mean,
)

__all__ = [
    "VerifierError",
    "coefficient_check",
    "counterexample",
    "evaluate",
    "holder_mixed",
    "lemma_identity",
    "parse_matrix",
    "proof_trace",
    "random_scan",
    "serialize_matrix",
    "subset_mixed_mean",
]

__version__ = "1.0.0"
