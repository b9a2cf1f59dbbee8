"""Exact dense linear algebra over F_p on numpy int64 matrices.

Row reduction uses partial pivoting by first nonzero entry in a fixed
scan order, so every result is deterministic.  Elimination is applied
to whole matrices at a time; entries stay below p after each step and
intermediate products fit comfortably in int64 for the primes used
here (p^2 * rows stays far below 2^63).
"""

from __future__ import annotations

import numpy as np


def rref_modp(A: np.ndarray, p: int):
    """Reduced row echelon form and pivot columns of A over F_p."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        col = R[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            R[[r, pivot]] = R[[pivot, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        factors = R[:, c].copy()
        factors[r] = 0
        mask = factors != 0
        if mask.any():
            R[mask] = (R[mask] - factors[mask, None] * R[r][None, :]) % p
        pivots.append(c)
        r += 1
    return R[:r], tuple(pivots)


def rank_modp(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return rref_modp(A, p)[0].shape[0]


def nullspace_modp(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel as rows, one per free column.

    Free columns are visited in ascending order and the corresponding
    basis vector has a 1 in that position, so the output is canonical.
    """
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    if rows == 0 or A.size == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref_modp(A, p)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(R[i, c])) % p
    return basis


def reduce_rows(P: np.ndarray, R: np.ndarray, pivots, p: int) -> np.ndarray:
    """Residues of the rows of P modulo the row space of an RREF R."""
    if P.size == 0 or R.size == 0:
        return P % p if P.size else P
    coeffs = P[:, list(pivots)] % p
    return (P - coeffs @ R) % p


def span_rows(P: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (RREF rows) of the row space of P."""
    if P.size == 0:
        return P
    return rref_modp(P, p)[0]
