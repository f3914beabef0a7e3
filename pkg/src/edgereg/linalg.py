"""Matrix rank over GF(p) and over the rationals."""

from __future__ import annotations

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) by dense Gaussian elimination."""
    if p >= 2**31:
        raise ValueError("prime too large for int64 elimination")
    A = np.array(matrix, dtype=np.int64) % p
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(A[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank, c:] = (A[rank, c:] * inv) % p
        below = np.flatnonzero(A[rank + 1 :, c]) + rank + 1
        if below.size:
            factors = A[below, c][:, None]
            A[below, c:] = (A[below, c:] - factors * A[rank, c:]) % p
        rank += 1
    return rank


def rank_rational(matrix: np.ndarray) -> int:
    A = np.asarray(matrix)
    if A.size == 0:
        return 0
    dm = DomainMatrix([[QQ(int(x)) for x in row] for row in A.tolist()], A.shape, QQ)
    return dm.rank()


def rank(matrix: np.ndarray, characteristic: int) -> int:
    A = np.asarray(matrix)
    if A.size == 0 or not A.any():
        return 0
    if characteristic == 0:
        return rank_rational(A)
    return rank_mod_p(A, characteristic)
