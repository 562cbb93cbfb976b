"""Dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced to [0, p). The rank
kernel is compiled with numba because the equivariant homology engine calls
it thousands of times on matrices of a few hundred rows.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def _rank_inplace(A, p):
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        # Fermat inverse
        inv = 1
        base = A[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(c, n):
            A[r, j] = A[r, j] * inv % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    if A[r, j] != 0:
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
    return r


def rank_mod_p(A, p: int) -> int:
    """Rank of ``A`` over F_p."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return int(_rank_inplace(np.ascontiguousarray(A % p), p))


@numba.njit(cache=True)
def _rref_inplace(A, p):
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = 1
        base = A[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for j in range(n):
            A[r, j] = A[r, j] * inv % p
        for i in range(m):
            f = A[i, c]
            if i != r and f != 0:
                for j in range(n):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


def rref_mod_p(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the list of pivot columns."""
    R = np.ascontiguousarray(np.array(A, dtype=np.int64) % p)
    if R.size == 0:
        return R, []
    return R, [int(c) for c in _rref_inplace(R, p)]


def _kernel_from_rref(R, pivots, n, p):
    free = [j for j in range(n) if j not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = (-R[i, f]) % p
    return basis


def nullspace_mod_p(A, p: int) -> np.ndarray:
    """Basis of {x : A x = 0} over F_p, one basis vector per row."""
    A = np.asarray(A, dtype=np.int64)
    R, pivots = rref_mod_p(A, p)
    return _kernel_from_rref(R, pivots, A.shape[1], p)


def solve_affine_mod_p(A, b, p: int) -> tuple[np.ndarray, np.ndarray] | None:
    """All solutions of A x = b as (particular solution, kernel basis), or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    R, pivots = rref_mod_p(np.hstack([A, b]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x, _kernel_from_rref(R, pivots, n, p)


def solve_mod_p(A, b, p: int) -> np.ndarray | None:
    """One solution of A x = b over F_p (free variables set to 0), or None."""
    sol = solve_affine_mod_p(A, b, p)
    return None if sol is None else sol[0]
