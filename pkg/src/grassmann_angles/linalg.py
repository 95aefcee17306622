"""Field-generic dense linear algebra kernels.

Matrices are plain 2-D numpy arrays (float64 or complex128, row-major); the
LAPACK-backed fast paths (pivoted-LU determinant, SVD) sit behind small
wrappers so that everything above this module goes through one place.  The
Laplace-expansion determinant is deliberately *not* LAPACK-backed: it is the
independent oracle the fast path is tested against, so it only uses naive
cofactor recursion.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, MultiIndexError, SingularPivotError
from .fields import DEFAULT_TOLERANCE, Tolerance

# Naive cofactor recursion is O(n!); anything bigger than this is a mistake.
_COFACTOR_LIMIT = 10


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    return arr


def gram(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix of inner products ``<x_i, y_j>`` of the columns of x and y.

    Conjugate-linear in the first argument, so this is ``x* y``.
    """
    return x.conj().T @ y


def det(m) -> complex | float:
    """Determinant via pivoted LU (the fast path).

    Raises DimensionMismatchError for non-square input.  The 0x0 determinant
    is 1 (empty product).
    """
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"determinant needs a square matrix, got {arr.shape}")
    if arr.shape[0] == 0:
        return 1.0 + 0j if np.iscomplexobj(arr) else 1.0
    value = np.linalg.det(arr)
    return complex(value) if np.iscomplexobj(arr) else float(value)


def _cofactor_det(m: np.ndarray) -> complex | float:
    # first-row cofactor expansion; independent of LAPACK by design
    n = m.shape[0]
    if n == 0:
        return 1.0
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    total = 0.0
    cols = np.arange(n)
    for j in range(n):
        minor = m[1:][:, cols != j]
        total += (-1) ** j * m[0, j] * _cofactor_det(minor)
    return total


def _validate_multi_index(cols, q: int) -> tuple[int, ...]:
    idx = tuple(int(j) for j in cols)
    if any(j < 1 or j > q for j in idx):
        raise MultiIndexError(f"indices {idx} out of range [1, {q}]")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise MultiIndexError(f"indices {idx} are not strictly increasing")
    return idx


def laplace_expand_det(m, cols) -> complex | float:
    """Determinant by Laplace expansion along the column set ``cols``.

    ``cols`` is a strictly increasing sequence of 1-based column indices with
    ``1 <= len(cols) < q``.  The expansion sums, over all row sets I of the
    same size, ``(-1)^(|I|+|J|) det(M[I, J]) det(M[^I, ^J])`` with the
    complementary minors.  Sub-determinants use cofactor recursion, keeping
    this routine an oracle that shares no code with :func:`det`.
    """
    from itertools import combinations

    arr = as_matrix(m)
    q = arr.shape[0]
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"Laplace expansion needs a square matrix, got {arr.shape}")
    if q > _COFACTOR_LIMIT:
        raise DimensionMismatchError(f"Laplace oracle is capped at {_COFACTOR_LIMIT}x{_COFACTOR_LIMIT}")
    j_idx = _validate_multi_index(cols, q)
    p = len(j_idx)
    if not 1 <= p < q:
        raise MultiIndexError(f"column set must satisfy 1 <= p < q, got p={p}, q={q}")

    j0 = [j - 1 for j in j_idx]
    j0_hat = [j for j in range(q) if j not in set(j0)]
    sign_j = sum(j_idx)
    total = 0.0
    for rows in combinations(range(1, q + 1), p):
        i0 = [i - 1 for i in rows]
        i0_hat = [i for i in range(q) if i not in set(i0)]
        sign = (-1) ** (sum(rows) + sign_j)
        total += sign * _cofactor_det(arr[np.ix_(i0, j0)]) * _cofactor_det(arr[np.ix_(i0_hat, j0_hat)])
    return complex(total) if np.iscomplexobj(arr) else float(total)


def schur_det(a, b, c, d, pivot: str = "A", tol: Tolerance = DEFAULT_TOLERANCE) -> complex | float:
    """Determinant of the block matrix [[A, B], [C, D]] via a Schur complement.

    ``pivot="A"`` evaluates det(A) * det(D - C A^-1 B); ``pivot="D"``
    evaluates det(D) * det(A - B D^-1 C).  The pivot block must be square and
    invertible (smallest singular value above rank_eps times the largest),
    otherwise SingularPivotError is raised and the caller should fall back to
    a direct determinant of the assembled matrix.
    """
    a, b, c, d = (as_matrix(x) for x in (a, b, c, d))
    qq, pp = a.shape[0], d.shape[0]
    if a.shape != (qq, qq) or d.shape != (pp, pp):
        raise DimensionMismatchError("diagonal blocks A and D must be square")
    if b.shape != (qq, pp) or c.shape != (pp, qq):
        raise DimensionMismatchError(
            f"off-diagonal blocks must be {qq}x{pp} and {pp}x{qq}, got {b.shape} and {c.shape}"
        )
    if pivot not in ("A", "D"):
        raise ValueError(f"pivot must be 'A' or 'D', got {pivot!r}")

    block = a if pivot == "A" else d
    if block.shape[0] > 0:
        s = np.linalg.svd(block, compute_uv=False)
        if s[0] == 0.0 or s[-1] <= tol.rank_eps * s[0]:
            raise SingularPivotError(f"pivot block {pivot} is numerically singular")
    if pivot == "A":
        complement = d - c @ np.linalg.solve(a, b) if qq else d
    else:
        complement = a - b @ np.linalg.solve(d, c) if pp else a
    return det(block) * det(complement)


def orthonormalize(columns, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[np.ndarray, int]:
    """Orthonormal basis of the column space, by modified Gram-Schmidt.

    Returns ``(q, rank)`` where q has ``rank`` orthonormal columns and column
    i of q lies in the span of the first i independent input columns.  A
    column whose residual after projection drops below ``rank_eps`` times its
    original norm is dropped as dependent.  One re-orthogonalization pass
    keeps ``q* q`` within ~1e-15 of the identity.
    """
    arr = as_matrix(columns)
    n = arr.shape[0]
    kept: list[np.ndarray] = []
    for j in range(arr.shape[1]):
        v = arr[:, j].astype(arr.dtype, copy=True)
        original = np.linalg.norm(v)
        for _ in range(2):
            for q in kept:
                v -= q * np.vdot(q, v)
        norm = np.linalg.norm(v)
        if norm > tol.rank_eps * original and norm > 0.0:
            kept.append(v / norm)
    if not kept:
        return np.zeros((n, 0), dtype=arr.dtype), 0
    return np.column_stack(kept), len(kept)


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``m = u @ diag(s) @ v*`` with s sorted descending.

    Works over both fields; u and v have orthonormal columns.
    """
    arr = as_matrix(m)
    if 0 in arr.shape:
        k = min(arr.shape)
        return (
            np.zeros((arr.shape[0], k), dtype=arr.dtype),
            np.zeros(k),
            np.zeros((arr.shape[1], k), dtype=arr.dtype),
        )
    u, s, vh = np.linalg.svd(arr, full_matrices=False)
    return u, s, vh.conj().T
