"""Tensor-product vocabulary for operators on C^k (x) C^m.

Index convention (used by every reshape in the package): the Kronecker vector
``a (x) b`` has entry ``i*m + j`` equal to ``a[i] * b[j]``. An operator
``A`` on C^k (x) C^m is viewed as the 4-index tensor ``A4[i, p, j, q]`` with
row ``(i, p)`` and column ``(j, q)``, so that ``(C (x) D)4[i, p, j, q] =
C[i, j] * D[p, q]``.
"""

from __future__ import annotations

import numpy as np

from .validation import check_operator


def kron(A, B) -> np.ndarray:
    return np.kron(np.asarray(A), np.asarray(B))


def vec_f(M) -> np.ndarray:
    """Row-major vectorization: ``vec_f(a b^t) = a (x) b``.

    Rectangular input is accepted; the inverse then needs the shape.
    """
    return np.asarray(M).reshape(-1)


def unvec_f(v, shape=None) -> np.ndarray:
    v = np.asarray(v).reshape(-1)
    if shape is None:
        k = int(round(np.sqrt(v.size)))
        if k * k != v.size:
            raise ValueError(f"vector of length {v.size} is not a square matrix")
        shape = (k, k)
    return v.reshape(shape)


def is_hermitian_vector(v, tol: float = 1e-10) -> bool:
    """True if ``unvec_f(v)`` is a Hermitian matrix."""
    M = unvec_f(v)
    scale = max(np.linalg.norm(M), 1e-300)
    return bool(np.linalg.norm(M - M.conj().T) <= tol * scale)


def flip(k: int) -> np.ndarray:
    """Flip operator ``T`` on C^k (x) C^k with ``T (a (x) b) = b (x) a``."""
    T4 = np.einsum("iq,pj->ipjq", np.eye(k), np.eye(k))
    return T4.reshape(k * k, k * k).astype(np.complex128)


def max_entangled_u(k: int) -> np.ndarray:
    """``u = sum_i e_i (x) e_i`` (unnormalized)."""
    return vec_f(np.eye(k, dtype=np.complex128))


def as_tensor(A, dims) -> np.ndarray:
    k, m = dims
    return np.asarray(A).reshape(k, m, k, m)


def realign(A, dims=None) -> np.ndarray:
    """Realignment ``S``: ``a b^t (x) c d^t  ->  (a (x) b)(c (x) d)^t``.

    Equivalently ``S(C (x) D) = vec_f(C) vec_f(D)^t``. The result has shape
    ``(k*k, m*m)``; for k == m it is again an operator on C^k (x) C^k and
    ``S`` is an involution.
    """
    A, (k, m) = check_operator(A, dims)
    return as_tensor(A, (k, m)).transpose(0, 2, 1, 3).reshape(k * k, m * m)


def unrealign(R, dims) -> np.ndarray:
    """Inverse of :func:`realign` for rectangular ``(k*k, m*m)`` input."""
    k, m = dims
    R = np.asarray(R)
    if R.shape != (k * k, m * m):
        raise ValueError(f"expected shape {(k * k, m * m)}, got {R.shape}")
    return R.reshape(k, k, m, m).transpose(0, 2, 1, 3).reshape(k * m, k * m)


def partial_transpose(A, dims=None, slot: str = "second") -> np.ndarray:
    """Transpose one tensor factor: ``C (x) D -> C (x) D^t`` (slot='second')."""
    A, (k, m) = check_operator(A, dims)
    A4 = as_tensor(A, (k, m))
    if slot == "second":
        out = A4.transpose(0, 3, 2, 1)
    elif slot == "first":
        out = A4.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"slot must be 'first' or 'second', got {slot!r}")
    return out.reshape(k * m, k * m)


def local_compress(A, V, W) -> np.ndarray:
    """``(V (x) W) A (V (x) W)``."""
    P = np.kron(V, W)
    return P @ A @ P


def hermitian_conjugate_vec(x: np.ndarray, shape) -> np.ndarray:
    """``vec_f(unvec_f(x)^*)``, the conjugation J on vectorized matrices."""
    return vec_f(unvec_f(x, shape).conj().T)


def hermitian_span_basis(Q: np.ndarray, k: int, tol: float = 1e-6) -> np.ndarray:
    """Orthonormal basis of Hermitian vectors for the span of ``Q``'s columns.

    ``Q`` (shape ``(k*k, r)``) must have orthonormal columns spanning a
    subspace closed under ``X -> X^*``. Each column is split as
    ``x = h1 + i h2`` with ``h1 = (x + x^*)/2``, ``h2 = (x - x^*)/(2i)``; the
    2r Hermitian candidates are orthonormalized in the real inner product
    ``tr(h h')``. Returns ``None`` if the candidates do not span exactly an
    r-dimensional real space (the subspace is not conjugation-closed).
    """
    n, r = Q.shape
    if r == 0:
        return Q
    cands = []
    for col in Q.T:
        star = hermitian_conjugate_vec(col, (k, k))
        cands.append(0.5 * (col + star))
        cands.append(-0.5j * (col - star))
    C = np.array(cands).T
    real = np.vstack([C.real, C.imag])
    U, s, _ = np.linalg.svd(real, full_matrices=False)
    # singular values squared sum to r; a closed subspace gives r values ~1
    if s[r - 1] < tol or (s.size > r and s[r] > tol):
        return None
    U = U[:, :r]
    return U[:n] + 1j * U[n:]
