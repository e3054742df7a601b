"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import math

import numpy as np

from .exceptions import (
    DimensionMismatch,
    NonHermitianInput,
    NonSquareDims,
    NonSquareInput,
)


def as_complex_matrix(M, name: str = "M") -> np.ndarray:
    """Return ``M`` as a finite 2-D complex128 array."""
    arr = np.asarray(M)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def check_square(M, name: str = "M") -> np.ndarray:
    arr = as_complex_matrix(M, name)
    if arr.shape[0] != arr.shape[1]:
        raise NonSquareInput(f"{name} must be square, got shape {arr.shape}")
    return arr


def infer_dims(n: int) -> tuple[int, int]:
    k = math.isqrt(n)
    if k * k != n:
        raise DimensionMismatch(
            f"cannot infer local dimensions for a {n}x{n} operator; pass dims=(k, m)"
        )
    return k, k


def check_operator(A, dims=None) -> tuple[np.ndarray, tuple[int, int]]:
    """Validate a bipartite operator on C^k (x) C^m.

    Parameters
    ----------
    A : array_like, shape (k*m, k*m)
    dims : (int, int), optional
        Local dimensions. Inferred as (sqrt(n), sqrt(n)) when omitted.

    Returns
    -------
    A : ndarray of complex128
    dims : tuple (k, m)
    """
    arr = check_square(A, "A")
    n = arr.shape[0]
    if dims is None:
        dims = infer_dims(n)
    k, m = (int(d) for d in dims)
    if k < 1 or m < 1:
        raise DimensionMismatch(f"local dimensions must be positive, got {dims}")
    if k * m != n:
        raise DimensionMismatch(f"dims {(k, m)} do not match operator size {n}")
    return arr, (k, m)


def check_square_dims(dims) -> int:
    k, m = dims
    if k != m:
        raise NonSquareDims(f"operation requires k == m, got dims {tuple(dims)}")
    return k


def hermiticity_defect(M: np.ndarray) -> float:
    """Relative distance ``||M - M*||_F / max(||M||_F, 1e-300)``."""
    scale = np.linalg.norm(M)
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(M - M.conj().T) / scale)


def check_hermitian(M, tol: float, name: str = "M") -> np.ndarray:
    arr = check_square(M, name)
    defect = hermiticity_defect(arr)
    if defect > tol:
        raise NonHermitianInput(
            f"{name} is not Hermitian: ||M - M*|| / ||M|| = {defect:.3e} > {tol:.1e}"
        )
    return arr
