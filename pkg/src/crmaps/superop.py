"""Linear maps between matrix spaces in vectorized form.

``G_A: M_k -> M_m`` and ``F_A: M_m -> M_k`` are the trace-adjoint pair
attached to a Hermitian bipartite operator ``A``; ``F_A o G_A`` is a
self-adjoint positive map on ``M_k`` whenever ``A`` is PSD. Matrices are
stored in ``vec_f`` coordinates, so ``apply(X) = unvec_f(matrix @ vec_f(X))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Tolerances, resolve
from .exceptions import NoConvergence, NotPsdInput, ZeroMap
from .linalg import is_psd
from .schmidt import partial_map_f, partial_map_g
from .tensor import unvec_f, vec_f
from .validation import check_hermitian, check_operator


@dataclass(frozen=True)
class SuperOperator:
    """Linear map ``M_k -> M_m`` stored as an ``m^2 x k^2`` matrix."""

    source_dim: int
    target_dim: int
    matrix: np.ndarray

    def apply(self, X) -> np.ndarray:
        X = np.asarray(X)
        if X.shape != (self.source_dim, self.source_dim):
            raise ValueError(f"expected a {self.source_dim}x{self.source_dim} matrix")
        return unvec_f(self.matrix @ vec_f(X), (self.target_dim, self.target_dim))

    __call__ = apply

    def adjoint(self) -> "SuperOperator":
        return SuperOperator(self.target_dim, self.source_dim, self.matrix.conj().T)

    def compose(self, other: "SuperOperator") -> "SuperOperator":
        """``self o other`` (apply ``other`` first)."""
        if other.target_dim != self.source_dim:
            raise ValueError("dimension mismatch in composition")
        return SuperOperator(other.source_dim, self.target_dim, self.matrix @ other.matrix)

    def eigvalsh(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))


def from_function(fn, source_dim: int, target_dim: int) -> SuperOperator:
    """Matrix of a linear map, built column by column on matrix units."""
    n = source_dim * source_dim
    M = np.zeros((target_dim * target_dim, n), dtype=np.complex128)
    for idx in range(n):
        E = np.zeros((source_dim, source_dim), dtype=np.complex128)
        E.flat[idx] = 1.0
        M[:, idx] = vec_f(fn(E))
    return SuperOperator(source_dim, target_dim, M)


def _g_unchecked(A, dims) -> SuperOperator:
    k, m = dims
    return from_function(lambda X: partial_map_g(A, dims, X), k, m)


def _f_unchecked(A, dims) -> SuperOperator:
    k, m = dims
    return from_function(lambda Y: partial_map_f(A, dims, Y), m, k)


def _fg_unchecked(A, dims) -> SuperOperator:
    return _f_unchecked(A, dims).compose(_g_unchecked(A, dims))


def g_of(A, dims=None, tols: Tolerances | None = None) -> SuperOperator:
    """``G_A`` with ``tr(A (X (x) Y)) = tr(G_A(X) Y)``."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    check_hermitian(A, tols.herm, "A")
    return _g_unchecked(A, dims)


def f_of(A, dims=None, tols: Tolerances | None = None) -> SuperOperator:
    """``F_A`` with ``tr(A (X (x) Y)) = tr(X F_A(Y))``; the adjoint of ``G_A``."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    check_hermitian(A, tols.herm, "A")
    return _f_unchecked(A, dims)


def fg_of(A, dims=None, tols: Tolerances | None = None) -> SuperOperator:
    """``F_A o G_A`` on ``M_k``; requires ``A`` PSD."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    check_hermitian(A, tols.herm, "A")
    ok, lo = is_psd(A, tols.psd, tols.herm)
    if not ok:
        raise NotPsdInput(f"A is not PSD (least eigenvalue {lo:.3e})")
    return _fg_unchecked(A, dims)


def top_fixed_psd(L, tols: Tolerances | None = None, max_iter: int | None = None):
    """Perron eigenpair of a self-adjoint positive map by power iteration.

    Iterates ``X <- L(X) / ||L(X)||_F`` from ``X = Id``. Positivity keeps
    every iterate PSD, so the limit is a PSD eigenvector for the spectral
    radius even when that eigenvalue is degenerate.

    Parameters
    ----------
    L : SuperOperator or ndarray
        Map on ``M_k``; a bare ``k^2 x k^2`` matrix is accepted.
    tols : Tolerances, optional
        ``power_tol`` bounds the Frobenius distance of successive iterates.
    max_iter : int, optional
        Defaults to ``tols.max_iter``.

    Returns
    -------
    lam : float
        ``<gamma, L(gamma)>``, the spectral radius.
    gamma : ndarray
        PSD eigenvector with unit Frobenius norm.
    """
    tols = resolve(tols)
    max_iter = tols.max_iter if max_iter is None else max_iter
    M = L.matrix if isinstance(L, SuperOperator) else np.asarray(L, dtype=np.complex128)
    k = int(round(np.sqrt(M.shape[0])))
    x = vec_f(np.eye(k, dtype=np.complex128))
    x = x / np.linalg.norm(x)
    for _ in range(max_iter):
        y = M @ x
        ny = np.linalg.norm(y)
        if ny <= tols.power_tol:
            raise ZeroMap("map annihilates the identity; spectral radius is zero")
        y = y / ny
        if np.linalg.norm(y - x) <= tols.power_tol:
            x = y
            break
        x = y
    else:
        raise NoConvergence(f"power iteration did not converge in {max_iter} steps")
    lam = float(np.real(np.vdot(x, M @ x)))
    if lam <= tols.power_tol:
        raise ZeroMap(f"spectral radius {lam:.3e} is numerically zero")
    gamma = unvec_f(x, (k, k))
    gamma = 0.5 * (gamma + gamma.conj().T)
    return lam, gamma / np.linalg.norm(gamma)
