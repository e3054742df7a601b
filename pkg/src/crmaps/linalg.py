"""Dense complex spectral factorizations.

Thin contracts over LAPACK (through :mod:`numpy.linalg`): tolerance-checked
Hermitian eigendecomposition, descending SVD, range projectors and a PSD test.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .config import DEFAULT
from .exceptions import NoConvergence
from .validation import as_complex_matrix, check_hermitian, check_square, hermiticity_defect


class HermitianEigenSystem(NamedTuple):
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # columns, unitary

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def hermitian_eig(M, tol: float = DEFAULT.herm) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises :class:`NonHermitianInput` when ``||M - M*||_F > tol * ||M||_F``.
    """
    M = check_hermitian(M, tol)
    H = 0.5 * (M + M.conj().T)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermitianEigenSystem(w, V)


def svd(M):
    """Return ``(s, X, Y)`` with ``M = X @ diag(s) @ Y^*`` and ``s`` descending."""
    M = as_complex_matrix(M)
    try:
        X, s, Yh = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    return s, X, Yh.conj().T


def numerical_rank(s: np.ndarray, rank_tol: float) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_tol * s[0]))


def range_basis(M, rank_tol: float = DEFAULT.rank) -> np.ndarray:
    """Orthonormal columns spanning the numerical range of ``M``."""
    s, X, _ = svd(M)
    return X[:, : numerical_rank(s, rank_tol)]


def range_projector(M, rank_tol: float = DEFAULT.rank) -> np.ndarray:
    """Orthogonal projection onto the range of ``M``.

    Singular values at or below ``rank_tol * s_max`` are treated as zero, so a
    zero matrix gives the zero projector.
    """
    Q = range_basis(M, rank_tol)
    return Q @ Q.conj().T


def is_psd(M, psd_tol: float = DEFAULT.psd, herm_tol: float = DEFAULT.herm):
    """Positive-semidefiniteness test.

    Returns
    -------
    (bool, float)
        The verdict and the least eigenvalue of the Hermitian part of ``M``.
        The verdict is true iff ``M`` is Hermitian within ``herm_tol`` and
        ``lambda_min >= -psd_tol * max(1, lambda_max)``.
    """
    M = check_square(M)
    H = 0.5 * (M + M.conj().T)
    w = np.linalg.eigvalsh(H)
    lo, hi = float(w[0]), float(w[-1])
    hermitian = hermiticity_defect(M) <= herm_tol
    return bool(hermitian and lo >= -psd_tol * max(1.0, hi)), lo


def clusters(values, rel_gap: float, scale: float | None = None) -> list[slice]:
    """Group sorted ``values`` into runs whose consecutive gaps are small.

    Two neighbours belong to the same run when they differ by at most
    ``rel_gap * scale``; ``scale`` defaults to ``max(|values|)``.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    if scale is None:
        scale = float(np.max(np.abs(values)))
    thresh = rel_gap * scale
    out, start = [], 0
    for i in range(1, values.size):
        if abs(values[i] - values[i - 1]) > thresh:
            out.append(slice(start, i))
            start = i
    out.append(slice(start, values.size))
    return out


def hermitian_part(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.conj().T)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return Z + Z.conj().T
