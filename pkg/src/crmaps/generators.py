"""Seeded fixture factories.

Each factory checks its output with the matching classifier before returning
it, so an invalid fixture surfaces here rather than in downstream tests.
"""

from __future__ import annotations

import numpy as np

from .classify import is_invariant_realign, is_ppt, is_spc
from .config import Tolerances, resolve
from .exceptions import BadDimension, BudgetExhausted
from .linalg import is_psd, random_unitary
from .mub import a_alpha
from .tensor import flip, max_entangled_u, realign


def _gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _random_psd(rng, n, rank=None):
    X = _gaussian(rng, (n, n if rank is None else rank))
    return X @ X.conj().T


def random_separable(k, m=None, terms=2, seed=0, rank=1, tols: Tolerances | None = None):
    """``sum_i C_i (x) D_i`` with ``C_i = X_i X_i^*``, ``D_i = Y_i Y_i^*``, unit trace.

    ``X_i`` and ``Y_i`` are complex Gaussian with ``rank`` columns, so the
    default gives sums of pure product states.
    """
    tols = resolve(tols)
    m = k if m is None else m
    if terms < 1:
        raise ValueError("terms must be at least 1")
    rng = np.random.default_rng(seed)
    A = np.zeros((k * m, k * m), dtype=np.complex128)
    for _ in range(terms):
        A += np.kron(_random_psd(rng, k, rank), _random_psd(rng, m, rank))
    A = A / np.trace(A).real
    if not is_ppt(A, (k, m), tols)[0]:  # pragma: no cover - generator guard
        raise BudgetExhausted("separable draw failed the PPT check")
    return A


def direct_sum_separable(k, m, sizes, seed=0, terms=2, rank=1):
    """Separable blocks on mutually orthogonal local supports.

    Parameters
    ----------
    sizes : list of (k_i, m_i)
        Local support dimensions of the blocks; ``sum k_i <= k`` and
        ``sum m_i <= m``.

    Returns
    -------
    A : ndarray
    supports : list of (V_i, W_i)
        The orthogonal projectors each block lives on.
    """
    if sum(s[0] for s in sizes) > k or sum(s[1] for s in sizes) > m:
        raise BadDimension(f"block sizes {sizes} do not fit in dims {(k, m)}")
    rng = np.random.default_rng(seed)
    U, W = random_unitary(k, rng), random_unitary(m, rng)
    A = np.zeros((k * m, k * m), dtype=np.complex128)
    supports = []
    i0 = j0 = 0
    for ki, mi in sizes:
        Ui, Wi = U[:, i0:i0 + ki], W[:, j0:j0 + mi]
        piece = random_separable(ki, mi, terms, seed=int(rng.integers(2**31)), rank=rank)
        emb = np.kron(Ui, Wi)
        A += emb @ piece @ emb.conj().T
        supports.append((Ui @ Ui.conj().T, Wi @ Wi.conj().T))
        i0, j0 = i0 + ki, j0 + mi
    return A / np.trace(A).real, supports


def _orthonormal_hermitian(rng, k, n, first=None):
    """``n`` trace-orthonormal Hermitian matrices, the first one ``first`` if given."""
    vecs = []
    if first is not None:
        vecs.append(first / np.linalg.norm(first))
    while len(vecs) < n:
        H = _gaussian(rng, (k, k))
        H = H + H.conj().T
        for g in vecs:
            H = H - np.vdot(g, H).real * g
        H = 0.5 * (H + H.conj().T)
        nh = np.linalg.norm(H)
        if nh > 1e-8:
            vecs.append(H / nh)
    return vecs


def random_spc(k, seed=0, max_tries=200, tols: Tolerances | None = None):
    """PSD ``sum_i lambda_i gamma_i (x) gamma_i`` with trace-orthonormal Hermitian ``gamma_i``.

    Rejection sampling draws a positive definite leading factor and smaller
    coefficients for the remaining ones; after ``max_tries`` rejections a
    sum of ``rho_i (x) rho_i`` over PSD ``rho_i`` is returned instead.
    """
    tols = resolve(tols)
    rng = np.random.default_rng(seed)
    A = None
    for _ in range(max_tries):
        n = int(rng.integers(1, k * k + 1))
        lead = _random_psd(rng, k) + rng.uniform(0.5, 2.0) * np.eye(k)
        gammas = _orthonormal_hermitian(rng, k, n, first=lead)
        lam = np.r_[1.0, rng.uniform(0.0, 1.0, n - 1) * rng.uniform(0.05, 0.6)]
        cand = sum(l * np.kron(g, g) for l, g in zip(lam, gammas))
        if is_psd(cand, tols.psd, tols.herm)[0]:
            A = cand
            break
    if A is None:
        n = int(rng.integers(1, k + 1))
        A = sum(rng.uniform(0.5, 1.5) * np.kron(r, r)
                for r in (_random_psd(rng, k) for _ in range(n)))
    A = A / np.trace(A).real
    if not is_spc(A, (k, k), tols)[0]:
        raise BudgetExhausted("could not produce an SPC operator")
    return A


def random_invariant(k, seed=0, n_bases=None, tols: Tolerances | None = None):
    """Random convex combination of operators with ``A = S(A)``.

    The pool holds ``Id (x) Id + u u^t``, ``Id (x) Id + u u^t - T`` and
    ``A_alpha`` for Haar-random bases ``alpha``. One draw in five returns a
    single ``A_alpha``.
    """
    tols = resolve(tols)
    if k < 2:
        raise BadDimension("random_invariant needs k >= 2")
    rng = np.random.default_rng(seed)
    u = max_entangled_u(k)
    base = np.eye(k * k) + np.outer(u, u)
    if rng.uniform() < 0.2:
        A = a_alpha(random_unitary(k, rng))
    else:
        nb = int(rng.integers(1, 4)) if n_bases is None else n_bases
        pool = [base, base - flip(k)] + [a_alpha(random_unitary(k, rng)) for _ in range(nb)]
        w = rng.dirichlet(np.ones(len(pool)))
        A = sum(wi * P for wi, P in zip(w, pool))
    A = 0.5 * (A + A.conj().T)
    A = A / np.trace(A).real
    if not is_invariant_realign(A, (k, k), tols)[0]:  # pragma: no cover - generator guard
        raise BudgetExhausted("invariant draw failed the invariance check")
    return A


COUNTEREXAMPLES = ("uut", "realigned_sum", "invariant_not_ppt")


def counterexample(name: str, k: int) -> np.ndarray:
    """Exact operators that are not completely reducible or not PPT.

    ``uut``: ``u u^t``. ``realigned_sum``: ``v conj(v)^t + S(conj(v) v^t)`` with
    ``v = v1 (x) conj(v1) + e3 (x) e3`` and ``v1 = (1, i, 0, ...)/sqrt(2)``.
    ``invariant_not_ppt``: ``Id (x) Id + u u^t - T``.
    """
    if name == "uut":
        if k < 2:
            raise BadDimension("uut needs k >= 2")
        u = max_entangled_u(k)
        return np.outer(u, u)
    if name == "realigned_sum":
        if k < 3:
            raise BadDimension("realigned_sum needs k >= 3")
        v1 = np.zeros(k, dtype=np.complex128)
        v1[0], v1[1] = 1 / np.sqrt(2), 1j / np.sqrt(2)
        e3 = np.zeros(k, dtype=np.complex128)
        e3[2] = 1.0
        v = np.kron(v1, v1.conj()) + np.kron(e3, e3)
        return np.outer(v, v.conj()) + realign(np.outer(v.conj(), v), (k, k))
    if name == "invariant_not_ppt":
        if k < 3:
            raise BadDimension("invariant_not_ppt needs k >= 3")
        u = max_entangled_u(k)
        return np.eye(k * k, dtype=np.complex128) + np.outer(u, u) - flip(k)
    raise ValueError(f"unknown counterexample {name!r}; choose from {COUNTEREXAMPLES}")


__all__ = [
    "random_separable",
    "direct_sum_separable",
    "random_spc",
    "random_invariant",
    "counterexample",
]
