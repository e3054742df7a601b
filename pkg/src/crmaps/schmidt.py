"""Operator Schmidt decompositions.

``A = sum_i lambda_i gamma_i (x) delta_i`` with trace-orthonormal factor sets,
computed from the SVD of the realigned matrix ``S(A)``. The Hermitian variant
re-chooses factors inside each degenerate singular-value cluster so that every
``gamma_i`` and ``delta_i`` is a Hermitian matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Tolerances, resolve
from .exceptions import DegenerateClusterFailure, DimensionMismatch, ZeroOperator
from .linalg import clusters, svd
from .tensor import as_tensor, hermitian_span_basis, realign, unvec_f, vec_f
from .validation import check_hermitian, check_operator


@dataclass
class SchmidtDecomposition:
    lambdas: np.ndarray
    gammas: list = field(default_factory=list)
    deltas: list = field(default_factory=list)
    hermitian: bool = False
    dims: tuple = None

    def __len__(self):
        return len(self.lambdas)

    @property
    def rank(self) -> int:
        return len(self.lambdas)

    def to_dict(self) -> dict:
        from .io import matrix_to_pairs

        return {
            "dims": list(self.dims) if self.dims is not None else None,
            "hermitian": self.hermitian,
            "coefficients": [float(x) for x in self.lambdas],
            "gammas": [matrix_to_pairs(g) for g in self.gammas],
            "deltas": [matrix_to_pairs(d) for d in self.deltas],
        }


def partial_map_g(A, dims, X) -> np.ndarray:
    """``G_A(X)``, defined by ``tr(A (X (x) Y)) = tr(G_A(X) Y)`` for all Y."""
    return np.einsum("ipjq,ji->pq", as_tensor(A, dims), X)


def partial_map_f(A, dims, Y) -> np.ndarray:
    """``F_A(Y)``, defined by ``tr(A (X (x) Y)) = tr(X F_A(Y))`` for all X."""
    return np.einsum("ipjq,qp->ij", as_tensor(A, dims), Y)


def _anchor_index(M: np.ndarray) -> int:
    """Flat index of the largest-modulus entry; ties go to the lowest index."""
    a = np.abs(M).reshape(-1)
    return int(np.flatnonzero(a >= a.max() * (1 - 1e-9))[0])


def _phase_of_anchor(x: np.ndarray) -> complex:
    z = x.reshape(-1)[_anchor_index(x)]
    return z / abs(z) if z != 0 else 1.0


def _kept(s: np.ndarray, tols: Tolerances) -> int:
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tols.schmidt_zero * s[0]))


def schmidt_decompose(A, dims=None, tols: Tolerances | None = None) -> SchmidtDecomposition:
    """Schmidt decomposition via the SVD of ``realign(A)``.

    With ``S(A) = sum_i s_i x_i y_i^*`` we get ``gamma_i = unvec_f(x_i)``,
    ``delta_i = unvec_f(conj(y_i))`` and ``lambda_i = s_i``. Each pair is
    rephased so that the largest-modulus entry of ``gamma_i`` is real
    positive.
    """
    tols = resolve(tols)
    A, (k, m) = check_operator(A, dims)
    if not np.any(A):
        raise ZeroOperator("Schmidt decomposition of the zero operator")
    s, X, Y = svd(realign(A, (k, m)))
    n = _kept(s, tols)
    gammas, deltas = [], []
    for i in range(n):
        ph = _phase_of_anchor(X[:, i])
        x, y = X[:, i] / ph, Y[:, i] / ph
        gammas.append(unvec_f(x, (k, k)))
        deltas.append(unvec_f(y.conj(), (m, m)))
    return SchmidtDecomposition(s[:n].copy(), gammas, deltas, False, (k, m))


def _fix_sign(gamma: np.ndarray, delta: np.ndarray):
    z = gamma.reshape(-1)[_anchor_index(gamma)]
    lead = z.real if abs(z.real) > 1e-12 * abs(z) else z.imag
    if lead < 0:
        return -gamma, -delta
    return gamma, delta


def hermitian_schmidt_decompose(
    A, dims=None, tols: Tolerances | None = None
) -> SchmidtDecomposition:
    """Hermitian Schmidt decomposition of a Hermitian operator.

    Inside every cluster of (numerically) equal singular values the left
    singular vectors are split into Hermitian and anti-Hermitian parts and
    re-orthonormalized, which yields Hermitian ``gamma_i``. The matching
    ``delta_i`` are obtained from ``G_A(gamma_i)``; a small real SVD inside
    the cluster keeps both factor sets orthonormal even when the cluster is
    only approximately degenerate. Signs are chosen so that coefficients are
    positive and the largest entry of ``gamma_i`` has positive real part.
    """
    tols = resolve(tols)
    A, (k, m) = check_operator(A, dims)
    A = check_hermitian(A, tols.herm, "A")
    if not np.any(A):
        raise ZeroOperator("Schmidt decomposition of the zero operator")
    s, X, _ = svd(realign(A, (k, m)))
    n = _kept(s, tols)
    s, X = s[:n], X[:, :n]

    lambdas, gammas, deltas = [], [], []
    for block in clusters(s, tols.cluster, scale=s[0]):
        Qc = X[:, block]
        r = Qc.shape[1]
        H = hermitian_span_basis(Qc, k)
        if H is None:
            raise DegenerateClusterFailure(
                f"singular cluster {block.start}:{block.stop} is not closed under "
                "adjoint; input may not be Hermitian within tolerance"
            )
        # real coordinates of G_A on the Hermitian basis of this cluster
        images = np.array([vec_f(partial_map_g(A, (k, m), unvec_f(h, (k, k)))) for h in H.T]).T
        real = np.vstack([images.real, images.imag])
        P, sv, Qt = np.linalg.svd(real, full_matrices=False)
        rotated = H @ Qt.T
        for j in range(r):
            g = unvec_f(rotated[:, j], (k, k))
            g = 0.5 * (g + g.conj().T)
            img = partial_map_g(A, (k, m), g)
            lam = float(np.linalg.norm(img))
            if lam <= tols.schmidt_zero * s[0]:
                raise DegenerateClusterFailure("Hermitian re-basis lost a Schmidt direction")
            d = img / lam
            d = 0.5 * (d + d.conj().T)
            g, d = _fix_sign(g, d)
            lambdas.append(lam)
            gammas.append(g)
            deltas.append(d)

    order = np.argsort(-np.asarray(lambdas), kind="stable")
    dec = SchmidtDecomposition(
        np.asarray(lambdas)[order],
        [gammas[i] for i in order],
        [deltas[i] for i in order],
        True,
        (k, m),
    )
    err = np.linalg.norm(reconstruct(dec, (k, m)) - A)
    if err > max(tols.herm, tols.cluster) * np.linalg.norm(A) * max(1, n):
        raise DegenerateClusterFailure(
            f"Hermitian Schmidt factors reconstruct A only to {err:.2e}"
        )
    return dec


def reconstruct(d: SchmidtDecomposition, dims) -> np.ndarray:
    """``sum_i lambda_i gamma_i (x) delta_i`` as a ``km x km`` matrix."""
    k, m = dims
    out = np.zeros((k * m, k * m), dtype=np.complex128)
    for lam, g, dl in zip(d.lambdas, d.gammas, d.deltas):
        g, dl = np.asarray(g), np.asarray(dl)
        if g.shape != (k, k) or dl.shape != (m, m):
            raise DimensionMismatch(
                f"factor shapes {g.shape}, {dl.shape} do not match dims {(k, m)}"
            )
        out += lam * np.kron(g, dl)
    return out
