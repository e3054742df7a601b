"""Complete reducibility of ``F_A o G_A`` and the induced block structure.

:func:`decompose` searches for a splitting ``A = sum_i (V_i (x) W_i) A (V_i (x) W_i)``
with pairwise orthogonal projectors, one block per irreducible piece of the
positive map ``L = F_A o G_A``. A failure comes with a witness: a PSD
eigenvector ``gamma`` of ``L`` whose range split leaves a nonzero off-corner
part of ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Tolerances, resolve
from .exceptions import (
    NotAnEigenvector,
    NotCompletelyReducible,
    NotPsdInput,
    RecursionLimit,
    SpectrumNotZeroOne,
    ExtractionFailure,
    ZeroOperator,
)
from .linalg import clusters, hermitian_part, is_psd, range_projector
from .schmidt import SchmidtDecomposition, hermitian_schmidt_decompose, partial_map_g
from .superop import _fg_unchecked, top_fixed_psd
from .tensor import hermitian_span_basis, local_compress, unvec_f, vec_f
from .validation import check_hermitian, check_operator

# Verdict labels carried by ReducibilityReport.verdict.
REDUCIBLE = "completely_reducible"
NOT_REDUCIBLE = "not_completely_reducible"
INDETERMINATE = "indeterminate"


@dataclass
class Block:
    V: np.ndarray
    W: np.ndarray
    block_operator: np.ndarray
    top_eigenvalue: float
    irreducible_certified: bool

    @property
    def rank_V(self) -> int:
        return int(round(np.trace(self.V).real))

    @property
    def rank_W(self) -> int:
        return int(round(np.trace(self.W).real))


@dataclass
class Witness:
    gamma: np.ndarray
    cross_norm: float
    eigenvalue: float


@dataclass
class ReducibilityReport:
    completely_reducible: bool
    blocks: list = field(default_factory=list)
    residual_norm: float = 0.0
    witness: Witness | None = None
    multiplicity_top: int = 0
    verdict: str = REDUCIBLE
    dims: tuple = None

    def to_dict(self) -> dict:
        from .io import matrix_to_pairs

        out = {
            "dims": list(self.dims) if self.dims is not None else None,
            "verdict": self.verdict,
            "completely_reducible": self.completely_reducible,
            "multiplicity_top": self.multiplicity_top,
            "residual_norm": float(self.residual_norm)
            if np.isfinite(self.residual_norm) else None,
            "blocks": [
                {
                    "rank_V": b.rank_V,
                    "rank_W": b.rank_W,
                    "top_eigenvalue": float(b.top_eigenvalue),
                    "irreducible_certified": b.irreducible_certified,
                    "V": matrix_to_pairs(b.V),
                    "W": matrix_to_pairs(b.W),
                }
                for b in self.blocks
            ],
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = {
                "cross_norm": float(self.witness.cross_norm),
                "eigenvalue": float(self.witness.eigenvalue),
                "gamma": matrix_to_pairs(self.witness.gamma),
            }
        return out


@dataclass
class SplitResult:
    passed: bool
    V1: np.ndarray
    W1: np.ndarray
    cross_norm: float
    eigenvalue: float


# Relative eigen-residual accepted for a candidate gamma; a cluster of width
# ``cluster * lambda`` must fit inside it.
_EIGEN_SLACK = 10.0


def _split_unchecked(A, dims, gamma, tols: Tolerances) -> SplitResult:
    k, m = dims
    V1 = range_projector(gamma, tols.rank)
    W1 = range_projector(partial_map_g(A, dims, gamma), tols.rank)
    V2 = np.eye(k) - V1
    W2 = np.eye(m) - W1
    R = A - local_compress(A, V1, W1) - local_compress(A, V2, W2)
    cross = float(np.linalg.norm(R))
    return SplitResult(cross <= tols.split * np.linalg.norm(A), V1, W1, cross, np.nan)


def split_check(A, gamma, dims=None, tols: Tolerances | None = None) -> SplitResult:
    """Test the corner splitting induced by the range of ``gamma``.

    ``V1`` is the range projector of ``gamma`` and ``W1`` that of
    ``G_A(gamma)``. The split passes when

        ||A - (V1 (x) W1) A (V1 (x) W1) - (V2 (x) W2) A (V2 (x) W2)||_F <= split * ||A||_F

    with ``V2 = Id - V1``, ``W2 = Id - W1``; ``cross_norm`` is the left side.

    Raises
    ------
    NotAnEigenvector
        If ``gamma`` is not an eigenvector of ``F_A o G_A`` with a positive
        eigenvalue.
    """
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    k, _ = dims
    gamma = np.asarray(gamma, dtype=np.complex128)
    if gamma.shape != (k, k):
        raise NotAnEigenvector(f"gamma must be {k}x{k}")
    L = _fg_unchecked(A, dims)
    x = vec_f(gamma)
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise NotAnEigenvector("gamma is zero")
    Lx = L.matrix @ x
    lam = float(np.real(np.vdot(x, Lx)) / nx**2)
    scale = np.linalg.norm(A) ** 2
    if lam <= tols.rank * scale:
        raise NotAnEigenvector(f"Rayleigh quotient {lam:.3e} is not positive")
    resid = np.linalg.norm(Lx - lam * x)
    if resid > _EIGEN_SLACK * max(tols.split, tols.cluster) * lam * nx:
        raise NotAnEigenvector(
            f"||L(gamma) - lambda gamma|| = {resid:.3e} exceeds tolerance for lambda = {lam:.3e}"
        )
    res = _split_unchecked(A, dims, gamma, tols)
    res.eigenvalue = lam
    return res


class _Failed(Exception):
    def __init__(self, witness: Witness, verdict: str):
        super().__init__(verdict)
        self.witness = witness
        self.verdict = verdict


def _top_space(L_matrix, tols: Tolerances):
    w, U = np.linalg.eigh(hermitian_part(L_matrix))
    lam = float(w[-1])
    top = clusters(w[::-1], tols.cluster, scale=lam)[0]
    r = top.stop
    return lam, U[:, ::-1][:, :r], r


def _as_psd(gamma: np.ndarray, tols: Tolerances):
    gamma = hermitian_part(gamma)
    if np.trace(gamma).real < 0:
        gamma = -gamma
    n = np.linalg.norm(gamma)
    if n == 0.0:
        return None
    gamma = gamma / n
    ok, _ = is_psd(gamma, tols.psd, tols.herm)
    return gamma if ok else None


def _candidate(L_matrix, E, H, r, k, rng, tols: Tolerances):
    """A PSD element of the top eigenspace, ideally a single block's Perron vector."""
    gamma = None
    if H is not None:
        if r == 1:
            gamma = _as_psd(unvec_f(H[:, 0], (k, k)), tols)
        else:
            X = unvec_f(H @ rng.standard_normal(r), (k, k))
            w, U = np.linalg.eigh(hermitian_part(X))
            order = np.argsort(-np.abs(w), kind="stable")
            w, U = w[order], U[:, order]
            sel = clusters(np.abs(w), tols.cluster)[0]
            P = U[:, sel] @ U[:, sel].conj().T
            proj = H @ (H.conj().T @ vec_f(P))
            gamma = _as_psd(unvec_f(proj, (k, k)), tols)
    if gamma is None:
        _, gamma = top_fixed_psd(L_matrix, tols)
    return gamma


def _solve(A, dims, support, depth, rng, tols, retries, norm_tol, blocks):
    k, m = dims
    if depth > k:
        raise RecursionLimit(f"recursion depth exceeded {k}")
    if np.linalg.norm(A) <= norm_tol:
        return
    L = _fg_unchecked(A, dims).matrix
    lam, E, r = _top_space(L, tols)
    H = hermitian_span_basis(E, k)
    rank_support = int(round(np.trace(support).real))
    best = None
    attempts = 1 if r == 1 else retries
    for _ in range(attempts):
        gamma = _candidate(L, E, H, r, k, rng, tols)
        res = _split_unchecked(A, dims, gamma, tols)
        if not res.passed:
            raise _Failed(Witness(gamma, res.cross_norm, lam), NOT_REDUCIBLE)
        rank1 = int(round(np.trace(res.V1).real))
        if rank1 < rank_support:
            V2 = support - res.V1
            V2 = range_projector(V2, tols.rank) if np.linalg.norm(V2) > 0 else V2
            W2 = np.eye(m) - res.W1
            _solve(local_compress(A, res.V1, res.W1), dims, res.V1, depth + 1,
                   rng, tols, retries, norm_tol, blocks)
            _solve(local_compress(A, V2, W2), dims, V2, depth + 1,
                   rng, tols, retries, norm_tol, blocks)
            return
        if r == 1:
            blocks.append(Block(res.V1, res.W1, A, lam, True))
            return
        best = Witness(gamma, res.cross_norm, lam)
    raise _Failed(best, INDETERMINATE)


def decompose(
    A,
    dims=None,
    tols: Tolerances | None = None,
    seed: int = 0,
    retries: int = 5,
) -> ReducibilityReport:
    """Recursive block decomposition of a PSD operator.

    Parameters
    ----------
    A : array_like, shape (k*m, k*m)
        PSD operator.
    dims : (k, m), optional
    tols : Tolerances, optional
    seed : int
        Seed for the random elements drawn inside degenerate top eigenspaces.
    retries : int
        Number of fresh draws before a degenerate eigenspace is reported as
        indeterminate.

    Returns
    -------
    ReducibilityReport
        ``verdict`` is one of ``"completely_reducible"``,
        ``"not_completely_reducible"`` (with a witness whose split fails) or
        ``"indeterminate"`` (no failing witness found, but no block
        structure either).
    """
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    k, m = dims
    A = check_hermitian(A, tols.herm, "A")
    ok, lo = is_psd(A, tols.psd, tols.herm)
    if not ok:
        raise NotPsdInput(f"A is not PSD (least eigenvalue {lo:.3e})")
    norm = float(np.linalg.norm(A))
    if norm == 0.0:
        return ReducibilityReport(True, [], 0.0, None, 0, REDUCIBLE, dims)

    An = hermitian_part(A) / norm
    L = _fg_unchecked(An, dims).matrix
    _, _, mult = _top_space(L, tols)
    rng = np.random.default_rng(seed)
    raw: list[Block] = []
    try:
        _solve(An, dims, np.eye(k, dtype=np.complex128), 0, rng, tols, retries,
               tols.split, raw)
    except _Failed as fail:
        w = fail.witness
        witness = Witness(w.gamma, w.cross_norm * norm, w.eigenvalue * norm**2)
        return ReducibilityReport(False, [], float("nan"), witness, mult, fail.verdict, dims)

    blocks = []
    total = np.zeros_like(A)
    for b in raw:
        op = local_compress(A, b.V, b.W)
        total += op
        blocks.append(Block(b.V, b.W, op, b.top_eigenvalue * norm**2, b.irreducible_certified))
    residual = float(np.linalg.norm(A - total))

    ortho = 0.0
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            ortho = max(ortho,
                        np.linalg.norm(blocks[i].V @ blocks[j].V),
                        np.linalg.norm(blocks[i].W @ blocks[j].W))
    limit = max(1, k) * tols.split
    if residual > limit * norm or ortho > limit:
        return ReducibilityReport(False, blocks, residual, None, mult, INDETERMINATE, dims)
    return ReducibilityReport(True, blocks, residual, None, mult, REDUCIBLE, dims)


def is_weakly_irreducible(A, dims=None, tols: Tolerances | None = None) -> bool:
    """Spectral test for weak irreducibility of a PSD operator.

    With the Hermitian Schmidt decomposition ``sum_i lambda_i gamma_i (x) delta_i``
    the operator is weakly irreducible when ``lambda_1`` is strictly the largest
    coefficient and every ``gamma_i`` (``delta_i``) lives inside the range of
    ``gamma_1`` (``delta_1``). Range leakage is measured weighted by
    ``lambda_i / lambda_1`` so that numerically negligible terms cannot flip the
    verdict.
    """
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    if not np.any(A):
        raise ZeroOperator("weak irreducibility is undefined for the zero operator")
    d = hermitian_schmidt_decompose(A, dims, tols)
    lam = d.lambdas
    if len(lam) == 1:
        return True
    if lam[0] - lam[1] <= tols.cluster * lam[0]:
        return False
    k, m = dims
    P = range_projector(d.gammas[0], tols.rank)
    Q = range_projector(d.deltas[0], tols.rank)
    Pc, Qc = np.eye(k) - P, np.eye(m) - Q
    for li, g, dl in zip(lam[1:], d.gammas[1:], d.deltas[1:]):
        w = li / lam[0]
        if w * np.linalg.norm(Pc @ g) > tols.split or w * np.linalg.norm(Qc @ dl) > tols.split:
            return False
    return True


def positive_schmidt_unique(
    A, dims=None, tols: Tolerances | None = None, seed: int = 0
) -> SchmidtDecomposition:
    """The Schmidt decomposition ``sum_i gamma_i (x) delta_i`` with PSD factors.

    Exists (and is unique) when ``F_A o G_A`` has spectrum in ``{0, 1}`` and is
    completely reducible. Each ``gamma_i`` is the unit Perron vector of one
    block and ``delta_i = G_A(gamma_i)``; all coefficients equal 1.

    Raises
    ------
    SpectrumNotZeroOne
    NotCompletelyReducible
        Carries the failing :class:`ReducibilityReport` as ``.report``.
    ExtractionFailure
        If the extracted factors do not reproduce ``A``.
    """
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    k, m = dims
    A = check_hermitian(A, tols.herm, "A")
    ok, lo = is_psd(A, tols.psd, tols.herm)
    if not ok:
        raise NotPsdInput(f"A is not PSD (least eigenvalue {lo:.3e})")
    ev = np.linalg.eigvalsh(hermitian_part(_fg_unchecked(A, dims).matrix))
    dist = np.minimum(np.abs(ev), np.abs(ev - 1.0))
    if dist.max() > tols.spectrum:
        raise SpectrumNotZeroOne(f"F_A o G_A has an eigenvalue {dist.max():.3e} away from {{0, 1}}")

    report = decompose(A, dims, tols, seed=seed)
    if not report.completely_reducible:
        raise NotCompletelyReducible("F_A o G_A is not completely reducible", report)

    gammas, deltas = [], []
    for b in report.blocks:
        L = _fg_unchecked(b.block_operator, dims).matrix
        _, E, _ = _top_space(L, tols)
        g = _as_psd(unvec_f(E[:, 0] / _phase(E[:, 0], k), (k, k)), tols)
        if g is None:
            _, g = top_fixed_psd(L, tols)
        d = hermitian_part(partial_map_g(A, dims, g))
        gammas.append(g)
        deltas.append(d)

    dec = SchmidtDecomposition(np.ones(len(gammas)), gammas, deltas, True, dims)
    from .schmidt import reconstruct

    err = np.linalg.norm(reconstruct(dec, dims) - A)
    bad_psd = [i for i, (g, d) in enumerate(zip(gammas, deltas))
               if not (is_psd(g, tols.psd)[0] and is_psd(d, tols.psd)[0])]
    gram = np.array([[np.vdot(x, y) for y in gammas] for x in gammas])
    ortho = np.linalg.norm(gram - np.eye(len(gammas))) if gammas else 0.0
    limit = max(tols.split, tols.spectrum) * max(1.0, np.linalg.norm(A))
    if err > limit or bad_psd or ortho > limit:
        raise ExtractionFailure(
            f"positive factors failed verification (reconstruction {err:.2e}, "
            f"non-PSD factors {bad_psd}, orthonormality defect {ortho:.2e})"
        )
    return dec


def _phase(x: np.ndarray, k: int) -> complex:
    # rotate so the trace is real positive, which a PSD eigenvector allows
    t = np.trace(unvec_f(x, (k, k)))
    return t / abs(t) if abs(t) > 0 else 1.0
