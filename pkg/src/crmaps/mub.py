"""Mutually unbiased bases through the projections ``A_alpha``.

A basis ``alpha = {v_i}`` of C^k gives ``A_alpha = sum_i v_i conj(v_i)^t (x) conj(v_i) v_i^t``,
a rank-k projection invariant under realignment. Two bases are unbiased iff
``A_alpha A_beta = u u^t / k``, and a full set of ``k + 1`` bases resolves
``Id (x) Id + u u^t``. The missing basis of a ``k``-element set is recovered
from the PSD Schmidt factors of ``Id (x) Id + u u^t - sum A_alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Tolerances, resolve
from .exceptions import (
    DimensionMismatch,
    ExtractionFailure,
    InputNotUnbiased,
    NotCompletelyReducible,
    NotOrthonormal,
    NotPrime,
    SpectrumMismatch,
    SpectrumNotZeroOne,
)
from .linalg import clusters, hermitian_part
from .reducibility import positive_schmidt_unique
from .tensor import max_entangled_u, realign


@dataclass
class MubSet:
    dim: int
    bases: list = field(default_factory=list)

    def __post_init__(self):
        self.bases = [np.asarray(b, dtype=np.complex128) for b in self.bases]
        for b in self.bases:
            if b.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"basis of shape {b.shape} in a dimension-{self.dim} set")

    def __len__(self):
        return len(self.bases)


@dataclass
class PairResult:
    unbiased: bool
    overlap_deviation: float
    operator_residual: float
    criteria_agree: bool


@dataclass
class VerifyReport:
    ok: bool
    orthonormality_defects: list
    pairs: dict
    resolution_residual: float | None
    failures: list

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "orthonormality_defects": [float(x) for x in self.orthonormality_defects],
            "pairs": {
                f"{i},{j}": {
                    "unbiased": p.unbiased,
                    "overlap_deviation": float(p.overlap_deviation),
                    "operator_residual": float(p.operator_residual),
                    "criteria_agree": p.criteria_agree,
                }
                for (i, j), p in sorted(self.pairs.items())
            },
            "resolution_residual": None if self.resolution_residual is None
            else float(self.resolution_residual),
            "failures": list(self.failures),
        }


def orthonormality_defect(basis) -> float:
    B = np.asarray(basis)
    return float(np.linalg.norm(B.conj().T @ B - np.eye(B.shape[1])))


def _check_orthonormal(basis, tols: Tolerances):
    B = np.asarray(basis, dtype=np.complex128)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise DimensionMismatch(f"basis must be a square matrix of columns, got {B.shape}")
    d = orthonormality_defect(B)
    if d > tols.unbiased * 10 * B.shape[0]:
        raise NotOrthonormal(f"basis columns are not orthonormal (defect {d:.2e})")
    return B


def a_alpha(basis, tols: Tolerances | None = None) -> np.ndarray:
    """``sum_i v_i conj(v_i)^t (x) conj(v_i) v_i^t`` for the columns ``v_i``."""
    tols = resolve(tols)
    B = _check_orthonormal(basis, tols)
    k = B.shape[0]
    out = np.zeros((k * k, k * k), dtype=np.complex128)
    for v in B.T:
        P = np.outer(v, v.conj())
        out += np.kron(P, P.T)
    return out


def is_unbiased_pair(alpha, beta, tols: Tolerances | None = None) -> PairResult:
    """Overlap test ``| |<v_i, w_j>|^2 - 1/k | <= tol`` cross-checked against
    the operator identity ``A_alpha A_beta = u u^t / k``.

    The operator residual is compared with ``k * tol`` because it aggregates
    ``k^2`` overlap errors, each weighted by ``|<v_i, w_j>|``. The verdict is
    true only when both criteria accept.
    """
    tols = resolve(tols)
    a = _check_orthonormal(alpha, tols)
    b = _check_orthonormal(beta, tols)
    if a.shape != b.shape:
        raise DimensionMismatch(f"bases of different dimension {a.shape[0]} and {b.shape[0]}")
    k = a.shape[0]
    dev = float(np.max(np.abs(np.abs(a.conj().T @ b) ** 2 - 1.0 / k)))
    u = max_entangled_u(k)
    op = float(np.linalg.norm(a_alpha(a, tols) @ a_alpha(b, tols) - np.outer(u, u) / k))
    by_overlap = dev <= tols.unbiased
    by_operator = op <= k * tols.unbiased
    return PairResult(by_overlap and by_operator, dev, op, by_overlap == by_operator)


def verify_set(ms: MubSet, tols: Tolerances | None = None) -> VerifyReport:
    """Orthonormality, pairwise unbiasedness and, for ``k + 1`` bases, the
    resolution ``sum A_alpha = Id (x) Id + u u^t``."""
    tols = resolve(tols)
    k = ms.dim
    failures = []
    defects = [orthonormality_defect(b) for b in ms.bases]
    ortho_ok = []
    for i, d in enumerate(defects):
        good = d <= tols.unbiased * 10 * k
        ortho_ok.append(good)
        if not good:
            failures.append(f"basis {i} is not orthonormal (defect {d:.2e})")
    pairs = {}
    for i in range(len(ms.bases)):
        for j in range(i + 1, len(ms.bases)):
            if not (ortho_ok[i] and ortho_ok[j]):
                continue
            p = is_unbiased_pair(ms.bases[i], ms.bases[j], tols)
            pairs[(i, j)] = p
            if not p.unbiased:
                failures.append(f"bases {i} and {j} are not unbiased "
                                f"(overlap deviation {p.overlap_deviation:.2e})")
            if not p.criteria_agree:
                failures.append(f"overlap and operator criteria disagree for bases {i}, {j}")
    resolution = None
    if len(ms.bases) == k + 1 and all(ortho_ok):
        u = max_entangled_u(k)
        total = sum(a_alpha(b, tols) for b in ms.bases)
        resolution = float(np.linalg.norm(total - np.eye(k * k) - np.outer(u, u)))
        if resolution > k * tols.unbiased * 10:
            failures.append(f"resolution identity fails (residual {resolution:.2e})")
    return VerifyReport(not failures, defects, pairs, resolution, failures)


def phase_normalize(v: np.ndarray) -> np.ndarray:
    """Scale ``v`` so its largest-modulus entry (lowest index on ties) is real positive."""
    a = np.abs(v)
    idx = int(np.flatnonzero(a >= a.max() * (1 - 1e-9))[0])
    z = v[idx]
    return v * (abs(z) / z) if z != 0 else v


def complete(ms: MubSet, tols: Tolerances | None = None, seed: int = 0) -> np.ndarray:
    """The basis that extends ``k`` mutually unbiased bases of C^k to ``k + 1``.

    Returns
    -------
    ndarray, shape (k, k)
        Orthonormal columns, each phase-normalized.

    Raises
    ------
    InputNotUnbiased
        Wrong number of bases or a non-unbiased pair.
    SpectrumMismatch
        ``B = Id (x) Id + u u^t - sum A_alpha`` is not a rank-k projection
        invariant under realignment.
    ExtractionFailure
        The PSD Schmidt factors of ``B`` are not rank one, or the recovered
        basis fails verification.
    """
    tols = resolve(tols)
    k = ms.dim
    if len(ms.bases) != k:
        raise InputNotUnbiased(f"completion needs exactly {k} bases, got {len(ms.bases)}")
    for i in range(k):
        for j in range(i + 1, k):
            if not is_unbiased_pair(ms.bases[i], ms.bases[j], tols).unbiased:
                raise InputNotUnbiased(f"bases {i} and {j} are not mutually unbiased")

    u = max_entangled_u(k)
    B = np.eye(k * k) + np.outer(u, u) - sum(a_alpha(b, tols) for b in ms.bases)
    B = hermitian_part(B)
    w = np.linalg.eigvalsh(B)
    groups = clusters(w, tols.cluster, scale=1.0)
    expected = np.r_[np.zeros(k * k - k), np.ones(k)]
    if np.max(np.abs(w - expected)) > tols.cluster or len(groups) > 2:
        raise SpectrumMismatch("B does not have spectrum {0 x (k^2-k), 1 x k}")
    if np.linalg.norm(realign(B) - B) > tols.invariance * (1 + np.linalg.norm(B)) * 10:
        raise SpectrumMismatch("B is not invariant under realignment")

    try:
        dec = positive_schmidt_unique(B, (k, k), tols, seed=seed)
    except (NotCompletelyReducible, SpectrumNotZeroOne) as exc:
        raise ExtractionFailure(f"no PSD Schmidt factors: {exc}") from exc
    if len(dec) != k:
        raise ExtractionFailure(f"expected {k} factors, got {len(dec)}")

    vecs = []
    for g in dec.gammas:
        ev, U = np.linalg.eigh(hermitian_part(g))
        if ev[-1] <= 0 or (k > 1 and ev[-2] > tols.split * 100 * ev[-1]):
            raise ExtractionFailure("PSD factor is not rank one")
        vecs.append(phase_normalize(U[:, -1]))
    # deterministic column order, independent of the seed
    vecs.sort(key=lambda v: tuple(np.round(np.r_[v.real, v.imag], 8)))
    basis = np.array(vecs).T

    check = MubSet(k, list(ms.bases) + [basis])
    rep = verify_set(check, tols)
    if not rep.ok:
        raise ExtractionFailure("completed basis failed verification: " + "; ".join(rep.failures))
    return basis


def match_up_to_phase(alpha, beta):
    """Greedy pairing of columns by largest ``|<v, w>|``.

    Returns the list of ``(i, j, |<v_i, w_j>|)`` triples and the maximal
    vector deviation ``||v_i - c w_j||`` after optimal phase alignment.
    """
    a, b = np.asarray(alpha), np.asarray(beta)
    G = np.abs(a.conj().T @ b)
    free_i, free_j = set(range(a.shape[1])), set(range(b.shape[1]))
    pairs, dev = [], 0.0
    for _ in range(min(len(free_i), len(free_j))):
        i, j = max(((i, j) for i in free_i for j in free_j), key=lambda t: G[t])
        free_i.remove(i)
        free_j.remove(j)
        z = np.vdot(b[:, j], a[:, i])
        c = z / abs(z) if z != 0 else 1.0
        dev = max(dev, float(np.linalg.norm(a[:, i] - c * b[:, j])))
        pairs.append((i, j, float(G[i, j])))
    return pairs, dev


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def generate_prime(p: int, tols: Tolerances | None = None) -> MubSet:
    """Complete set of ``p + 1`` mutually unbiased bases of C^p, p prime.

    ``p = 2``: computational, Hadamard and circular bases. Odd ``p``: the
    computational basis plus, for ``m = 0..p-1``, the basis with columns
    ``b`` and entries ``omega^(m s^2 + b s) / sqrt(p)``. The output is checked
    with :func:`verify_set` before it is returned.
    """
    tols = resolve(tols)
    if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)):
        raise NotPrime(f"{p} is not prime")
    p = int(p)
    if p == 2:
        r = 1 / np.sqrt(2)
        bases = [
            np.eye(2, dtype=np.complex128),
            np.array([[r, r], [r, -r]], dtype=np.complex128),
            np.array([[r, r], [1j * r, -1j * r]], dtype=np.complex128),
        ]
    else:
        s = np.arange(p)
        bases = [np.eye(p, dtype=np.complex128)]
        for m in range(p):
            expo = (m * s[:, None] ** 2 + s[:, None] * s[None, :]) % p
            bases.append(np.exp(2j * np.pi * expo / p) / np.sqrt(p))
    ms = MubSet(p, bases)
    rep = verify_set(ms, tols)
    if not rep.ok:  # pragma: no cover - generator guard
        raise ExtractionFailure("generated set failed verification: " + "; ".join(rep.failures))
    return ms
