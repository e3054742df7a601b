"""Membership tests for PPT, SPC, realignment-invariant and ``P_sigma``/``I_sigma``."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .config import Tolerances, resolve
from .linalg import is_psd
from .symmetry import l_sigma
from .tensor import partial_transpose, realign
from .validation import check_operator, check_square_dims


@dataclass
class ClassReport:
    is_psd: bool
    ppt: bool
    spc: bool | None
    invariant_realign: bool | None
    min_eig: float
    min_eig_pt: float
    spc_min_eig: float | None
    invariance_residual: float | None
    dims: tuple = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["dims"] = list(self.dims) if self.dims is not None else None
        return d


def _psd(A, tols: Tolerances):
    return is_psd(A, tols.psd, tols.herm)


def is_ppt(A, dims=None, tols: Tolerances | None = None):
    """``(verdict, least eigenvalue of A^t2)``; false for non-PSD ``A``."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    ok, _ = _psd(A, tols)
    ok_pt, lo_pt = _psd(partial_transpose(A, dims), tols)
    return bool(ok and ok_pt), lo_pt


def is_spc(A, dims=None, tols: Tolerances | None = None):
    """``(verdict, least eigenvalue of S(A^t2))``; requires k == m."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    check_square_dims(dims)
    ok, _ = _psd(A, tols)
    ok_s, lo_s = _psd(realign(partial_transpose(A, dims), dims), tols)
    return bool(ok and ok_s), lo_s


def is_invariant_realign(A, dims=None, tols: Tolerances | None = None):
    """``(verdict, ||A - S(A)||_F)``; requires k == m."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    check_square_dims(dims)
    ok, _ = _psd(A, tols)
    res = float(np.linalg.norm(A - realign(A, dims)))
    return bool(ok and res <= tols.invariance * (1 + np.linalg.norm(A))), res


def membership(A, sigma, dims=None, tols: Tolerances | None = None):
    """``(A in P_sigma, A in I_sigma)``.

    ``P_sigma``: ``A`` and ``L_sigma(A)`` are PSD. ``I_sigma``: ``A`` is PSD
    and ``A = L_sigma(A)``.
    """
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    check_square_dims(dims)
    ok, _ = _psd(A, tols)
    LA = l_sigma(sigma, A, dims)
    in_p = ok and _psd(LA, tols)[0]
    in_i = ok and np.linalg.norm(A - LA) <= tols.invariance * (1 + np.linalg.norm(A))
    return bool(in_p), bool(in_i)


def classify(A, dims=None, tols: Tolerances | None = None) -> ClassReport:
    """All class flags, computed independently of each other."""
    tols = resolve(tols)
    A, dims = check_operator(A, dims)
    ok, lo = _psd(A, tols)
    ppt, lo_pt = is_ppt(A, dims, tols)
    spc = inv = lo_s = res = None
    if dims[0] == dims[1]:
        spc, lo_s = is_spc(A, dims, tols)
        inv, res = is_invariant_realign(A, dims, tols)
    return ClassReport(ok, ppt, spc, inv, lo, lo_pt, lo_s, res, dims)
