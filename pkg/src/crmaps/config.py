"""Numerical tolerances used across the package.

Every check that compares floating point numbers against an exact algebraic
statement reads its threshold from a :class:`Tolerances` instance. The CLI
scales all of them by one factor (``--tol``); finer control is possible by
loading a JSON file with :meth:`Tolerances.from_file`.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

# Reference value that ``--tol`` is measured against.
REFERENCE_TOL = 1e-9


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10          # hermiticity / reconstruction, relative
    psd: float = 1e-9            # lambda_min >= -psd * max(1, lambda_max)
    rank: float = 1e-9           # singular values kept above rank * s_max
    cluster: float = 1e-8        # relative gap splitting eigen/singular clusters
    schmidt_zero: float = 1e-12  # Schmidt coefficients below this * s_max dropped
    split: float = 1e-8          # block-split residual, relative to ||A||_F
    invariance: float = 1e-9     # ||A - L(A)|| <= invariance * (1 + ||A||)
    spectrum: float = 1e-8       # distance of eigenvalues to {0, 1}
    unbiased: float = 1e-9       # | |<v,w>|^2 - 1/k | bound
    power_tol: float = 1e-12     # power iteration stopping rule
    max_iter: int = 10_000
    max_sweeps: int = 100

    def scaled(self, factor: float) -> "Tolerances":
        """Multiply every floating tolerance by ``factor``."""
        if factor <= 0:
            raise ValueError("tolerance scale must be positive")
        changes = {
            f.name: getattr(self, f.name) * factor
            for f in dataclasses.fields(self)
            if f.type == "float"
        }
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_global(cls, tol: float) -> "Tolerances":
        return cls().scaled(tol / REFERENCE_TOL)

    @classmethod
    def from_file(cls, path) -> "Tolerances":
        with open(path) as fh:
            raw = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        return cls(**raw)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT = Tolerances()


def resolve(tols: Tolerances | None) -> Tolerances:
    return DEFAULT if tols is None else tols
