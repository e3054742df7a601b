"""Estimator-style wrappers around the functional API.

The "data" here is a single bipartite operator (or a set of bases), so
``fit`` learns structure from one object and ``transform`` applies that
structure to others of the same shape.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .config import Tolerances
from .mub import MubSet, complete
from .reducibility import decompose
from .schmidt import hermitian_schmidt_decompose, schmidt_decompose
from .tensor import local_compress
from .validation import check_operator


def _tols(tol) -> Tolerances:
    return Tolerances.from_global(tol)


class OperatorSchmidt(TransformerMixin, BaseEstimator):
    """Learn a Schmidt factor set; ``transform`` projects onto its product terms.

    Parameters
    ----------
    dims : (k, m) or None
    hermitian : bool
        Use the Hermitian Schmidt decomposition.
    tol : float
        Global tolerance (scales every per-check tolerance).
    """

    def __init__(self, dims=None, hermitian=False, tol=1e-9):
        self.dims = dims
        self.hermitian = hermitian
        self.tol = tol

    def fit(self, X, y=None):
        fn = hermitian_schmidt_decompose if self.hermitian else schmidt_decompose
        A, dims = check_operator(X, self.dims)
        d = fn(A, dims, _tols(self.tol))
        self.dims_ = dims
        self.coef_ = np.asarray(d.lambdas)
        self.gammas_ = d.gammas
        self.deltas_ = d.deltas
        self.n_components_ = len(d)
        return self

    def _products(self):
        return [np.kron(g, d) for g, d in zip(self.gammas_, self.deltas_)]

    def transform(self, X):
        """Coefficients ``tr((gamma_i (x) delta_i)^* X)`` for each learned pair."""
        check_is_fitted(self, "coef_")
        A, _ = check_operator(X, self.dims_)
        return np.array([np.vdot(P, A) for P in self._products()])

    def inverse_transform(self, c):
        check_is_fitted(self, "coef_")
        return sum(ci * P for ci, P in zip(np.asarray(c), self._products()))


class ReducibilityDecomposer(TransformerMixin, BaseEstimator):
    """Learn the block projectors of a completely reducible PSD operator.

    ``transform`` compresses an operator onto each learned block and returns
    the stack ``[(V_i (x) W_i) X (V_i (x) W_i)]``.
    """

    def __init__(self, dims=None, tol=1e-9, seed=0, retries=5):
        self.dims = dims
        self.tol = tol
        self.seed = seed
        self.retries = retries

    def fit(self, X, y=None):
        A, dims = check_operator(X, self.dims)
        rep = decompose(A, dims, _tols(self.tol), seed=self.seed, retries=self.retries)
        self.dims_ = dims
        self.report_ = rep
        self.completely_reducible_ = rep.completely_reducible
        self.blocks_ = rep.blocks
        self.n_blocks_ = len(rep.blocks)
        return self

    def transform(self, X):
        check_is_fitted(self, "report_")
        A, _ = check_operator(X, self.dims_)
        n = A.shape[0]
        if not self.blocks_:
            return np.zeros((0, n, n), dtype=np.complex128)
        return np.stack([local_compress(A, b.V, b.W) for b in self.blocks_])


class MubCompleter(BaseEstimator):
    """Fit on ``k`` mutually unbiased bases of C^k; ``basis_`` is the missing one."""

    def __init__(self, tol=1e-9, seed=0):
        self.tol = tol
        self.seed = seed

    def fit(self, X, y=None):
        bases = [np.asarray(b, dtype=np.complex128) for b in X]
        if not bases:
            raise ValueError("need at least one basis")
        k = bases[0].shape[0]
        ms = MubSet(k, bases)
        self.basis_ = complete(ms, _tols(self.tol), seed=self.seed)
        self.mub_set_ = MubSet(k, bases + [self.basis_])
        return self
