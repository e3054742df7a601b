import numpy as np
import pytest

from crmaps.classify import is_invariant_realign, is_ppt, is_spc
from crmaps.exceptions import BadDimension
from crmaps.generators import (
    counterexample,
    direct_sum_separable,
    random_invariant,
    random_separable,
    random_spc,
)
from crmaps.linalg import is_psd
from crmaps.mub import a_alpha
from crmaps.reducibility import decompose
from crmaps.superop import fg_of
from crmaps.tensor import flip, max_entangled_u, realign


def test_separable_single_term():
    A = random_separable(2, 2, terms=1, seed=0)
    assert is_ppt(A)[0]
    assert np.linalg.matrix_rank(A, tol=1e-10) == 1
    assert np.trace(A).real == pytest.approx(1)


@pytest.mark.parametrize("seed", range(50))
def test_separable_ppt(seed):
    A = random_separable(3, 3, terms=1 + seed % 5, seed=seed)
    assert is_psd(A)[0] and is_ppt(A)[0]


def test_separable_full_rank_factors():
    A = random_separable(2, 3, terms=2, seed=5, rank=None)
    assert np.linalg.matrix_rank(A) == 6


def test_deterministic():
    assert np.array_equal(random_separable(3, 2, 3, seed=9), random_separable(3, 2, 3, seed=9))
    assert np.array_equal(random_spc(3, seed=9), random_spc(3, seed=9))
    assert np.array_equal(random_invariant(3, seed=9), random_invariant(3, seed=9))


@pytest.mark.parametrize("seed", range(20))
def test_spc_valid(seed):
    A = random_spc(3, seed=seed)
    ok, lo = is_spc(A)
    assert ok and lo >= -1e-9


def test_spc_fallback_path():
    A = random_spc(3, seed=1, max_tries=0)
    assert is_spc(A)[0]


@pytest.mark.parametrize("seed", range(50))
def test_invariant_k2_is_ppt(seed):
    A = random_invariant(2, seed=seed)
    assert is_invariant_realign(A)[0]
    assert is_ppt(A)[0]


def test_invariant_pool_members():
    k = 3
    u = max_entangled_u(k)
    base = np.eye(k * k) + np.outer(u, u)
    assert is_invariant_realign(base)[0]
    Q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((k, k)))
    assert np.allclose(realign(a_alpha(Q)), a_alpha(Q))


def test_invariant_needs_k2():
    with pytest.raises(BadDimension):
        random_invariant(1)


def test_counterexamples():
    assert not decompose(counterexample("realigned_sum", 3)).completely_reducible
    A = counterexample("invariant_not_ppt", 3)
    assert is_invariant_realign(A)[0] and not is_ppt(A)[0]
    assert np.allclose(fg_of(counterexample("uut", 2)).matrix, np.eye(4))


def test_realigned_sum_structure():
    A = counterexample("realigned_sum", 3)
    assert is_psd(A)[0]
    assert np.allclose(A, A.conj().T)


@pytest.mark.parametrize("name,k", [("realigned_sum", 2), ("invariant_not_ppt", 2), ("uut", 1)])
def test_counterexample_bad_dimension(name, k):
    with pytest.raises(BadDimension):
        counterexample(name, k)


def test_counterexample_unknown():
    with pytest.raises(ValueError):
        counterexample("nope", 3)


def test_direct_sum_supports_orthogonal():
    A, sup = direct_sum_separable(5, 4, [(2, 1), (3, 3)], seed=2)
    (V1, W1), (V2, W2) = sup
    assert np.allclose(V1 @ V2, 0, atol=1e-12) and np.allclose(W1 @ W2, 0, atol=1e-12)
    assert is_ppt(A, (5, 4))[0]
    with pytest.raises(BadDimension):
        direct_sum_separable(2, 2, [(2, 1), (1, 1)])


def test_flip_term_psd():
    k = 3
    u = max_entangled_u(k)
    assert is_psd(np.eye(k * k) + np.outer(u, u) - flip(k))[0]


def test_realigned_sum_fixed_by_transposed_realignment():
    A = counterexample("realigned_sum", 4)
    assert np.allclose(realign(A).T, A)
    T = flip(4)
    assert np.allclose(T @ realign(A) @ T, A)
