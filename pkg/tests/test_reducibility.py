import numpy as np
import pytest

from crmaps.exceptions import NotAnEigenvector, NotCompletelyReducible, NotPsdInput, ZeroOperator
from crmaps.generators import counterexample, direct_sum_separable, random_separable
from crmaps.linalg import is_psd
from crmaps.mub import a_alpha
from crmaps.reducibility import (
    decompose,
    is_weakly_irreducible,
    positive_schmidt_unique,
    split_check,
)
from crmaps.superop import fg_of, top_fixed_psd
from crmaps.tensor import local_compress, max_entangled_u

from conftest import rand_c, rand_psd


def test_split_check_direct_sum():
    A, supports = direct_sum_separable(4, 4, [(2, 2), (2, 2)], seed=3)
    V1, W1 = supports[0]
    piece = local_compress(A, V1, W1)
    _, gamma = top_fixed_psd(fg_of(piece))
    res = split_check(A, gamma)
    assert res.passed
    assert np.allclose(res.V1, V1, atol=1e-8)
    assert np.allclose(res.W1, W1, atol=1e-8)


def test_split_check_uut_fails():
    u = max_entangled_u(3)
    gamma = np.zeros((3, 3))
    gamma[0, 0] = 1
    res = split_check(np.outer(u, u), gamma)
    assert not res.passed
    assert res.cross_norm > 0.1


def test_split_check_full_rank_passes(rng):
    A = rand_psd(rng, 9)
    _, gamma = top_fixed_psd(fg_of(A))
    res = split_check(A, gamma)
    assert res.passed and np.allclose(res.V1, np.eye(3), atol=1e-8)


def test_split_check_rejects_non_eigenvector(rng):
    A = rand_psd(rng, 9)
    with pytest.raises(NotAnEigenvector):
        split_check(A, rand_psd(rng, 3))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_uut_not_reducible(k):
    rep = decompose(counterexample("uut", k))
    assert not rep.completely_reducible
    assert rep.verdict == "not_completely_reducible"
    # witness: rank-one split of u u^t leaves 2(k-1) unit entries off the corners
    assert rep.witness.cross_norm == pytest.approx(np.sqrt(2 * (k - 1)))


def test_realigned_sum_not_reducible():
    rep = decompose(counterexample("realigned_sum", 3))
    assert not rep.completely_reducible
    assert rep.witness.cross_norm > 1e-3


def test_a_alpha_canonical_blocks():
    A = a_alpha(np.eye(3))
    rep = decompose(A)
    assert rep.completely_reducible
    assert len(rep.blocks) == 3
    assert rep.multiplicity_top == 3
    assert rep.residual_norm <= 1e-10
    for b in rep.blocks:
        assert b.top_eigenvalue == pytest.approx(1.0)
        assert b.rank_V == 1 and b.rank_W == 1
        assert b.irreducible_certified


def test_direct_sum_block_count():
    A, supports = direct_sum_separable(5, 4, [(2, 2), (3, 2)], seed=1, terms=3)
    rep = decompose(A, (5, 4))
    assert rep.completely_reducible and len(rep.blocks) == 2
    for b in rep.blocks:
        assert any(np.allclose(b.V, V, atol=1e-8) and np.allclose(b.W, W, atol=1e-8)
                   for V, W in supports)


def test_report_invariants_random_separable():
    A = random_separable(3, 3, terms=4, seed=7)
    rep = decompose(A)
    assert rep.completely_reducible
    total = sum(b.block_operator for b in rep.blocks)
    assert np.linalg.norm(A - total) <= 1e-8 * np.linalg.norm(A)
    assert len(rep.blocks) >= rep.multiplicity_top
    for b in rep.blocks:
        assert np.allclose(b.V @ b.V, b.V, atol=1e-10)
        assert np.allclose(b.block_operator, local_compress(A, b.V, b.W))


def test_decompose_zero_and_non_psd():
    rep = decompose(np.zeros((4, 4)))
    assert rep.completely_reducible and rep.blocks == []
    with pytest.raises(NotPsdInput):
        decompose(-np.eye(4))


def test_decompose_deterministic():
    A = a_alpha(np.linalg.qr(rand_c(np.random.default_rng(0), 3, 3))[0])
    r1, r2 = decompose(A, seed=4), decompose(A, seed=4)
    assert all(np.array_equal(a.V, b.V) for a, b in zip(r1.blocks, r2.blocks))


def test_report_to_dict_serializable():
    import json
    json.dumps(decompose(counterexample("uut", 2)).to_dict())
    json.dumps(decompose(a_alpha(np.eye(2))).to_dict())


def test_weakly_irreducible_product(rng):
    C = rand_psd(rng, 2) + np.eye(2)
    D = rand_psd(rng, 3) + np.eye(3)
    assert is_weakly_irreducible(np.kron(C, D), (2, 3))


def test_weakly_irreducible_a_alpha_false():
    assert not is_weakly_irreducible(a_alpha(np.eye(3)))


def test_weakly_irreducible_two_blocks_false():
    A, _ = direct_sum_separable(4, 4, [(2, 2), (2, 2)], seed=2)
    assert not is_weakly_irreducible(A)


def test_weakly_irreducible_zero():
    with pytest.raises(ZeroOperator):
        is_weakly_irreducible(np.zeros((4, 4)))


def test_positive_schmidt_a_alpha(rng):
    Q, _ = np.linalg.qr(rand_c(rng, 3, 3))
    d = positive_schmidt_unique(a_alpha(Q))
    assert len(d) == 3 and np.allclose(d.lambdas, 1)
    projs = [np.outer(v, v.conj()) for v in Q.T]
    for g, dl in zip(d.gammas, d.deltas):
        assert min(np.linalg.norm(g - P) for P in projs) <= 1e-10
        assert np.linalg.norm(dl - g.T) <= 1e-10


def test_positive_schmidt_single_product(rng):
    g, dl = rand_psd(rng, 2), rand_psd(rng, 2)
    g, dl = g / np.linalg.norm(g), dl / np.linalg.norm(dl)
    d = positive_schmidt_unique(np.kron(g, dl))
    assert len(d) == 1
    assert np.allclose(d.gammas[0], g) and np.allclose(d.deltas[0], dl)
    assert is_psd(d.deltas[0])[0]


def test_positive_schmidt_uut_raises():
    with pytest.raises(NotCompletelyReducible) as info:
        positive_schmidt_unique(counterexample("uut", 3))
    assert info.value.report.witness is not None
