import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crmaps.tensor import (
    flip,
    hermitian_span_basis,
    is_hermitian_vector,
    kron,
    max_entangled_u,
    partial_transpose,
    realign,
    unrealign,
    unvec_f,
    vec_f,
)

from conftest import partial_transpose_oracle, rand_c, rand_herm, realign_oracle


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


def e(i, n):
    v = np.zeros(n)
    v[i] = 1
    return v


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_unit_position():
    M = kron(np.outer(e(0, 2), e(0, 2)), np.outer(e(1, 2), e(1, 2)))
    assert M[1, 1] == 1 and M.sum() == 1


def test_kron_mixed_product(rng):
    A, B, C, D = (rand_c(rng, 2, 2) for _ in range(4))
    assert rel(kron(A, B) @ kron(C, D), kron(A @ C, B @ D)) <= 1e-13


def test_vec_f_rank_one():
    assert np.array_equal(vec_f(np.outer(e(0, 3), e(1, 3))), np.kron(e(0, 3), e(1, 3)))


def test_vec_f_isometry(rng):
    A, B = rand_c(rng, 3, 3), rand_c(rng, 3, 3)
    assert abs(np.vdot(vec_f(B), vec_f(A)) - np.trace(A @ B.conj().T)) <= 1e-13 * 10


def test_unvec_roundtrip(rng):
    M = rand_c(rng, 3, 3)
    assert np.array_equal(unvec_f(vec_f(M)), M)


def test_flip_k2_swaps_middle():
    P = np.eye(4)[[0, 2, 1, 3]]
    assert np.array_equal(flip(2).real, P)


def test_flip_action(rng):
    a, b = rand_c(rng, 3), rand_c(rng, 3)
    assert np.linalg.norm(flip(3) @ np.kron(a, b) - np.kron(b, a)) <= 1e-14 * 10
    assert np.allclose(flip(3) @ flip(3), np.eye(9))


def test_u():
    assert np.array_equal(max_entangled_u(2), [1, 0, 0, 1])
    assert max_entangled_u(4) @ max_entangled_u(4) == 4


def test_realign_idid_is_uut():
    u = max_entangled_u(3)
    assert np.linalg.norm(realign(np.eye(9)) - np.outer(u, u)) <= 1e-14


def test_realign_flip_fixed():
    assert np.linalg.norm(realign(flip(3)) - flip(3)) <= 1e-14


def test_realign_rank_one_rectangular(rng):
    a, b = rand_c(rng, 2), rand_c(rng, 2)
    c, d = rand_c(rng, 3), rand_c(rng, 3)
    A = np.kron(np.outer(a, b), np.outer(c, d))
    R = realign(A, (2, 3))
    assert R.shape == (4, 9)
    assert rel(R, np.outer(np.kron(a, b), np.kron(c, d))) <= 1e-14


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_realign_matches_oracle(rng, dims):
    k, m = dims
    A = rand_c(rng, k * m, k * m)
    assert rel(realign(A, dims), realign_oracle(A, k, m)) <= 1e-15
    assert rel(unrealign(realign(A, dims), dims), A) == 0


def test_realign_involution(rng):
    A = rand_c(rng, 9, 9)
    assert rel(realign(realign(A)), A) <= 1e-14


def test_partial_transpose_blocks(rng):
    C, D = rand_c(rng, 2, 2), rand_c(rng, 2, 2)
    assert rel(partial_transpose(np.kron(C, D)), np.kron(C, D.T)) <= 1e-15
    assert rel(partial_transpose(np.kron(C, D), slot="first"), np.kron(C.T, D)) <= 1e-15


def test_partial_transpose_uut_is_flip():
    u = max_entangled_u(3)
    assert np.allclose(partial_transpose(np.outer(u, u)), flip(3))


@pytest.mark.parametrize("dims", [(2, 3), (3, 3)])
def test_partial_transpose_oracle_and_involution(rng, dims):
    k, m = dims
    A = rand_c(rng, k * m, k * m)
    assert rel(partial_transpose(A, dims), partial_transpose_oracle(A, k, m)) == 0
    assert rel(partial_transpose(partial_transpose(A, dims), dims), A) == 0


def test_partial_transpose_bad_slot(rng):
    with pytest.raises(ValueError):
        partial_transpose(np.eye(4), slot="third")


def _identities(rng):
    """Residuals of the eight realignment identities for one random draw."""
    k = 3
    T = flip(k)
    A = rand_c(rng, 9, 9)
    V, W, M, N = (rand_c(rng, 3, 3) for _ in range(4))
    vs, ws = rand_c(rng, 4, 9), rand_c(rng, 4, 9)
    S = realign
    pt = partial_transpose
    lhs1 = S(sum(np.outer(v, w) for v, w in zip(vs, ws)))
    rhs1 = sum(np.kron(unvec_f(v), unvec_f(w)) for v, w in zip(vs, ws))
    return [
        rel(lhs1, rhs1),
        rel(S(S(A)), A),
        rel(S(np.kron(V, W) @ A @ np.kron(M, N)), np.kron(V, M.T) @ S(A) @ np.kron(W.T, N)),
        rel(S(A @ T) @ T, pt(A)),
        rel(S(pt(A)), S(A) @ T),
        rel(S(A @ T), pt(S(A))),
        rel(S(T @ A @ T), S(A).T),
        rel(S(A.T), T @ S(A) @ T),
    ]


def test_realignment_identities(rng):
    worst = np.zeros(8)
    for _ in range(200):
        worst = np.maximum(worst, _identities(rng))
    assert np.all(worst <= 1e-12), worst


def test_hermitian_vector():
    H = np.array([[1, 1j], [-1j, 2]])
    assert is_hermitian_vector(vec_f(H))
    assert not is_hermitian_vector(vec_f(1j * H))


def test_hermitian_span_basis(rng):
    H1, H2 = rand_herm(rng, 3), rand_herm(rng, 3)
    Q, _ = np.linalg.qr(np.array([vec_f(H1 + 1j * H2), vec_f(H1 - 1j * H2)]).T)
    B = hermitian_span_basis(Q, 3)
    assert B.shape == (9, 2)
    for col in B.T:
        assert is_hermitian_vector(col)
    # same span
    assert np.linalg.norm(Q @ (Q.conj().T @ B) - B) <= 1e-12


def test_hermitian_span_basis_rejects_open_span(rng):
    X = rand_c(rng, 9, 1)
    assert hermitian_span_basis(X / np.linalg.norm(X), 3) is None


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**31 - 1))
def test_realign_isometry_property(k, m, seed):
    rng = np.random.default_rng(seed)
    A = rand_c(rng, k * m, k * m)
    assert np.linalg.norm(realign(A, (k, m))) == pytest.approx(np.linalg.norm(A), rel=1e-12)
