import numpy as np
import pytest

from crmaps.classify import classify, is_invariant_realign, is_ppt, is_spc, membership
from crmaps.exceptions import NonSquareDims
from crmaps.generators import counterexample, random_separable
from crmaps.symmetry import Perm4, all_perms
from crmaps.tensor import flip, max_entangled_u

from conftest import rand_psd


def uut(k):
    u = max_entangled_u(k)
    return np.outer(u, u)


def test_invariant_not_ppt_example():
    A = counterexample("invariant_not_ppt", 3)
    ok, lo = is_ppt(A)
    assert not ok and lo == pytest.approx(-1.0, abs=1e-10)
    assert not is_spc(A)[0]
    assert is_invariant_realign(A)[0]


def test_separable_is_ppt():
    assert is_ppt(random_separable(3, 3, terms=3, seed=1))[0]
    assert is_ppt(np.eye(9))[0]


def test_spc_examples(rng):
    g = rand_psd(rng, 3)
    g = g / np.linalg.norm(g)
    assert is_spc(np.kron(g, g))[0]
    ok, lo = is_spc(uut(3))
    assert not ok and lo == pytest.approx(-1.0)


def test_invariance_examples():
    k = 3
    base = np.eye(k * k) + uut(k)
    assert is_invariant_realign(base)[0]
    assert is_invariant_realign(base - flip(k))[0]
    ok, res = is_invariant_realign(np.eye(k * k))
    assert not ok and res > 1


def test_non_square_dims():
    with pytest.raises(NonSquareDims):
        is_spc(np.eye(6), (2, 3))
    rep = classify(np.eye(6), (2, 3))
    assert rep.spc is None and rep.invariant_realign is None and rep.ppt


def test_non_psd_classified_false():
    rep = classify(-np.eye(4))
    assert not any([rep.is_psd, rep.ppt, rep.spc, rep.invariant_realign])
    assert rep.min_eig == pytest.approx(-1)


def test_membership_examples(rng):
    assert membership(np.eye(9), Perm4.parse("(34)")) == (True, True)
    assert membership(uut(3), Perm4.parse("(23)"))[0]
    A = rand_psd(rng, 9)
    assert membership(A, Perm4.identity()) == (True, True)


def test_membership_non_psd_false():
    for s in all_perms():
        assert membership(-np.eye(4), s) == (False, False)


def test_report_dict_roundtrip():
    import json
    d = classify(counterexample("invariant_not_ppt", 3)).to_dict()
    assert json.loads(json.dumps(d))["ppt"] is False
