import numpy as np
import pytest

_CRITERIA = []


def rand_c(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_herm(rng, n):
    X = rand_c(rng, n, n)
    return X + X.conj().T


def rand_psd(rng, n, rank=None):
    X = rand_c(rng, n, n if rank is None else rank)
    return X @ X.conj().T


def realign_oracle(A, k, m):
    """Realignment from the rank-one definition, one matrix unit at a time."""
    out = np.zeros((k * k, m * m), dtype=complex)
    for i in range(k):
        for j in range(k):
            for p in range(m):
                for q in range(m):
                    a = A[i * m + p, j * m + q]
                    # A = sum a E_ij (x) E_pq and S(E_ij (x) E_pq) = vec(E_ij) vec(E_pq)^t
                    out[i * k + j, p * m + q] += a
    return out


def partial_transpose_oracle(A, k, m):
    out = np.zeros_like(A)
    for i in range(k):
        for j in range(k):
            block = A[i * m:(i + 1) * m, j * m:(j + 1) * m]
            out[i * m:(i + 1) * m, j * m:(j + 1) * m] = block.T
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def record_criterion():
    def record(number, passed, detail=""):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}"
        if detail:
            line += f"  ({detail})"
        print(line)
        _CRITERIA.append(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(_CRITERIA), key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
