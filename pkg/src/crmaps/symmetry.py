"""The action of S_4 on M_k (x) M_k by permuting rank-one tensor slots.

``L_sigma(a1 a2^t (x) a3 a4^t) = a_sigma(1) a_sigma(2)^t (x) a_sigma(3) a_sigma(4)^t``.

Composition convention (checked by the test-suite closure property): applying
``L_tau`` first and ``L_sigma`` second gives ``L_{tau o sigma}``, that is
``L_sigma(L_tau(A)) = L_pi(A)`` with ``pi(s) = tau(sigma(s))``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import ParseError
from .tensor import as_tensor, flip, partial_transpose, realign
from .validation import check_operator, check_square_dims


@dataclass(frozen=True, order=True)
class Perm4:
    """A permutation of {1, 2, 3, 4} given by its images."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != [1, 2, 3, 4]:
            raise ValueError(f"{self.images!r} is not a permutation of 1..4")
        object.__setattr__(self, "images", imgs)

    def __call__(self, s: int) -> int:
        return self.images[s - 1]

    def then(self, other: "Perm4") -> "Perm4":
        """Permutation ``s -> self(other(s))``."""
        return Perm4(tuple(self(other(s)) for s in range(1, 5)))

    def inverse(self) -> "Perm4":
        inv = [0] * 4
        for s, t in enumerate(self.images, start=1):
            inv[t - 1] = s
        return Perm4(tuple(inv))

    @classmethod
    def identity(cls) -> "Perm4":
        return cls((1, 2, 3, 4))

    @classmethod
    def from_cycles(cls, cycles) -> "Perm4":
        img = {s: s for s in range(1, 5)}
        for cyc in cycles:
            cyc = list(cyc)
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated element in cycle {cyc}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img[s] for s in range(1, 5)))

    @classmethod
    def parse(cls, text: str) -> "Perm4":
        """Parse ``"id"``, ``"()"``, cycle notation ``"(243)"`` / ``"(12)(34)"``
        or one-line notation ``"1423"`` (the list of images)."""
        t = text.strip().replace(" ", "")
        if t in ("", "id", "e", "()"):
            return cls.identity()
        try:
            if t.startswith("("):
                groups = re.findall(r"\(([^()]*)\)", t)
                if "".join(f"({g})" for g in groups) != t:
                    raise ValueError("malformed cycle notation")
                cycles = [[int(c) for c in g.replace(",", "")] for g in groups if g]
                if any(c < 1 or c > 4 for cyc in cycles for c in cyc):
                    raise ValueError("cycle entries must lie in 1..4")
                return cls.from_cycles(cycles)
            return cls(tuple(int(c) for c in t.replace(",", "")))
        except ValueError as exc:
            raise ParseError(f"bad permutation {text!r}: {exc}", where="perm") from exc

    def cycles(self) -> list:
        seen, out = set(), []
        for s in range(1, 5):
            if s in seen:
                continue
            cyc, t = [], s
            while t not in seen:
                seen.add(t)
                cyc.append(t)
                t = self(t)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        return "".join("(" + "".join(map(str, c)) + ")" for c in cyc) or "id"

    def __str__(self):
        return self.cycle_string()


def all_perms() -> list:
    return [Perm4(p) for p in itertools.permutations((1, 2, 3, 4))]


def l_sigma(sigma, A, dims=None) -> np.ndarray:
    """Apply ``L_sigma`` to an operator on C^k (x) C^k."""
    if isinstance(sigma, str):
        sigma = Perm4.parse(sigma)
    A, dims = check_operator(A, dims)
    k = check_square_dims(dims)
    # slot tensor Z[i1, i2, i3, i4] for a1 a2^t (x) a3 a4^t
    Z = as_tensor(A, dims).transpose(0, 2, 1, 3)
    Z = Z.transpose([s - 1 for s in sigma.images])
    return Z.transpose(0, 2, 1, 3).reshape(k * k, k * k)


# Named primitives: numeric implementation plus the slot images read off the
# rank-one formula, e.g. t2 sends a1 a2^t (x) a3 a4^t to a1 a2^t (x) a4 a3^t.
def _right_flip(A):
    return A @ flip(int(round(np.sqrt(A.shape[0]))))


def _flip_conj(A):
    T = flip(int(round(np.sqrt(A.shape[0]))))
    return T @ A @ T


_BASES = [
    ("A", (1, 2, 3, 4), lambda A: A),
    ("A^t2", (1, 2, 4, 3), lambda A: partial_transpose(A)),
    ("S(A)", (1, 3, 2, 4), lambda A: realign(A)),
    ("S(A^t2)", (1, 4, 2, 3), lambda A: realign(partial_transpose(A))),
    ("S(A)^t2", (1, 3, 4, 2), lambda A: partial_transpose(realign(A))),
    ("AT", (1, 4, 3, 2), _right_flip),
]
_OUTER = [
    ("", (1, 2, 3, 4), lambda A: A),
    ("transpose", (2, 1, 4, 3), lambda A: A.T),
    ("T.T", (3, 4, 1, 2), _flip_conj),
    ("transpose.T.T", (4, 3, 2, 1), lambda A: _flip_conj(A).T),
]


@dataclass(frozen=True)
class DictionaryEntry:
    sigma: Perm4
    expression: str
    apply: Callable

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma.cycle_string(),
            "images": list(self.sigma.images),
            "expression": self.expression,
        }


def _compose_images(first, second) -> Perm4:
    """Slot images of ``second o first`` (``first`` applied first)."""
    return Perm4(tuple(first[second[s - 1] - 1] for s in range(1, 5)))


def sigma_dictionary(k: int | None = None) -> dict:
    """Every ``L_sigma`` written as ``outer o base``.

    ``base`` is one of ``A, A^t2, S(A), S(A^t2), S(A)^t2, AT`` and ``outer``
    is one of the identity, the global transpose, conjugation by the flip
    ``T`` and their composition. The table is built from the primitives
    alone; agreement with :func:`l_sigma` is a tested property.
    """
    if k is not None and k < 2:
        raise ValueError("k must be at least 2")
    table = {}
    for (bname, bimg, bfn), (oname, oimg, ofn) in itertools.product(_BASES, _OUTER):
        sigma = _compose_images(bimg, oimg)
        expr = bname if not oname else f"{oname}[{bname}]"

        def fn(A, _b=bfn, _o=ofn):
            return _o(_b(np.asarray(A, dtype=np.complex128)))

        table[sigma] = DictionaryEntry(sigma, expr, fn)
    if len(table) != 24:  # pragma: no cover - structural guard
        raise AssertionError("coset decomposition did not produce 24 maps")
    return dict(sorted(table.items()))


COSET_REPRESENTATIVES = {
    "sigma1": Perm4.parse("id"),
    "sigma2": Perm4.parse("(34)"),
    "sigma3": Perm4.parse("(23)"),
    "sigma4": Perm4.parse("(243)"),
    "sigma5": Perm4.parse("(234)"),
    "sigma6": Perm4.parse("(24)"),
}
MU = Perm4.parse("(12)(34)")
RHO = Perm4.parse("(13)(24)")
