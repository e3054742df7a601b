"""Command-line front end.

Exit codes: 0 success, 1 negative verification verdict (``decompose``,
``mub verify``), 2 usage / parse / precondition error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .classify import classify
from .config import Tolerances
from .exceptions import InputError, NumericalFailure
from .mub import MubSet, complete, generate_prime, verify_set
from .reducibility import decompose
from .schmidt import hermitian_schmidt_decompose, schmidt_decompose
from .symmetry import Perm4, l_sigma, sigma_dictionary


def _tolerances(args) -> Tolerances:
    base = Tolerances.from_file(args.config) if args.config else Tolerances()
    return base.scaled(args.tol / 1e-9)


def _cmd_classify(args, tols):
    A, dims = io.load_matrix(args.file)
    return classify(A, dims, tols).to_dict(), 0


def _cmd_decompose(args, tols):
    A, dims = io.load_matrix(args.file)
    rep = decompose(A, dims, tols, seed=args.seed)
    return rep.to_dict(), 0 if rep.completely_reducible else 1


def _cmd_schmidt(args, tols):
    A, dims = io.load_matrix(args.file)
    fn = hermitian_schmidt_decompose if args.hermitian else schmidt_decompose
    return fn(A, dims, tols).to_dict(), 0


def _cmd_sigma_apply(args, tols):
    sigma = Perm4.parse(args.perm)
    A, dims = io.load_matrix(args.file)
    out = io.matrix_to_dict(l_sigma(sigma, A, dims), dims)
    out["sigma"] = sigma.cycle_string()
    return out, 0


def _cmd_sigma_table(args, tols):
    if args.k < 2:
        raise InputError("k must be at least 2")
    rng = np.random.default_rng(args.seed)
    n = args.k * args.k
    samples = [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(3)]
    rows = []
    for sigma, entry in sigma_dictionary(args.k).items():
        err = max(np.linalg.norm(entry.apply(A) - l_sigma(sigma, A)) / np.linalg.norm(A)
                  for A in samples)
        row = entry.to_dict()
        row["max_relative_error"] = float(err)
        rows.append(row)
    return {"k": args.k, "entries": rows}, 0


def _cmd_mub_generate(args, tols):
    ms = generate_prime(args.p, tols)
    return io.basis_to_dict(ms.dim, ms.bases), 0


def _cmd_mub_verify(args, tols):
    k, bases = io.load_basis(args.file)
    rep = verify_set(MubSet(k, bases), tols)
    return rep.to_dict(), 0 if rep.ok else 1


def _cmd_mub_complete(args, tols):
    k, bases = io.load_basis(args.file)
    basis = complete(MubSet(k, bases), tols, seed=args.seed)
    return io.basis_to_dict(k, [basis]), 0


def _common(p):
    p.add_argument("--tol", type=float, default=1e-9,
                   help="global tolerance; every per-check tolerance scales with it")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--config", help="JSON file with per-check tolerances")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crmaps",
        description="Complete reducibility, Schmidt structure and MUB tools "
                    "for bipartite operators. FILE may be bundled:<name>.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="PSD / PPT / SPC / realignment-invariance flags")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("decompose", help="block decomposition of F_A o G_A")
    p.add_argument("file")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("schmidt", help="operator Schmidt decomposition")
    p.add_argument("file")
    p.add_argument("--hermitian", action="store_true", help="Hermitian factors")
    p.set_defaults(func=_cmd_schmidt)

    p = sub.add_parser("sigma", help="the S_4 slot-permutation maps")
    ss = p.add_subparsers(dest="sigma_command", required=True)
    q = ss.add_parser("apply", help="apply L_sigma to a matrix file")
    q.add_argument("perm", help="e.g. '(243)', '(12)(34)', 'id' or one-line '1423'")
    q.add_argument("file")
    q.set_defaults(func=_cmd_sigma_apply)
    _common(q)
    q = ss.add_parser("table", help="all 24 maps as compositions of named primitives")
    q.add_argument("k", type=int)
    q.set_defaults(func=_cmd_sigma_table)
    _common(q)

    p = sub.add_parser("mub", help="mutually unbiased bases")
    ms = p.add_subparsers(dest="mub_command", required=True)
    q = ms.add_parser("generate", help="complete MUB set for a prime dimension")
    q.add_argument("p", type=int)
    q.set_defaults(func=_cmd_mub_generate)
    _common(q)
    q = ms.add_parser("verify", help="check orthonormality and unbiasedness")
    q.add_argument("file")
    q.set_defaults(func=_cmd_mub_verify)
    _common(q)
    q = ms.add_parser("complete", help="add the missing basis to a k-element set")
    q.add_argument("file")
    q.set_defaults(func=_cmd_mub_complete)
    _common(q)

    for name in ("classify", "decompose", "schmidt"):
        _common(sub.choices[name])
    return parser


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and not _is_pairs(val):
                lines.append(f"{pad}{key}:")
                lines.append(_pretty(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if _is_pairs(obj):
            return pad + _scalar(obj)
        return "\n".join(
            f"{pad}- [{i}]\n{_pretty(v, indent + 1)}" if isinstance(v, (dict, list))
            else f"{pad}- {_scalar(v)}"
            for i, v in enumerate(obj)
        )
    return pad + _scalar(obj)


def _is_pairs(val) -> bool:
    return (isinstance(val, list) and len(val) > 0
            and all(isinstance(p, list) and len(p) == 2
                    and all(isinstance(x, float) for x in p) for p in val))


def _scalar(val) -> str:
    if isinstance(val, float):
        return f"{val:.6g}"
    if _is_pairs(val):
        n = int(round(len(val) ** 0.5))
        nums = [complex(a, b) for a, b in val]
        if n * n == len(nums):
            rows = ["  ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in nums[r * n:(r + 1) * n])
                    for r in range(n)]
            return "\n    " + "\n    ".join(rows)
        return ", ".join(f"{z:.4g}" for z in nums)
    return json.dumps(val)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tols = _tolerances(args)
        report, code = args.func(args, tols)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    text = json.dumps(report, indent=2) if args.format == "json" else _pretty(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
