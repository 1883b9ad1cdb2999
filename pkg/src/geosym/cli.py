"""Command-line interface: ``geosym <subcommand> ...``.

Exit codes: 0 success / all checks passed, 1 a verified claim or expected
value failed, 2 usage error or malformed input file.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import lab
from .fileio import FormatError, load_matrix, load_operator, load_state, state_to_dict
from .operators import g_hat, g_hat_symmetric
from .optimizer import (
    OptimizerConfig,
    closest_product_state,
    closest_symmetric_product_state,
    geometric_measure,
    log_geometric_measure,
    verify_symmetric_maximizer,
)
from .subspaces import basis, dim_symmetric, dim_translation_invariant
from .takagi import takagi_factorize
from .tensor_core import ProductState, phase_fix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fmt(x: float) -> str:
    return f"{x + 0.0:.9g}"


def _fmt_complex(z: complex) -> str:
    # parts far below double precision relative to a unit vector print as 0
    z = complex(z.real if abs(z.real) > 1e-15 else 0.0, z.imag if abs(z.imag) > 1e-15 else 0.0)
    if abs(z.imag) < 5e-10:
        return _fmt(z.real)
    return f"{z.real:.9g}{z.imag:+.9g}j"


def _fmt_vector(v) -> str:
    return "[" + ", ".join(_fmt_complex(c) for c in np.asarray(v).reshape(-1)) + "]"


def _pairs(v) -> list:
    return [[float(c.real), float(c.imag)] for c in np.asarray(v, dtype=complex).reshape(-1)]


def _emit(doc: dict):
    print(json.dumps(doc, indent=1, sort_keys=True))


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(restarts=args.restarts, master_seed=args.seed,
                           field=getattr(args, "field", "complex"))


# -- subcommands -----------------------------------------------------------------

def cmd_measure(args) -> int:
    state = load_state(args.state_file)
    cfg = _config(args)
    if args.symmetric_only:
        g, vec = closest_symmetric_product_state(state, cfg)
        product = ProductState.symmetric(vec, state.n_parties)
        symmetric = True
    else:
        res = closest_product_state(state, cfg)
        g, product = res.overlap_g, res.maximizer
        symmetric = verify_symmetric_maximizer(res)
    g = min(g, 1.0)
    e_g, eps_g = geometric_measure(g), log_geometric_measure(g)
    if args.json:
        _emit({
            "overlap_g": g,
            "geometric_measure": e_g,
            "log_geometric_measure": eps_g if np.isfinite(eps_g) else "inf",
            "maximizer_factors": [_pairs(f) for f in product.factors],
            "maximizer_state": state_to_dict(product.to_state()),
            "symmetric_maximizer": symmetric,
            "field": cfg.field,
            "symmetric_only": args.symmetric_only,
        })
        return EXIT_OK
    print(f"G        = {_fmt(g)}")
    print(f"E_G      = {_fmt(e_g)}")
    print(f"eps_G    = {_fmt(eps_g)}")
    for j, f in enumerate(product.factors):
        print(f"factor {j} = {_fmt_vector(f)}")
    print(f"symmetric maximizer: {'yes' if symmetric else 'no'}")
    return EXIT_OK


def cmd_takagi(args) -> int:
    m = load_matrix(args.matrix_file)
    try:
        dec = takagi_factorize(m)
    except ValueError as exc:
        raise FormatError(f"field 'entries': {exc}") from exc
    err = float(np.linalg.norm(dec.reconstruct() - m) / max(np.linalg.norm(m), 1e-300))
    if args.json:
        _emit({"values": [float(v) for v in dec.values],
               "unitary": {"dim": int(m.shape[0]), "entries": _pairs(dec.unitary)},
               "reconstruction_error": err})
        return EXIT_OK
    print("values   = " + ", ".join(_fmt(v) for v in dec.values))
    print("U (rows):")
    for row in dec.unitary:
        print("  " + _fmt_vector(row))
    print(f"reconstruction error = {err:.3g}")
    return EXIT_OK


def cmd_dims(args) -> int:
    s = dim_symmetric(args.n, args.k)
    t = dim_translation_invariant(args.n, args.k)
    if args.json:
        _emit({"n": args.n, "k": args.k, "S": s, "T": t, "X": t - s})
    else:
        print(f"S={s} T={t} X={t - s}")
    return EXIT_OK


def cmd_subspace_basis(args) -> int:
    b = basis(args.which, args.n, args.k)
    _emit({"label": b.label, "n_parties": args.n, "local_dim": args.k,
           "vectors": [state_to_dict(v) for v in b.vectors]})
    return EXIT_OK


def cmd_operator_max(args) -> int:
    x = load_operator(args.operator_file)
    cfg = _config(args)
    if args.symmetric:
        value, vec = g_hat_symmetric(x, cfg)
        factors = [phase_fix(vec)] * x.n_parties
    else:
        res = g_hat(x, cfg)
        value, factors = res.overlap_g, list(res.maximizer.factors)
    if args.json:
        _emit({"value": value, "symmetric": args.symmetric,
               "maximizer_factors": [_pairs(f) for f in factors]})
        return EXIT_OK
    label = "G_hat_S" if args.symmetric else "G_hat"
    print(f"{label} = {_fmt(value)}")
    for j, f in enumerate(factors):
        print(f"factor {j} = {_fmt_vector(f)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = lab.run_claim(args.claim, args.n, args.k, args.trials, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json())
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_counterexamples(args) -> int:
    checks = lab.counterexample_checks(args.seed)
    ok = all(c.passed for c in checks)
    if args.json:
        _emit({"passed": ok, "checks": [c.to_dict() for c in checks]})
    else:
        width = max(len(c.name) for c in checks)
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  "
                  f"expected: {c.expected}  computed: {c.computed}")
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geosym",
        description="Closest product states and the geometric measure of entanglement.")
    sub = parser.add_subparsers(dest="command", required=True)

    def optimizer_flags(p, field=True):
        p.add_argument("--restarts", type=_positive_int, default=20, help="random restarts (default 20)")
        p.add_argument("--seed", type=_nonnegative_int, default=0, help="master seed (default 0)")
        if field:
            p.add_argument("--field", choices=("complex", "real"), default="complex")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("measure", help="G, E_G and eps_G of a state file")
    p.add_argument("state_file")
    p.add_argument("--symmetric-only", action="store_true",
                   help="maximize over symmetric products a^N only")
    optimizer_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("takagi", help="Takagi factorization of a complex symmetric matrix file")
    p.add_argument("matrix_file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_takagi)

    p = sub.add_parser("dims", help="dimensions of the S, T and X subspaces")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=int, choices=range(2, 17), metavar="K", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("subspace-basis", help="orthonormal basis of S, T or X as state JSON")
    p.add_argument("--which", choices=("S", "T", "X"), required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=int, choices=range(2, 17), metavar="K", required=True)
    p.set_defaults(func=cmd_subspace_basis)

    p = sub.add_parser("operator-max", help="max |<phi|X|phi>| over product states")
    p.add_argument("operator_file")
    p.add_argument("--symmetric", action="store_true", help="restrict to symmetric products")
    optimizer_flags(p, field=False)
    p.set_defaults(func=cmd_operator_max)

    p = sub.add_parser("verify", help="run a verification campaign; prints a JSON report")
    p.add_argument("claim", choices=lab.CLAIMS)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--k", type=int, choices=range(2, 17), metavar="K")
    p.add_argument("--trials", type=_nonnegative_int)
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexamples", help="the four counterexamples, expected vs computed")
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_counterexamples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
