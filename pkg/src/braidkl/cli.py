"""Command-line surface: KL tables, equivariant decompositions, E1-page
ledgers, generating-function fits, and the verification suites.

Reports are JSON with every exact value rendered as a decimal string
(big integers overflow native JSON numbers).  Output is byte-stable across
runs; wall-clock timing is only included when --timing is passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from math import factorial

from . import eqkl, klcore, polyseries, specseq, verify
from .graphmat import load_graph
from .polyseries import SeqTable

CACHE_ENV = "KL_CACHE_DIR"
CACHE_FILE = "kltable.json"


def _load_cache():
    root = os.environ.get(CACHE_ENV)
    if not root:
        return
    path = os.path.join(root, CACHE_FILE)
    try:
        with open(path) as fh:
            klcore.kl_cache_import(json.load(fh))
    except FileNotFoundError:
        pass
    except (OSError, ValueError) as exc:
        print(f"warning: ignoring unreadable KL cache: {exc}", file=sys.stderr)


def _save_cache():
    root = os.environ.get(CACHE_ENV)
    if not root:
        return
    try:
        os.makedirs(root, exist_ok=True)
        path = os.path.join(root, CACHE_FILE)
        with open(path, "w") as fh:
            json.dump(klcore.kl_cache_export(), fh, sort_keys=True)
    except OSError as exc:
        print(f"warning: could not persist KL cache: {exc}", file=sys.stderr)


def _emit(report: dict, timing: float | None):
    if timing is not None:
        report = dict(report)
        report["timing_seconds"] = f"{timing:.3f}"
    print(json.dumps(report, indent=2, sort_keys=True))


def _frac(x) -> str:
    return str(Fraction(x))


def cmd_kl(args) -> int:
    if (args.n is None) == (args.graph is None):
        print("error: give exactly one of --n or --graph", file=sys.stderr)
        return 2
    if args.n is not None:
        if args.n < 1:
            print("error: --n must be positive", file=sys.stderr)
            return 2
        poly = klcore.kl_braid(args.n)
        inputs = {"n": str(args.n)}
    else:
        gamma = load_graph(args.graph)
        inputs = {"graph": args.graph, "cone": str(args.cone)}
        cone = args.cone
        if cone:
            from .graphmat import cone_extend

            gamma = cone_extend(gamma, cone)
        poly = klcore.kl_graphic(gamma)
    coeffs = [_frac(poly.coeff(i)) for i in range(poly.degree() + 1)]
    return _finish(args, "kl", inputs, {"coefficients": coeffs})


def cmd_eqkl(args) -> int:
    graded = eqkl.eqkl_braid(args.n)
    degrees = []
    verdicts = {}
    for i, coeff in enumerate(graded.coeffs):
        dec = eqkl.specht_decompose(coeff)
        degrees.append(
            {
                "degree": i,
                "dimension": _frac(coeff.dim()),
                "specht_multiplicities": {
                    ",".join(map(str, lam.parts)): _frac(m)
                    for lam, m in sorted(dec.items())
                },
            }
        )
        if i >= 1:
            verdicts[f"row_bound_degree_{i}"] = eqkl.row_bound_check(i, args.n)
    if args.format == "csv":
        print("degree,partition,multiplicity")
        for row in degrees:
            for key, m in row["specht_multiplicities"].items():
                print(f"{row['degree']},\"{key}\",{m}")
        return 0
    return _finish(args, "eqkl", {"n": str(args.n)}, {"degrees": degrees}, verdicts)


def cmd_e1(args) -> int:
    if args.graph:
        gamma = load_graph(args.graph)
        rep = specseq.euler_identity_graph(gamma, args.i, args.n)
        inputs = {"i": str(args.i), "n": str(args.n), "graph": args.graph}
        cells = []
    else:
        rep = specseq.euler_identity(args.i, args.n)
        inputs = {"i": str(args.i), "n": str(args.n)}
        cells = []
        for p in range(0, 2 * args.i + 1):
            for q in range(0, args.i + 1):
                dim = specseq.b_dim(args.i, p, q, args.n)
                if dim:
                    cells.append({"p": p, "q": q, "dim": str(dim)})
    outputs = {
        "cells": cells,
        "euler_lhs": str(rep["lhs"]),
        "euler_rhs": str(rep["rhs"]),
    }
    return _finish(args, "e1", inputs, outputs, {"euler_identity": rep["equal"]})


def cmd_genfun(args) -> int:
    i, n_max = args.i, args.max_n
    seq = [klcore.d_coeff(i, n) for n in range(1, n_max + 1)]
    if args.format == "csv":
        print("n,dim")
        for n, v in enumerate(seq, start=1):
            print(f"{n},{v}")
        return 0
    outputs = {"dims": [str(v) for v in seq]}
    verdicts = {}
    if args.fit:
        fit = polyseries.fit_rational(SeqTable(1, seq), set(range(1, 2 * i + 1)))
        if fit is None:
            outputs["fit"] = None
            verdicts["fit_found"] = False
        else:
            polypart, terms = polyseries.partial_fractions(fit)
            r = polyseries.r_extract(fit, 2 * i)
            expected = Fraction(klcore.d_coeff(i - 1, 2 * i), factorial(2 * i))
            outputs["fit"] = {
                "numerator": [_frac(c) for c in fit.num.coeffs],
                "denominator": [_frac(c) for c in fit.den.coeffs],
                "partial_fractions": [
                    {"pole": j, "order": m, "coefficient": _frac(c)}
                    for j, m, c in terms
                ],
                "poly_part": [_frac(c) for c in polypart.coeffs],
                "egf_polynomials": [
                    [_frac(c) for c in p.coeffs] for p in polyseries.egf_form(fit)
                ],
                "r_constant": _frac(r),
                "r_expected": _frac(expected),
            }
            verdicts["fit_found"] = True
            verdicts["r_matches_dfg"] = r == expected
    if args.asymptotics:
        rows = specseq.ratio_diagnostic(i, range(max(1, n_max - 9), n_max + 1))
        outputs["ratios"] = [
            {"n": n, "cell_ratio": _frac(a), "dim_ratio": _frac(b)}
            for n, a, b in rows
        ]
    return _finish(
        args, "genfun", {"i": str(i), "max_n": str(n_max)}, outputs, verdicts
    )


def cmd_verify(args) -> int:
    try:
        checks = verify.run_suite(args.suite)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    failed = 0
    for c in checks:
        mark = "PASS" if c["ok"] else "FAIL"
        detail = f" - {c['detail']}" if c["detail"] else ""
        print(f"{mark} {c['name']}{detail}")
        if not c["ok"]:
            failed += 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def _finish(args, command, inputs, outputs, verdicts=None) -> int:
    report = {"command": command, "inputs": inputs, "outputs": outputs}
    if verdicts:
        report["verdicts"] = verdicts
    elapsed = time.monotonic() - args._start if args.timing else None
    _emit(report, elapsed)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidkl",
        description="Exact Kazhdan-Lusztig computations for braid and "
        "cone-graph matroids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_kl = sub.add_parser("kl", help="KL polynomial coefficients")
    p_kl.add_argument("--n", type=int, help="braid matroid on n vertices")
    p_kl.add_argument("--graph", help="graph file (JSON or edge list)")
    p_kl.add_argument("--cone", type=int, default=0, help="cone with N new vertices")
    p_kl.set_defaults(func=cmd_kl)

    p_eq = sub.add_parser("eqkl", help="equivariant KL decomposition")
    p_eq.add_argument("--n", type=int, required=True)
    p_eq.add_argument("--format", choices=("json", "csv"), default="json")
    p_eq.set_defaults(func=cmd_eqkl)

    p_e1 = sub.add_parser("e1", help="E1-page cell dimensions and Euler identity")
    p_e1.add_argument("--i", type=int, required=True)
    p_e1.add_argument("--n", type=int, required=True)
    p_e1.add_argument("--graph", help="relative version over a cone graph")
    p_e1.set_defaults(func=cmd_e1)

    p_gf = sub.add_parser("genfun", help="dimension sequences and fits")
    p_gf.add_argument("--i", type=int, required=True)
    p_gf.add_argument("--max-n", type=int, required=True)
    p_gf.add_argument("--fit", action="store_true")
    p_gf.add_argument("--asymptotics", action="store_true")
    p_gf.add_argument("--format", choices=("json", "csv"), default="json")
    p_gf.set_defaults(func=cmd_genfun)

    p_v = sub.add_parser("verify", help="run a verification suite")
    p_v.add_argument(
        "--suite",
        required=True,
        help="paper-i1, paper-i2, euler, fs, conjecture, relative, properties, all",
    )
    p_v.set_defaults(func=cmd_verify)

    for sp in (p_kl, p_eq, p_e1, p_gf, p_v):
        sp.add_argument("--timing", action="store_true", help="include wall time")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _load_cache()
    args._start = time.monotonic()
    try:
        code = args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        _save_cache()
    return code


def _entry():
    raise SystemExit(main())


if __name__ == "__main__":
    _entry()
