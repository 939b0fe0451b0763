"""Batch command-line front end.

Subcommands: verify, width-cdf, height-cdf, six-vertex, asymptotics,
oracle, op-table.  Specs are JSON (inline or @file); outputs are CSV or
JSON tables with full-precision decimals, and ``--plot`` renders a PNG
next to the delimited output.  Exit codes: 0 clean, 1 usage error,
2 identity failure, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath as mp

from .numerics import PrecisionConfig
from .report import emit_report, render_number

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IDENTITY = 2
EXIT_ORACLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_spec(text: str) -> dict:
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def _parse_gamma(value: str, prec: PrecisionConfig):
    with prec.workprec():
        if isinstance(value, str) and value.startswith("pi/"):
            return mp.pi / int(value[3:])
        if isinstance(value, str) and value.startswith("pi*"):
            return mp.pi * mp.mpf(Fraction(value[3:]))
        return mp.mpf(value)


def _parse_range(text: str):
    """start:stop:step (inclusive) or comma list."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",")]


def _finish(args, rows, config, default_stem: str, plot_spec=None):
    path = args.output
    text = emit_report(rows, args.format, config, path)
    if path is None:
        sys.stdout.write(text)
    if args.plot and rows:
        png = (os.path.splitext(path)[0] if path else default_stem) + ".png"
        from .plotting import save_series_plot
        if plot_spec:
            save_series_plot(rows, plot_spec[0], plot_spec[1], png,
                             logy=plot_spec[2], title=default_stem)
            print(f"wrote {png}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, prec: PrecisionConfig) -> int:
    from .identities import run_identity_suite
    reports = run_identity_suite(args.suite, instances=args.instances,
                                 n_max=args.n_max, m_max=args.m_max,
                                 seed=args.seed, prec=prec)
    rows = [r.to_json() for r in reports]
    failures = sum(1 for r in reports if not r.passed)
    summary = {"identity": "TOTAL", "n": len(reports), "m": failures,
               "mode": "", "lhs": "", "rhs": "", "abs_discrepancy": "",
               "rel_discrepancy": "", "passed": failures == 0,
               "note": f"{failures} failures of {len(reports)}"}
    rows.append(summary)
    config = vars(args) | {"precision_bits": prec.bits}
    code = _finish(args, rows, config, "verify")
    print(f"verify: {len(reports)} checks, {failures} failures", file=sys.stderr)
    return EXIT_IDENTITY if failures else code


def cmd_width_cdf(args, prec: PrecisionConfig) -> int:
    from .walks import PathEnsembleSpec, oracle_width_cdf, width_cdf_rw
    spec_d = _load_spec(args.spec)
    spec = PathEnsembleSpec(spec_d["kind"], tuple(spec_d["starts"]),
                            tuple(spec_d["ends"]), spec_d["T"])
    forms = ["direct", "bordered", "framed"] if args.form == "all" else [args.form]
    rows = []
    mismatch = False
    with prec.workprec():
        for M in _parse_range(args.M):
            row = {"M": M}
            for form in forms:
                row[form] = width_cdf_rw(spec, M, form, prec)
            if args.check_oracle:
                if spec.kind != "discrete":
                    raise UsageError("--check-oracle requires a discrete spec")
                row["oracle"] = oracle_width_cdf(spec, M)
                base = row[forms[0]]
                if isinstance(base, Fraction):
                    diff = abs(base - row["oracle"])
                    mismatch = mismatch or diff > Fraction(1, 10 ** 12)
                else:
                    diff = abs(base - mp.mpf(row["oracle"].numerator)
                               / row["oracle"].denominator)
                    mismatch = mismatch or diff > mp.mpf(10) ** (-12)
                row["discrepancy"] = diff
            rows.append(row)
    config = vars(args) | {"precision_bits": prec.bits}
    code = _finish(args, rows, config, "width-cdf", ("M", forms, False))
    return EXIT_ORACLE if mismatch else code


def cmd_height_cdf(args, prec: PrecisionConfig) -> int:
    from .excursions import nibe_height_cdf
    from .km import km_limit_extrapolate
    alphas = [mp.mpf(a) for a in args.alphas.split(",")] if args.alphas else []
    betas = [mp.mpf(b) for b in args.betas.split(",")] if args.betas else []
    rows = []
    mismatch = False
    with prec.workprec():
        for M in args.M.split(","):
            Mv = mp.mpf(M)
            row = {"M": Mv, "cdf": nibe_height_cdf(args.n, alphas, betas, Mv,
                                                   form=args.variant, prec=prec)}
            if args.check_oracle:
                row["oracle"] = km_limit_extrapolate(args.n, len(betas), alphas,
                                                     betas, Mv, prec)
                row["discrepancy"] = abs(row["cdf"] - row["oracle"])
                if row["discrepancy"] > mp.mpf(10) ** (-4) * abs(row["oracle"]):
                    mismatch = True
            rows.append(row)
    config = {k: v for k, v in vars(args).items() if k != "func"} | \
        {"precision_bits": prec.bits}
    code = _finish(args, rows, config, "height-cdf", ("M", ["cdf"], False))
    return EXIT_ORACLE if mismatch else code


def cmd_six_vertex(args, prec: PrecisionConfig) -> int:
    from .symbols import SixVertexWeights
    from .sixvertex import (SixVertexSpec, ik_partition, oracle_enumerate_sixvertex,
                            sixv_partition)
    with prec.workprec():
        gamma = _parse_gamma(args.gamma, prec)
        w = SixVertexWeights(args.phase, mp.mpf(args.t), gamma, prec)
        rows = []
        mismatch = False
        for n in _parse_range(args.n):
            if args.spec:
                d = _load_spec(args.spec)
                spec = SixVertexSpec(w, n, tuple(d["chis"]), tuple(d["psis"]))
                Z = ik_partition(spec, prec)
            else:
                spec = SixVertexSpec(w, n, xi1=args.xi1, xi2=args.xi2)
                Z = sixv_partition(spec, args.variant, prec)
            row = {"n": n, "Z": Z, "Z_normalized": Z / w.c() ** (n * n)}
            if args.check_oracle:
                if n > 4:
                    raise UsageError("oracle enumeration capped at n = 4")
                if args.variant != "homogeneous" or args.spec:
                    enum_spec = spec
                else:
                    enum_spec = SixVertexSpec(w, n)
                row["oracle"] = oracle_enumerate_sixvertex(enum_spec, prec)
                row["discrepancy"] = abs(Z - row["oracle"]) / abs(Z)
                if row["discrepancy"] > mp.mpf(10) ** (-20):
                    mismatch = True
            rows.append(row)
    config = {k: v for k, v in vars(args).items() if k != "func"} | \
        {"precision_bits": prec.bits}
    code = _finish(args, rows, config, "six-vertex", ("n", ["Z"], True))
    return EXIT_ORACLE if mismatch else code


def cmd_asymptotics(args, prec: PrecisionConfig) -> int:
    with prec.workprec():
        if args.theorem == "szego":
            from .symbols import make_ctrw_symbol
            from .szego import strong_szego_check
            sym = make_ctrw_symbol(mp.mpf(args.T), normalized=True, prec=prec)
            rows = strong_szego_check(sym, _parse_range(args.n), prec)
            plot = ("n", ["deviation"], True)
        else:
            from .szego import convergence_study
            params = {}
            if args.beta:
                vals = [int(b) for b in args.beta.split(",")]
                if args.theorem == "7.2":
                    params["beta1"] = vals[0]
                elif args.theorem == "1.14":
                    params["beta1"], params["beta2"] = vals[:2]
                elif args.theorem == "multi":
                    params["betas"] = vals
                else:
                    params["beta1"] = vals[0]
            if args.gamma1 is not None:
                params["gamma1"] = args.gamma1
            rows = convergence_study(args.theorem, mp.mpf(args.T), params,
                                     _parse_range(args.n), prec, variant=args.bracket)
            plot = ("n", ["residual"], True)
    config = {k: v for k, v in vars(args).items() if k != "func"} | \
        {"precision_bits": prec.bits}
    return _finish(args, rows, config, f"asymptotics-{args.theorem}", plot)


def cmd_oracle(args, prec: PrecisionConfig) -> int:
    rows = []
    with prec.workprec():
        if args.which == "rw":
            from .walks import PathEnsembleSpec, oracle_enumerate_rw
            d = _load_spec(args.spec)
            spec = PathEnsembleSpec(d["kind"], tuple(d["starts"]), tuple(d["ends"]), d["T"])
            bound = d.get("width_bound")
            rows.append({"oracle": "rw_enumeration",
                         "value": oracle_enumerate_rw(spec, bound)})
        elif args.which == "sixv":
            from .symbols import SixVertexWeights
            from .sixvertex import SixVertexSpec, oracle_enumerate_sixvertex
            d = _load_spec(args.spec)
            w = SixVertexWeights(d.get("phase", "disordered"), d.get("t", 0),
                                 _parse_gamma(d["gamma"], prec), prec)
            spec = SixVertexSpec(w, d["n"],
                                 tuple(d["chis"]) if "chis" in d else None,
                                 tuple(d["psis"]) if "psis" in d else None)
            rows.append({"oracle": "sixv_enumeration",
                         "value": oracle_enumerate_sixvertex(spec, prec,
                                                             unit_weights=d.get("unit_weights", False))})
        elif args.which == "km":
            from .km import km_limit_extrapolate
            d = _load_spec(args.spec)
            rows.append({"oracle": "km_extrapolation",
                         "value": km_limit_extrapolate(d["n"], d["m"],
                                                       d.get("alphas", []),
                                                       d.get("betas", []),
                                                       d["M"], prec)})
        else:
            raise UsageError(f"unknown oracle {args.which!r}")
    config = {k: v for k, v in vars(args).items() if k != "func"} | \
        {"precision_bits": prec.bits}
    return _finish(args, rows, config, "oracle")


def cmd_op_table(args, prec: PrecisionConfig) -> int:
    from .symbols import symbol_from_config
    from .orthopoly import build_bopuc
    spec = _load_spec(args.spec)
    with prec.workprec():
        sym = symbol_from_config(spec, prec)
        sysB = build_bopuc(sym, args.degree, prec)
        rows = []
        for k in range(args.degree + 1):
            rows.append({
                "degree": k,
                "monic": [render_number(c) for c in sysB.A[k]],
                "monic_hat": [render_number(c) for c in sysB.Ahat[k]],
                "norm_ratio_e": render_number(sysB.e[k]),
                "kappa_sq": render_number(sysB.kappa_sq(k)),
            })
    config = {k: v for k, v in vars(args).items() if k != "func"} | \
        {"precision_bits": prec.bits}
    return _finish(args, rows, config, "op-table")


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int,
                        default=int(os.environ.get("FRAMEDET_PRECISION_BITS", "256")))
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--plot", action="store_true",
                        help="render a PNG figure next to the table output")

    p = _Parser(prog="framedet", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    v = add("verify", help="run identity suites on random instances")
    v.add_argument("--suite", default="all")
    v.add_argument("--mode", choices=("rational", "float"), default="rational")
    v.add_argument("--instances", type=int, default=100)
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--m-max", type=int, default=3)
    v.set_defaults(func=cmd_verify)

    wc = add("width-cdf", help="width distribution of walk ensembles")
    wc.add_argument("--spec", required=True,
                    help='JSON like {"kind":"discrete","starts":[1,2],"ends":[1,2],"T":2}')
    wc.add_argument("--M", required=True, help="integer list or start:stop[:step]")
    wc.add_argument("--form", choices=("direct", "bordered", "framed", "all"),
                    default="direct")
    wc.add_argument("--check-oracle", action="store_true")
    wc.set_defaults(func=cmd_width_cdf)

    hc = add("height-cdf", help="maximal height of excursion ensembles")
    hc.add_argument("--n", type=int, required=True)
    hc.add_argument("--alphas", default="")
    hc.add_argument("--betas", default="")
    hc.add_argument("--M", required=True)
    hc.add_argument("--variant", choices=("auto", "framed", "bordered", "pure"),
                    default="auto")
    hc.add_argument("--check-oracle", action="store_true")
    hc.set_defaults(func=cmd_height_cdf)

    sv = add("six-vertex", help="DWBC partition functions")
    sv.add_argument("--phase", choices=("ferroelectric", "disordered",
                                        "antiferroelectric"), default="disordered")
    sv.add_argument("--gamma", required=True, help="number, pi/K, or pi*p/q")
    sv.add_argument("--t", default="0")
    sv.add_argument("--n", required=True)
    sv.add_argument("--variant", choices=("homogeneous", "refined", "doubly_refined"),
                    default="homogeneous")
    sv.add_argument("--xi1", type=float, default=None)
    sv.add_argument("--xi2", type=float, default=None)
    sv.add_argument("--spec", default=None, help="inhomogeneous {chis, psis} JSON")
    sv.add_argument("--check-oracle", action="store_true")
    sv.set_defaults(func=cmd_six_vertex)

    asym = add("asymptotics", help="exact vs asymptotic studies")
    asym.add_argument("--theorem", choices=("7.2", "1.14", "1.15", "multi", "szego"),
                      required=True)
    asym.add_argument("--T", default="1")
    asym.add_argument("--beta", default=None, help="comma list of gaps")
    asym.add_argument("--gamma1", type=int, default=None)
    asym.add_argument("--n", required=True, help="start:stop[:step] or comma list")
    asym.add_argument("--bracket", choices=("derived", "printed"), default="derived")
    asym.add_argument("--rho", type=float, default=1.5)
    asym.set_defaults(func=cmd_asymptotics)

    orc = add("oracle", help="brute-force ground-truth evaluators")
    orc.add_argument("--which", choices=("rw", "sixv", "km"), required=True)
    orc.add_argument("--spec", required=True)
    orc.set_defaults(func=cmd_oracle)

    op = add("op-table", help="dump bi-orthogonal polynomial data")
    op.add_argument("--spec", required=True, help='symbol config JSON')
    op.add_argument("--degree", type=int, default=6)
    op.set_defaults(func=cmd_op_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        prec = PrecisionConfig(args.precision_bits)
        return args.func(args, prec)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
