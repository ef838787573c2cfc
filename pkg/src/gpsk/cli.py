"""Command-line front end.

Every command writes a machine-readable artifact (JSON for build, CSV
otherwise) and a human-readable summary.  With --out the artifact goes to
the file and the summary to stdout; without it the artifact goes to stdout
and the summary to stderr, so pipelines stay clean either way.

Exit codes: 0 on success, 2 on a validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import constellations as gc
from .analysis import (diversity_product, rate, union_bound_bler,
                       v1_analytic_dp, v1_dp_terms, v2_analytic_dp,
                       v2_dp_terms, v3_analytic_dp)
from .simulate import SimConfig, run_bler

__all__ = ["main", "build_family"]

_TABLE_MATCH_TOL = 1e-3

_CSV_SCHEMAS = """\
CSV schemas:
  diversity  family,n,L,rate,diversity_product,witness_i,witness_j
  table v1   n,r,within_shell,cross_shell,dp_analytic,dp_brute,match
  table v2   n,r,r_sin_2pi_n,sin_pi_n,dp_analytic,dp_brute,match
  table v3   n,size,dp_analytic,dp_brute,match
  simulate   family,n,N,snr_db,trials,errors,bler,ci95
  bound      family,n,N,mode,snr_db,union_bound
build emits the constellation JSON (family, n, M, L, codewords).
"""


def build_family(family, n):
    """Construct a constellation by CLI family name."""
    if family == "diag3":
        return gc.build_diag3()
    if n is None:
        raise ValueError(f"--family {family} requires --n")
    builders = {"o": gc.build_o, "v1": gc.build_v1, "v2": gc.build_v2,
                "v3": gc.build_v3, "v4": gc.build_v4}
    return builders[family](n)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(artifact_text, summary_lines, out):
    if out:
        Path(out).write_text(artifact_text)
        stream = sys.stdout
    else:
        sys.stdout.write(artifact_text)
        stream = sys.stderr
    for line in summary_lines:
        print(line, file=stream)


def _label(family, n):
    return family if family == "diag3" else f"{family}({n})"


def _cmd_build(args):
    v = build_family(args.family, args.n)
    summary = [f"{_label(args.family, args.n)}: L={v.size} M={v.dimension} "
               f"rate={rate(v):.4f} bits/channel use"]
    return gc.to_json(v) + "\n", summary


def _cmd_diversity(args):
    v = build_family(args.family, args.n)
    rep = diversity_product(v)
    n_str = "" if args.n is None else args.n
    rows = [[v.family, n_str, v.size, f"{rate(v):.6f}", f"{rep.value:.9f}",
             rep.witness[0], rep.witness[1]]]
    text = _csv_text(
        ["family", "n", "L", "rate", "diversity_product", "witness_i", "witness_j"],
        rows)
    summary = [f"{_label(args.family, args.n)}: L={v.size} rate={rate(v):.4f} "
               f"dp={rep.value:.6f} witness=({rep.witness[0]},{rep.witness[1]}) "
               f"fully_diverse={rep.fully_diverse}"]
    return text, summary


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    if sep:
        return int(lo), int(hi)
    return int(text), int(text)


def _cmd_table(args):
    lo, hi = _parse_range(args.n)
    if lo > hi:
        raise ValueError(f"empty range {args.n}")
    step = 2 if args.family in ("v1", "v2") else 1
    if args.family in ("v1", "v2") and lo % 2:
        raise ValueError(f"--family {args.family} table needs an even start, got {lo}")
    rows = []
    mismatches = 0
    for n in range(lo, hi + 1, step):
        v = build_family(args.family, n)
        brute = diversity_product(v).value
        if args.family == "v1":
            r, within, cross = v1_dp_terms(n)
            analytic = v1_analytic_dp(n)
            row = [n, f"{r:.6f}", f"{within:.6f}", f"{cross:.6f}"]
        elif args.family == "v2":
            r, t1, t2 = v2_dp_terms(n)
            analytic = v2_analytic_dp(n)
            row = [n, f"{r:.6f}", f"{t1:.6f}", f"{t2:.6f}"]
        else:
            analytic = v3_analytic_dp(n)
            row = [n, v.size]
        ok = abs(analytic - brute) <= _TABLE_MATCH_TOL
        mismatches += not ok
        rows.append(row + [f"{analytic:.9f}", f"{brute:.9f}",
                           "match" if ok else "MISMATCH"])
    headers = {
        "v1": ["n", "r", "within_shell", "cross_shell",
               "dp_analytic", "dp_brute", "match"],
        "v2": ["n", "r", "r_sin_2pi_n", "sin_pi_n",
               "dp_analytic", "dp_brute", "match"],
        "v3": ["n", "size", "dp_analytic", "dp_brute", "match"],
    }
    text = _csv_text(headers[args.family], rows)
    state = "all rows match" if not mismatches else f"{mismatches} MISMATCH rows"
    summary = [f"{args.family} table n={lo}..{hi}: {len(rows)} rows, "
               f"{state} at {_TABLE_MATCH_TOL:g}"]
    return text, summary


def _load_sim_args(args):
    # --config JSON supplies defaults; explicit flags win
    merged = {"family": args.family, "n": args.n, "N": args.N,
              "snr_db": args.snr_db, "blocks": args.blocks, "seed": args.seed,
              "decoder": args.decoder, "frame_len": args.frame_len}
    if args.config:
        loaded = json.loads(Path(args.config).read_text())
        unknown = set(loaded) - set(merged)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, value in loaded.items():
            if merged[key] is None:
                merged[key] = value
    defaults = {"seed": 0, "decoder": "fast", "frame_len": 1}
    for key, value in defaults.items():
        if merged[key] is None:
            merged[key] = value
    for key in ("family", "N", "snr_db", "blocks"):
        if merged[key] is None:
            raise ValueError(f"simulate needs --{key.replace('_', '-')} "
                             "(flag or config)")
    if isinstance(merged["snr_db"], str):
        merged["snr_db"] = [float(s) for s in merged["snr_db"].split(",")]
    return merged


def _cmd_simulate(args):
    spec = _load_sim_args(args)
    v = build_family(spec["family"], spec["n"])
    config = SimConfig(constellation=v, n_rx=int(spec["N"]),
                       snr_db_points=tuple(spec["snr_db"]),
                       blocks_per_point=int(spec["blocks"]),
                       frame_len=int(spec["frame_len"]), seed=int(spec["seed"]),
                       decoder=spec["decoder"])
    points = run_bler(config)
    n_str = "" if spec["n"] is None else spec["n"]
    rows = [[v.family, n_str, spec["N"], f"{p.snr_db:g}", p.trials, p.errors,
             f"{p.bler:.6e}", f"{p.ci95_halfwidth:.6e}"] for p in points]
    text = _csv_text(
        ["family", "n", "N", "snr_db", "trials", "errors", "bler", "ci95"], rows)
    summary = [f"{_label(spec['family'], spec['n'])} N={spec['N']} "
               f"decoder={spec['decoder']} seed={spec['seed']}"]
    summary += [f"  snr={p.snr_db:6.2f} dB  bler={p.bler:.3e} "
                f"({p.errors}/{p.trials})  ci95=±{p.ci95_halfwidth:.1e}"
                for p in points]
    return text, summary


def _cmd_bound(args):
    v = build_family(args.family, args.n)
    snrs = [float(s) for s in args.snr_db.split(",")]
    n_str = "" if args.n is None else args.n
    rows = []
    values = []
    for snr_db in snrs:
        ub = union_bound_bler(v, rho=10.0 ** (snr_db / 10.0), n_rx=args.N,
                              mode=args.mode)
        values.append(ub)
        rows.append([v.family, n_str, args.N, args.mode, f"{snr_db:g}",
                     f"{ub:.6e}"])
    text = _csv_text(["family", "n", "N", "mode", "snr_db", "union_bound"], rows)
    summary = [f"{_label(args.family, args.n)} N={args.N} mode={args.mode}"]
    summary += [f"  snr={s:6.2f} dB  union_bound={u:.3e}"
                for s, u in zip(snrs, values)]
    return text, summary


def _make_parser():
    parser = argparse.ArgumentParser(
        prog="gpsk",
        description="Generalized-PSK unitary constellations: build, verify, simulate.",
        epilog=_CSV_SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p, families, n_help="family size parameter"):
        p.add_argument("--family", required=True, choices=families)
        p.add_argument("--n", type=int, default=None, help=n_help)

    p = sub.add_parser("build", help="construct a constellation, emit JSON")
    add_family(p, ("o", "v1", "v2", "v3", "v4", "diag3"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("diversity", help="brute-force diversity product")
    add_family(p, ("o", "v1", "v2", "v3", "v4", "diag3"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_diversity)

    p = sub.add_parser("table", help="reference table with analytic/brute dp")
    p.add_argument("--family", required=True, choices=("v1", "v2", "v3"))
    p.add_argument("--n", required=True,
                   help="range lo..hi (inclusive; v1/v2 step by 2), or one value")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("simulate", help="Monte-Carlo block-error rates")
    p.add_argument("--family", choices=("o", "v1", "v2", "v3", "v4", "diag3"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--N", type=int, default=None, help="receive antennas")
    p.add_argument("--snr-db", dest="snr_db", default=None,
                   help="comma-separated SNR points in dB")
    p.add_argument("--blocks", type=int, default=None, help="decoded blocks per point")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--decoder", choices=("fast", "exhaustive"), default=None)
    p.add_argument("--frame-len", dest="frame_len", type=int, default=None,
                   help="codewords per channel realization")
    p.add_argument("--config", default=None,
                   help="JSON file with the same keys; explicit flags win")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bound", help="union bound on block error rate")
    add_family(p, ("o", "v1", "v2", "v3", "v4", "diag3"))
    p.add_argument("--N", type=int, required=True, help="receive antennas")
    p.add_argument("--snr-db", dest="snr_db", required=True,
                   help="comma-separated SNR points in dB")
    p.add_argument("--mode", choices=("differential", "coherent", "noncoherent"),
                   default="differential")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bound)
    return parser


def main(argv=None):
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        artifact, summary = args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(artifact, summary, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
