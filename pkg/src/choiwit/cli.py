"""Command-line front end: family scans, single-point certificates, vector dumps
and state detection, with reproducible CSV/JSON output.

Exit codes: 0 success or affirmative result, 1 negative result, 2 usage or
validation error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

import numpy as np

from .errors import ChoiwitError
from .maps import ALPHA_MAX, ALPHA_MIN, MapParams, family_from_alpha, on_family_check
from .optimality import Certificate, Verdict, certify, product_vectors, span_matrix
from .witness import (
    detect,
    format_complex,
    parse_state_file,
    separable_sample_check,
    witness_matrix,
)

CSV_HEADER = (
    "alpha,a,b,c,t,abs_det_M,abs_det_Mprime,rank_M,rank_Mprime,"
    "max_expectation_W,max_expectation_WGamma,verdict"
)

_PI_EXPR = re.compile(r"^([0-9]*\.?[0-9]*)\*?pi(?:/([0-9]+\.?[0-9]*))?$")


def parse_alpha(text: str) -> float:
    """Parse an angle given as a plain number or a fraction of pi ('pi/3', '5pi/3')."""
    s = text.strip().lower().replace(" ", "")
    m = _PI_EXPR.match(s)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    return float(s)


def parse_weight(text: str) -> float:
    """Parse a map weight given as a plain number or a simple fraction ('2/3')."""
    try:
        return float(text)
    except ValueError:
        num, sep, den = text.partition("/")
        if not sep:
            raise ValueError(f"cannot parse weight {text!r}") from None
        return float(num) / float(den)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _scan_record(alpha: float, cert: Certificate) -> dict:
    p = cert.params
    d = cert.diagnostics
    return {
        "alpha": alpha,
        "a": p.a,
        "b": p.b,
        "c": p.c,
        "t": cert.t,
        "abs_det_M": None if d.det_m is None else abs(d.det_m),
        "abs_det_Mprime": None if d.det_mprime is None else abs(d.det_mprime),
        "rank_M": d.rank_m,
        "rank_Mprime": d.rank_mprime,
        "max_expectation_W": d.max_abs_expectation_w,
        "max_expectation_WGamma": d.max_abs_expectation_wgamma,
        "verdict": cert.verdict.value,
    }


def _record_to_csv_row(rec: dict) -> str:
    cells = []
    for key in CSV_HEADER.split(","):
        value = rec[key]
        if value is None:
            cells.append("")
        elif isinstance(value, str):
            cells.append(value)
        elif isinstance(value, int):
            cells.append(str(value))
        else:
            cells.append(_fmt(value))
    return ",".join(cells)


def _write_output(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_scan(args) -> int:
    try:
        start = parse_alpha(args.alpha_start)
        end = parse_alpha(args.alpha_end)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.steps < 2:
        print("error: --steps must be at least 2", file=sys.stderr)
        return 2
    if not (ALPHA_MIN - 1e-12 <= start < end <= ALPHA_MAX + 1e-12):
        print(
            "error: need pi/3 <= alpha-start < alpha-end <= 5*pi/3",
            file=sys.stderr,
        )
        return 2
    records = []
    for alpha in np.linspace(start, end, args.steps):
        point = family_from_alpha(float(alpha))
        cert = certify(point.params, tol=args.tol)
        records.append(_scan_record(float(alpha), cert))
    if args.format == "csv":
        text = CSV_HEADER + "\n" + "".join(_record_to_csv_row(r) + "\n" for r in records)
    else:
        text = json.dumps({"records": records}, indent=2) + "\n"
    return _write_output(text, args.out)


def _certificate_payload(cert: Certificate, sample_min: float, args) -> dict:
    rec = _scan_record(float("nan"), cert)
    rec.pop("alpha")
    rec["w_optimal"] = cert.w_optimal
    rec["wgamma_optimal"] = cert.wgamma_optimal
    rec["note"] = cert.diagnostics.note
    rec["separable_sample_min"] = sample_min
    rec["samples"] = args.samples
    rec["seed"] = args.seed
    return rec


def cmd_check(args) -> int:
    try:
        params = MapParams(args.a, args.b, args.c)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not on_family_check(params, args.tol):
        if abs(params.total - 2.0) > args.tol:
            reason = f"a+b+c = {params.total!r} differs from 2"
        elif params.a > 1.0 + args.tol:
            reason = f"a = {params.a!r} exceeds 1"
        else:
            reason = f"b*c = {params.b * params.c!r} differs from (1-a)^2 = {(1 - params.a) ** 2!r}"
        print(f"error: not a family point: {reason}", file=sys.stderr)
        return 2
    cert = certify(params, tol=args.tol)
    sample_min = separable_sample_check(
        witness_matrix(params), n=args.samples, seed=args.seed
    )
    if args.json:
        print(json.dumps(_certificate_payload(cert, sample_min, args), indent=2))
    else:
        d = cert.diagnostics
        print(f"witness weights: a={_fmt(params.a)} b={_fmt(params.b)} c={_fmt(params.c)}")
        print(f"t: {'(boundary, undefined)' if cert.t is None else _fmt(cert.t)}")
        print(f"verdict: {cert.verdict.value}")
        print(f"witness side optimal: {'yes' if cert.w_optimal else 'no'}")
        print(f"partial-transpose side optimal: {'yes' if cert.wgamma_optimal else 'no'}")
        if cert.t is not None:
            print(f"max |expectation| on the nine pairs (W): {_fmt(d.max_abs_expectation_w)}")
            print(f"max |expectation| on the nine pairs (W^G): {_fmt(d.max_abs_expectation_wgamma)}")
            print(f"rank of span matrices: {d.rank_m} / {d.rank_mprime}")
            print(f"|det| of column-normalized span matrices: {_fmt(abs(d.det_m))} / {_fmt(abs(d.det_mprime))}")
        if d.note:
            print(f"note: {d.note}")
        print(f"separable sample min (n={args.samples}, seed={args.seed}): {_fmt(sample_min)}")
    if cert.verdict in (Verdict.INDECOMPOSABLE_OPTIMAL, Verdict.OPTIMAL_ONLY):
        return 0
    return 1


def cmd_vectors(args) -> int:
    if not (math.isfinite(args.t) and args.t > 0):
        print("error: t must be a positive finite real", file=sys.stderr)
        return 2
    pairs = product_vectors(args.t)
    span = span_matrix(args.t, conjugated=args.conjugated)
    lines = []
    for pair in pairs:
        second = np.conj(pair.phi) if args.conjugated else pair.phi
        lines.append(" ".join(format_complex(z) for z in pair.psi))
        lines.append(" ".join(format_complex(z) for z in second))
    for i in range(9):
        lines.append(" ".join(format_complex(z) for z in span.mat[i]))
    return _write_output("\n".join(lines) + "\n", args.out)


def cmd_detect(args) -> int:
    try:
        params = MapParams(args.a, args.b, args.c)
        rho = parse_state_file(args.state)
    except (ChoiwitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    value = detect(witness_matrix(params), rho)
    print(f"tr(W rho) = {_fmt(value)}")
    if value < 0:
        print("state detected (negative expectation)")
        return 0
    print("state not detected (nonnegative expectation)")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choiwit",
        description="Construct qutrit entanglement witnesses and certify their optimality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="sweep the angle family and emit one record per grid point")
    scan.add_argument("--alpha-start", required=True, help="grid start, e.g. pi/3 or 1.3")
    scan.add_argument("--alpha-end", required=True, help="grid end, e.g. 5pi/3")
    scan.add_argument("--steps", type=int, required=True, help="number of grid points (inclusive endpoints)")
    scan.add_argument("--out", default=None, help="output path (default: stdout)")
    scan.add_argument("--format", choices=("csv", "json"), default="csv")
    scan.add_argument("--tol", type=float, default=1e-8, help="certificate tolerance")
    scan.set_defaults(func=cmd_scan)

    check = sub.add_parser("check", help="certificate for a single weight triple")
    check.add_argument("a", type=parse_weight)
    check.add_argument("b", type=parse_weight)
    check.add_argument("c", type=parse_weight)
    check.add_argument("--json", action="store_true", help="emit the certificate as JSON")
    check.add_argument("--tol", type=float, default=1e-8, help="certificate tolerance")
    check.add_argument("--samples", type=int, default=10000, help="separable sample count")
    check.add_argument("--seed", type=int, default=0, help="separable sample seed")
    check.set_defaults(func=cmd_check)

    vectors = sub.add_parser("vectors", help="dump the nine vector pairs and the span matrix")
    vectors.add_argument("t", type=float, help="family parameter t > 0")
    vectors.add_argument("--conjugated", action="store_true", help="conjugate the second vector of each pair")
    vectors.add_argument("--out", default=None, help="output path (default: stdout)")
    vectors.set_defaults(func=cmd_vectors)

    det = sub.add_parser("detect", help="witness expectation in a state read from a file")
    det.add_argument("a", type=parse_weight)
    det.add_argument("b", type=parse_weight)
    det.add_argument("c", type=parse_weight)
    det.add_argument("state", help="path to a 9-line state file")
    det.set_defaults(func=cmd_detect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ChoiwitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
