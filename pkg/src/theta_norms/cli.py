"""Command-line front end.

Exit status: 0 success, 1 an inequality or certificate failed, 2 bad
configuration, unparseable input or a size limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from . import io as tio
from .errors import ConvergenceWarning, InconsistencyError, ParseError, ThetaNormsError
from .exponent import INF, as_exponent, parse_theta, theta_eval
from .function_space import f_norm
from .gt_weighting import find_gt_factorization
from .sequence_space import seq_norm
from .suite import SuiteConfig, load_config, parse_report, render, run_suite

SEED_ENV = "THETA_NORMS_SEED"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _err(msg: str) -> None:
    print(f"theta-norms: {msg}", file=sys.stderr)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _suite_config(args) -> SuiteConfig:
    cfg = load_config(args.config) if args.config else SuiteConfig()
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            cfg.master_seed = int(env_seed, 0)
        except ValueError:
            raise ParseError(f"{SEED_ENV}: not an integer: {env_seed!r}") from None
    if args.seed is not None:
        cfg.master_seed = args.seed
    if args.trials is not None:
        cfg.trials_per_check = args.trials
    if args.eps_min is not None:
        cfg.eps_min = args.eps_min
    cfg.validate()
    return cfg


def _summary_line(footer: dict) -> str:
    return f"{footer['lines']} reports, {footer['violations']} violations"


def cmd_verify(args) -> int:
    cfg = _suite_config(args)
    fmt = getattr(args, "format", None) or cfg.output_format
    out = args.out if args.out is not None else cfg.output_path
    result = run_suite(cfg, rhs_scale=args.debug_rhs_scale)
    _write(render(result, fmt), out)
    print(_summary_line(result.footer), file=sys.stderr)
    if result.violations:
        for check, s in result.footer["per_check"].items():
            if s["violations"]:
                _err(f"{check}: {s['violations']} violations (max ratio {s['max_ratio']:.6g})")
    return result.exit_code


def cmd_report(args) -> int:
    if args.input is None:
        return cmd_verify(args)
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise ParseError(f"{args.input}: {exc.strerror or exc}") from None
    result = parse_report(text)
    _write(render(result, args.format), args.out)
    return EXIT_OK if result.footer["violations"] == 0 else EXIT_VIOLATION


def cmd_gt(args) -> int:
    M = tio.read_matrix_csv(args.matrix)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        try:
            cert = find_gt_factorization(M, restarts=args.restarts, seed=args.seed)
        except InconsistencyError as exc:
            _err(str(exc))
            return EXIT_VIOLATION
    payload = json.dumps(cert.to_json(), indent=2) + "\n"
    _write(payload, args.out)
    status = "converged" if cert.converged and not caught else "iteration cap reached"
    print(f"K = {cert.K:.12g} ({status}); ||omega|| = {cert.form_norm:.12g}", file=sys.stderr)
    return EXIT_OK


def _load_data(path):
    """Sequence CSV (one column) or grid CSV (node,weight,sample)."""
    text = tio.read_text(path)  # read once: the path may be a pipe
    widths = set()
    for ln in text.splitlines():
        ln = ln.strip()
        if ln and not ln.startswith("#"):
            widths.add(ln.count(",") + 1)
    if widths == {3}:
        return "grid", tio.read_grid_csv(path, text)
    if widths <= {1}:
        return "sequence", tio.read_sequence_csv(path, text)
    raise ParseError(f"{path}: expected one column (sequence) or three (node,weight,sample)")


def cmd_norm(args) -> int:
    if args.theta is not None:
        if args.p is None:
            raise ParseError("--theta needs --p")
        e = theta_eval(parse_theta(args.theta), args.p)
    else:
        e = as_exponent(args.e)
    kind, data = _load_data(args.data)
    if kind == "grid":
        mu, f = data
        value, error = f_norm(f, mu, e), 0.0
    else:
        value, error = seq_norm(data, e)
    record = {"kind": kind, "e": "inf" if e is INF else float(e), "norm": value, "error": error}
    _write(json.dumps(record) + "\n", args.out)
    return EXIT_OK


def _exponent_arg(text: str):
    try:
        return as_exponent(text)
    except ThetaNormsError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _suite_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON suite configuration")
    p.add_argument("--seed", type=int, help=f"master seed (overrides config and ${SEED_ENV})")
    p.add_argument("--trials", type=int, help="trials per check and exponent")
    p.add_argument("--eps-min", type=float, help="reject exponents e <= 1 + eps_min")
    p.add_argument("--out", help="report destination (default stdout)")
    # sabotage self-test: multiplies every right-hand side
    p.add_argument("--debug-rhs-scale", type=float, default=1.0, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theta-norms", description="Generalized-exponent norms and inequality verification."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the seeded inequality suite")
    _suite_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="emit a suite report as CSV or JSON lines")
    _suite_args(p)
    p.add_argument("--format", choices=("csv", "jsonl"), required=True)
    p.add_argument("--input", help="re-render an existing report instead of running the suite")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("gt", help="search a Grothendieck factorization for a matrix")
    p.add_argument("matrix", help="CSV matrix, one row per line")
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="certificate JSON destination (default stdout)")
    p.set_defaults(func=cmd_gt)

    p = sub.add_parser("norm", help="norm of a sequence or grid function")
    p.add_argument("data", help="sequence CSV or node,weight,sample grid CSV")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--e", type=_exponent_arg, help="exponent value or 'inf'")
    group.add_argument("--theta", help="theta preset: identity | power:k | affine-power:a,b,c")
    p.add_argument("--p", type=float, help="point at which the theta preset is evaluated")
    p.add_argument("--out", help="destination (default stdout)")
    p.set_defaults(func=cmd_norm)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ThetaNormsError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
