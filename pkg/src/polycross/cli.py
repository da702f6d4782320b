"""Command line entry point: solve polynomials, dump curves, run the service.

    polycross solve input.json --mode parallel
    polycross solve --coeffs "[[-1,0],[0,0],[1,0]]"
    polycross curve --coeffs "[[-1,0],[0,0],[1,0]]" --r 2 --samples 256
    polycross serve --port 8777        (also: polycross --serve --port 8777)

Every flag has a POLYCROSS_* environment variable twin (POLYCROSS_MODE,
POLYCROSS_R, POLYCROSS_SAMPLES, POLYCROSS_C, POLYCROSS_TOL_RESIDUAL,
POLYCROSS_DUMP_TRAJECTORIES, POLYCROSS_PORT, POLYCROSS_HOST). Exit codes:
0 complete, 2 bad input, 3 incomplete solve.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from typing import List, Optional

from .documents import (
    DocumentError,
    curve_to_document,
    dumps,
    poly_from_document,
    report_to_document,
)
from .geometry import find_crossings, sample_curve
from .poly import DegreeZeroError, Polynomial
from .solver import IncompleteError, solve_deflation, solve_parallel, solve_single
from .tracker import TrackerOptions, UnconvergedError, format_trajectory


def _env(name: str, default: Optional[str] = None) -> Optional[str]:
    return os.environ.get(f"POLYCROSS_{name}", default)


def _env_float(name: str) -> Optional[float]:
    v = _env(name)
    return None if v is None else float(v)


def _env_int(name: str) -> Optional[int]:
    v = _env(name)
    return None if v is None else int(v)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycross",
        description="Polynomial roots from tracked real-axis crossings of f(C_r).",
    )
    parser.add_argument("--serve", action="store_true", help="run the HTTP service")
    parser.add_argument("--port", type=int, default=None, help="service port")
    sub = parser.add_subparsers(dest="command")

    def add_input_args(sp):
        sp.add_argument(
            "input",
            nargs="?",
            help="path to a polynomial document (JSON), or - for stdin",
        )
        sp.add_argument(
            "--coeffs",
            default=_env("COEFFS"),
            help='inline coefficients as JSON pairs, e.g. "[[-1,0],[0,0],[1,0]]"',
        )

    sp = sub.add_parser("solve", help="find roots and write a report document")
    add_input_args(sp)
    sp.add_argument(
        "--mode",
        choices=("parallel", "deflation", "single"),
        default=_env("MODE", "parallel"),
    )
    sp.add_argument("--c", type=float, default=float(_env("C", "0.5")))
    sp.add_argument(
        "--tol-residual", type=float, default=float(_env("TOL_RESIDUAL", "1e-10"))
    )
    sp.add_argument("--max-steps", type=int, default=_env_int("MAX_STEPS"))
    sp.add_argument(
        "--dump-trajectories",
        metavar="PATH",
        default=_env("DUMP_TRAJECTORIES"),
        help="write line-oriented trajectory records of every track to PATH",
    )
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--output", metavar="PATH", help="report path (default stdout)")
    sp.add_argument("--label", default=None)

    cp = sub.add_parser("curve", help="sample f(C_r) and its crossing census")
    add_input_args(cp)
    cp.add_argument("--r", type=float, default=_env_float("R"))
    cp.add_argument("--samples", type=int, default=_env_int("SAMPLES"))
    cp.add_argument("--output", metavar="PATH", help="curve document path (default stdout)")

    vp = sub.add_parser("serve", help="run the local HTTP service")
    vp.add_argument("--port", type=int, default=_env_int("PORT") or 8777)
    vp.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    vp.add_argument("--max-degree", type=int, default=64)
    vp.add_argument("--max-samples", type=int, default=20000)
    vp.add_argument("--max-concurrent-solves", type=int, default=4)
    vp.add_argument(
        "--ui",
        metavar="DIR",
        default=_env("UI"),
        help="serve this static directory (the built frontend) at the web root",
    )
    return parser


def _load_poly(args) -> Polynomial:
    if args.coeffs:
        try:
            doc = {"coeffs": json.loads(args.coeffs)}
        except json.JSONDecodeError as exc:
            raise DocumentError(f"--coeffs is not valid JSON: {exc}") from exc
        return poly_from_document(doc)
    if not args.input:
        raise DocumentError("no input: give a document path or --coeffs")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {args.input}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{args.input} is not valid JSON: {exc}") from exc
    return poly_from_document(doc)


def _write(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _cmd_solve(args) -> int:
    p = _load_poly(args)
    if p.degree < 1:
        raise DocumentError("degree must be >= 1")
    opts = TrackerOptions(c=args.c, residual_tol=args.tol_residual)
    if args.max_steps is not None:
        opts = dataclasses.replace(opts, max_steps=args.max_steps)
    sink: Optional[list] = [] if args.dump_trajectories else None
    status = 0
    try:
        if args.mode == "parallel":
            report = solve_parallel(
                p, opts, workers=args.workers, label=args.label, trajectory_sink=sink
            )
        elif args.mode == "deflation":
            report = solve_deflation(p, opts, label=args.label, trajectory_sink=sink)
        else:
            report = solve_single(p, opts, label=args.label)
    except IncompleteError as exc:
        report = exc.report
        status = 3
        print(f"incomplete: {exc}", file=sys.stderr)
    except UnconvergedError as exc:
        print(f"unconverged: {exc}", file=sys.stderr)
        return 3

    if args.dump_trajectories and sink is not None:
        with open(args.dump_trajectories, "w", encoding="utf-8") as fh:
            for i, (q, start, traj) in enumerate(sink):
                fh.write(
                    f"# track {i} r={start.r:.17g} theta={start.theta:.17g} "
                    f"kind={start.kind.value}\n"
                )
                fh.write(format_trajectory(q, traj))
    _write(dumps(report_to_document(report)), args.output)
    if not report.complete and status == 0:
        status = 3
    return status


def _cmd_curve(args) -> int:
    p = _load_poly(args)
    if args.r is None or args.r <= 0:
        raise DocumentError("--r must be a positive radius")
    m = args.samples if args.samples is not None else max(64, 16 * p.degree)
    points = sample_curve(p, args.r, m)
    crossings = find_crossings(p, args.r)
    _write(dumps(curve_to_document(points, crossings, args.r)), args.output)
    return 0


def _cmd_serve(args) -> int:
    from .service import ServiceConfig, serve

    port = getattr(args, "port", None)
    cfg = ServiceConfig(
        host=getattr(args, "host", None) or _env("HOST", "127.0.0.1"),
        port=port if port is not None else (_env_int("PORT") or 8777),
        max_degree=getattr(args, "max_degree", 64),
        max_samples=getattr(args, "max_samples", 20000),
        max_concurrent_solves=getattr(args, "max_concurrent_solves", 4),
        ui_dir=getattr(args, "ui", None) or _env("UI"),
    )
    serve(cfg)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "curve":
            return _cmd_curve(args)
        if args.command == "serve" or args.serve:
            return _cmd_serve(args)
        parser.print_help(sys.stderr)
        return 2
    except (DocumentError, DegreeZeroError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
