"""Command-line front end: kernels, densities, cylindric counts and self-checks.

Exit codes: 0 success, 1 a check failed, 2 configuration error,
3 quadrature precision failure, 4 an exact identity did not hold.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_PRECISION, EXIT_IDENTITY = 0, 1, 2, 3, 4

SUITES = ("qseries", "process", "kernel", "cylindric", "bulk", "no", "all")
FAMILIES = ("cylindric-finite", "cylindric-slow", "corner", "no")


class ConfigError(ValueError):
    pass


class IdentityMismatch(RuntimeError):
    pass


# -- helpers ----------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _threads() -> int:
    raw = os.environ.get("CYLSCHUR_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError(f"CYLSCHUR_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ConfigError("CYLSCHUR_THREADS must be at least 1")
    return n


def _ordered_map(func: Callable, items: Sequence) -> list:
    """Map with at most CYLSCHUR_THREADS workers; results keep input order."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(func, items))


def _read_literal(text: str | None, what: str) -> str:
    if text is None:
        raise ConfigError(f"--{what} is required")
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def _parse_range(text: str) -> list[float]:
    """``v`` or ``lo:hi:step`` (inclusive) or ``v1,v2,...``; empty gives no values."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"bad range {text!r}; expected lo:hi:step")
        lo, hi, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError("range step must be positive")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [lo + i * step for i in range(max(count, 0))]
    return [float(p) for p in text.split(",") if p.strip()]


def parse_grid(text: str | None) -> dict[str, list[float]]:
    """``x=-2.5:2.5:1;y=0.5;tau=1`` into value lists."""
    grid: dict[str, list[float]] = {}
    if text is None:
        return grid
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        key, eq, val = item.partition("=")
        if not eq:
            raise ConfigError(f"bad grid entry {item!r}")
        grid[key.strip().lower()] = _parse_range(val)
    return grid


def _emit(rows: Iterable[Sequence], header: Sequence[str], comment: str, out: str | None):
    buf = io.StringIO()
    buf.write("# " + comment + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _contour(args):
    from .kernels import ContourSpec

    try:
        return ContourSpec(nodes=args.nodes, tolerance=args.tol, max_nodes=max(args.nodes, args.max_nodes))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# -- commands ------------------------------------------------------------------------


def cmd_kernel(args) -> int:
    from .kernels import _engine, kernel
    from .process import format_process_spec, parse_process_spec

    try:
        spec = parse_process_spec(_read_literal(args.spec, "spec"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    contour = _contour(args)
    grid = parse_grid(args.grid)
    unknown = set(grid) - {"sigma", "tau", "x", "y"}
    if unknown:
        raise ConfigError(f"unknown grid keys {sorted(unknown)}")
    xs = grid.get("x", [])
    sigmas = [int(v) for v in grid.get("sigma", grid.get("tau", [1]))]
    points = []
    for sigma in sigmas:
        taus = [int(v) for v in grid["tau"]] if "tau" in grid else [sigma]
        for tau in taus:
            for x in xs:
                ys = grid["y"] if "y" in grid else [x]
                for y in ys:
                    points.append((sigma, x, tau, y))
    for sigma, x, tau, y in points:
        if not (1 <= sigma <= spec.N and 1 <= tau <= spec.N):
            raise ConfigError("times must lie in 1..N")
        if (2 * x) % 2 != 1 or (2 * y) % 2 != 1:
            raise ConfigError("x and y must be half-integers")
    eng = _engine(spec, contour)

    def row(pt):
        sigma, x, tau, y = pt
        val = kernel(spec, (sigma, x), (tau, y), _engine_obj=eng)
        return (sigma, x, tau, y, val.real, val.imag)

    rows = _ordered_map(row, points)
    comment = f"spec={format_process_spec(spec)}; nodes={contour.nodes}; tol={contour.tolerance:g}"
    _emit(rows, ("sigma", "x", "tau", "y", "re", "im"), comment, args.out)
    return EXIT_OK


def cmd_cylindric_count(args) -> int:
    from .cylindric import count_cylindric, generating_function_formula, parse_profile

    try:
        profile = parse_profile(_read_literal(args.profile, "profile").strip())
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.max_norm < 0:
        raise ConfigError("--max-norm must be nonnegative")
    brute = count_cylindric(profile, args.max_norm)
    formula = generating_function_formula(profile, args.max_norm)
    rows = [(n, brute[n], formula[n]) for n in range(args.max_norm + 1)]
    _emit(rows, ("n", "brute_count", "formula_count"), f"profile={profile.literal()}; exact integers", args.out)
    if brute != formula:
        bad = [n for n in range(len(brute)) if brute[n] != formula[n]]
        print(f"identity mismatch at norms {bad}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def _density_function(args) -> tuple[Callable[[float], float], str]:
    from . import bulk
    from .cylindric import parse_profile

    fam = args.family
    if fam == "cylindric-finite":
        try:
            profile = parse_profile(_read_literal(args.profile, "profile").strip())
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if profile.d == 0:
            raise ConfigError("profile needs at least one A = 1 entry")
        return (lambda g: bulk.cylindric_bulk_density(profile, g, tol=args.tol)), f"profile={profile.literal()}"
    if fam == "cylindric-slow":
        if args.kappa is None or not args.kappa > 0:
            raise ConfigError("--kappa must be positive")
        return (lambda g: bulk.slow_density(args.kappa, g)), f"kappa={args.kappa!r}"
    if fam == "corner":
        if args.t is None or not 0 < args.t < 1:
            raise ConfigError("--t must lie in (0, 1)")
        return (lambda g: bulk.corner_density(args.t, g, args.corner)), f"t={args.t!r}; corner={args.corner}"
    if fam == "no":
        if args.mu0 is None:
            raise ConfigError("--mu0 is required")
        if not args.z > 0:
            raise ConfigError("--z must be positive")
        return (lambda g: bulk.no_bulk_density(args.mu0, args.z, g)), f"mu0={args.mu0!r}; z={args.z!r}"
    raise ConfigError(f"unknown family {fam!r}")


def cmd_density(args) -> int:
    func, desc = _density_function(args)
    grid = parse_grid(args.grid)
    unknown = set(grid) - {"gamma"}
    if unknown:
        raise ConfigError(f"unknown grid keys {sorted(unknown)}")
    gammas = grid.get("gamma", [])
    rows = _ordered_map(lambda g: (g, func(g)), gammas)
    _emit(rows, ("gamma", "rho"), f"family={args.family}; {desc}; tol={args.tol:g}", args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    from .checks import run_suites

    report = run_suites(args.suite)
    failed = 0
    for suite, name, ok, detail in report:
        failed += not ok
        print(f"{suite}\t{name}\t{'PASS' if ok else 'FAIL'}\t{detail}")
    print(f"summary\t{len(report) - failed} passed\t{failed} failed")
    return EXIT_OK if failed == 0 else EXIT_CHECK


# -- entry point --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cylschur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, contour=True):
        p.add_argument("--out", help="write CSV here instead of stdout")
        if contour:
            p.add_argument("--nodes", type=int, default=256, help="starting trapezoid nodes (power of two >= 64)")
            p.add_argument("--max-nodes", type=int, default=8192)
            p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("kernel", help="finite-t correlation kernel on a grid")
    p.add_argument("--spec", help="process literal or config file, e.g. 'N=1; t=0.4; a1=single:0.5'")
    p.add_argument("--grid", default="", help="e.g. 'sigma=1;tau=1;x=-2.5:2.5:1;y=0.5' (y defaults to x)")
    common(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("cylindric-count", help="brute-force vs generating-function counts")
    p.add_argument("--profile", help="profile literal, e.g. 'A=1011010;mark=7'")
    p.add_argument("--max-norm", type=int, default=10)
    common(p, contour=False)
    p.set_defaults(func=cmd_cylindric_count)

    p = sub.add_parser("density", help="bulk limit density on a gamma grid")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--grid", default="", help="e.g. 'gamma=-1:1:0.5'")
    p.add_argument("--profile")
    p.add_argument("--kappa", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--corner", choices=("outer", "inner"), default="outer")
    p.add_argument("--mu0", type=float)
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--out")
    p.add_argument("--tol", type=float, default=1e-13)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    from .kernels import ConfigurationError, PrecisionError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except IdentityMismatch as exc:
        print(f"identity mismatch: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (ConfigError, ConfigurationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
