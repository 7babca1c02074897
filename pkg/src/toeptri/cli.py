"""Command-line front end: bound evaluation, n-scans, built-in figure
reproduction, and derivation-chain verification, emitting CSV and SVG.

Commands and exit codes:
    bound    print the feasibility verdict, theta, omega; write bound.csv
    scan     sigma_n, 1/|A^{-1}|_F, omega over the configured n grid; scan.csv
    figures  run scan for the eight built-in reference sets -> fig_i{2..9}.csv
    verify   build the proof trace at max(n_values), print each check

    0 success, 1 usage/config error, 2 infeasible parameters (or a domain
    failure of the closed-form bound), 3 at least one non-converged power
    iteration, 4 (verify only) a derivation check failed.

Configuration is a single JSON document; rationals travel as exact strings
("7/3", "100-1/6"). CSV floats use the shortest round-trip representation, so
identical configs and seeds reproduce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .bounds import check_hypotheses, theorem_bound
from .errors import ConfigError, DomainError, HypothesisViolated, ToeptriError
from .matrix_core import MatrixSpec, parse_rational
from .proof_verifier import CHECK_NAMES, build_proof_trace
from .spectral import DEFAULT_MAX_ITER, DEFAULT_SEED, DEFAULT_TOL, spectral_report

# The eight built-in reference parameter sets (periods 2..9), all sharing
# mu = 100 - 1/6.
REFERENCE_MU = "100-1/6"
REFERENCE_SETS: tuple[tuple[int, tuple[str, ...]], ...] = (
    (2, ("7/3", "5/3")),
    (3, ("10/3", "1/3", "8/3")),
    (4, ("10/3", "1/3", "2/3", "5/3")),
    (5, ("20/9", "1/9", "2/9", "1/3", "5/9")),
    (6, ("2", "1/2", "2/3", "1", "1/3", "1/3")),
    (7, ("14/5", "1/5", "2/5", "1", "3/5", "4/5", "1/5")),
    (8, ("20/7", "2/7", "4/7", "6/7", "1/7", "5/7", "3/7", "1")),
    (9, ("20/7", "2/7", "4/7", "6/7", "1/7", "5/7", "3/7", "1", "1/7")),
)

SCAN_HEADER = ("n", "sigma_n", "frob_inv_reciprocal", "omega", "iterations", "converged")


def default_n_grid(count: int = 40, lo: int = 10, hi: int = 2000) -> tuple[int, ...]:
    """Log-spaced integer grid; the defaults give 40 distinct values in [10, 2000]."""
    points = np.logspace(math.log10(lo), math.log10(hi), count)
    return tuple(sorted({int(round(p)) for p in points}))


@dataclass(frozen=True)
class RunConfig:
    """One run's parameters; rationals stay as strings until spec construction."""

    mu: str | None = None
    a: tuple[str, ...] | None = None
    n_values: tuple[int, ...] = ()
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    seed: int = DEFAULT_SEED
    output_dir: Path = Path(".")
    emit_svg: bool = False


_CONFIG_FIELDS = {"mu", "a", "n_values", "tol", "max_iter", "seed", "output_dir", "emit_svg"}


def config_from_dict(raw: dict) -> RunConfig:
    """Validate a parsed JSON document into a RunConfig.

    Errors name the offending field; n_values must be non-empty and strictly
    increasing when given (the default grid applies when absent).
    """
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(raw) - _CONFIG_FIELDS
    if unknown:
        raise ConfigError(f"config field {sorted(unknown)[0]!r}: unknown field")

    cfg = RunConfig(n_values=default_n_grid())
    if "mu" in raw:
        if not isinstance(raw["mu"], str):
            raise ConfigError("config field 'mu': expected a rational string")
        cfg = replace(cfg, mu=raw["mu"])
    if "a" in raw:
        values = raw["a"]
        if not isinstance(values, list) or not values or not all(
            isinstance(v, str) for v in values
        ):
            raise ConfigError("config field 'a': expected a non-empty list of rational strings")
        cfg = replace(cfg, a=tuple(values))
    if "n_values" in raw:
        values = raw["n_values"]
        if (
            not isinstance(values, list)
            or not values
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in values)
        ):
            raise ConfigError("config field 'n_values': expected a non-empty list of integers")
        if any(v < 1 for v in values):
            raise ConfigError("config field 'n_values': entries must be >= 1")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError("config field 'n_values': must be strictly increasing")
        cfg = replace(cfg, n_values=tuple(values))
    if "tol" in raw:
        if not isinstance(raw["tol"], (int, float)) or isinstance(raw["tol"], bool):
            raise ConfigError("config field 'tol': expected a number")
        cfg = replace(cfg, tol=float(raw["tol"]))
    if "max_iter" in raw:
        if not isinstance(raw["max_iter"], int) or isinstance(raw["max_iter"], bool):
            raise ConfigError("config field 'max_iter': expected an integer")
        cfg = replace(cfg, max_iter=raw["max_iter"])
    if "seed" in raw:
        if not isinstance(raw["seed"], int) or isinstance(raw["seed"], bool):
            raise ConfigError("config field 'seed': expected an integer")
        cfg = replace(cfg, seed=raw["seed"])
    if "output_dir" in raw:
        if not isinstance(raw["output_dir"], str):
            raise ConfigError("config field 'output_dir': expected a path string")
        cfg = replace(cfg, output_dir=Path(raw["output_dir"]))
    if "emit_svg" in raw:
        if not isinstance(raw["emit_svg"], bool):
            raise ConfigError("config field 'emit_svg': expected a boolean")
        cfg = replace(cfg, emit_svg=raw["emit_svg"])
    return cfg


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON config file; parse errors carry line/column."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return config_from_dict(raw)


def make_spec(cfg: RunConfig, n: int) -> MatrixSpec:
    """Build the exact spec for one dimension from the config's rationals."""
    if cfg.mu is None:
        raise ConfigError("config field 'mu' is required for this command")
    if cfg.a is None:
        raise ConfigError("config field 'a' is required for this command")
    try:
        mu = parse_rational(cfg.mu)
        a = tuple(parse_rational(v) for v in cfg.a)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return MatrixSpec(mu=mu, a=a, i=len(a), n=n)


def _fmt_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header: tuple[str, ...], rows) -> None:
    """RFC-4180 CSV with a header row; floats via shortest round-trip repr."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row])


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def write_svg(
    path: Path,
    x_values,
    series: dict[str, list[float]],
    x_label: str = "n",
    y_label: str = "value",
) -> None:
    """Minimal hand-rolled SVG 1.1 line chart: log-x, one polyline per series."""
    width, height = 640, 420
    m_left, m_right, m_top, m_bottom = 60, 150, 20, 50
    plot_w = width - m_left - m_right
    plot_h = height - m_top - m_bottom

    lx = [math.log10(v) for v in x_values]
    x_lo, x_hi = min(lx), max(lx)
    x_span = (x_hi - x_lo) or 1.0
    all_y = [v for vals in series.values() for v in vals if math.isfinite(v)]
    y_lo, y_hi = min(all_y), max(all_y)
    pad = 0.05 * ((y_hi - y_lo) or abs(y_hi) or 1.0)
    y_lo -= pad
    y_hi += pad

    def px(v: float) -> float:
        return m_left + (math.log10(v) - x_lo) / x_span * plot_w

    def py(v: float) -> float:
        return m_top + (y_hi - v) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{m_left}" y1="{m_top + plot_h}" x2="{m_left + plot_w}" '
        f'y2="{m_top + plot_h}" stroke="#333" stroke-width="1"/>',
        f'<line x1="{m_left}" y1="{m_top}" x2="{m_left}" y2="{m_top + plot_h}" '
        f'stroke="#333" stroke-width="1"/>',
        f'<text x="{m_left + plot_w / 2:.1f}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{x_label}</text>',
        f'<text x="18" y="{m_top + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 18 {m_top + plot_h / 2:.1f})">{y_label}</text>',
        f'<text x="{m_left}" y="{m_top + plot_h + 18}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{min(x_values)}</text>',
        f'<text x="{m_left + plot_w}" y="{m_top + plot_h + 18}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{max(x_values)}</text>',
        f'<text x="{m_left - 6}" y="{py(y_lo + pad):.1f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y_lo + pad:.4g}</text>',
        f'<text x="{m_left - 6}" y="{py(y_hi - pad):.1f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y_hi - pad:.4g}</text>',
    ]
    for idx, (name, values) in enumerate(series.items()):
        color = _SVG_COLORS[idx % len(_SVG_COLORS)]
        points = " ".join(
            f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(x_values, values)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        legend_y = m_top + 16 + 18 * idx
        parts.append(
            f'<line x1="{width - m_right + 10}" y1="{legend_y}" '
            f'x2="{width - m_right + 34}" y2="{legend_y}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{width - m_right + 40}" y="{legend_y + 4}" '
            f'font-family="sans-serif" font-size="12">{name}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")


def cmd_bound(cfg: RunConfig) -> int:
    """Print the feasibility verdict and the closed-form bound; write bound.csv."""
    n = max(cfg.n_values)
    spec = make_spec(cfg, n)
    verdict = check_hypotheses(spec)
    if not verdict.passed:
        print("hypotheses: FAIL")
        for line in verdict.violations:
            print(f"  {line}")
        return 2
    print("hypotheses: PASS")
    tb = theorem_bound(spec)
    print(f"theta = {tb.theta!r}")
    print(f"omega = {tb.omega!r}")
    print(f"exponent = {tb.exponent!r}")
    print(f"denom_gap = {tb.denom_gap!r}")
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.output_dir / "bound.csv"
    write_csv(
        out,
        ("i", "mu", "theta", "omega", "exponent", "denom_gap"),
        [(spec.i, str(spec.mu), tb.theta, tb.omega, tb.exponent, tb.denom_gap)],
    )
    print(f"wrote {out}")
    return 0


def _scan_to_files(cfg: RunConfig, csv_name: str, svg_name: str) -> int:
    """Shared scan engine for cmd_scan and cmd_figures."""
    spec_top = make_spec(cfg, max(cfg.n_values))
    try:
        tb = theorem_bound(spec_top)
    except DomainError as exc:
        print(f"bound undefined: {exc}", file=sys.stderr)
        return 2
    rows = []
    svg_series: dict[str, list[float]] = {
        "sigma_n": [],
        "frob_inv_reciprocal": [],
        "omega": [],
    }
    any_unconverged = False
    for n in cfg.n_values:
        spec = replace(spec_top, n=n)
        report = spectral_report(
            spec, tol=cfg.tol, max_iter=cfg.max_iter, seed=cfg.seed, cap=n
        )
        rows.append(
            (
                n,
                report.sigma_min,
                report.frob_inv_reciprocal,
                tb.omega,
                report.iterations,
                report.converged,
            )
        )
        svg_series["sigma_n"].append(report.sigma_min)
        svg_series["frob_inv_reciprocal"].append(report.frob_inv_reciprocal)
        svg_series["omega"].append(tb.omega)
        if not report.converged:
            any_unconverged = True
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    out = cfg.output_dir / csv_name
    write_csv(out, SCAN_HEADER, rows)
    print(f"wrote {out}")
    if cfg.emit_svg:
        svg_path = cfg.output_dir / svg_name
        write_svg(svg_path, list(cfg.n_values), svg_series)
        print(f"wrote {svg_path}")
    if any_unconverged:
        print("warning: at least one power iteration did not converge", file=sys.stderr)
        return 3
    return 0


def cmd_scan(cfg: RunConfig) -> int:
    """sigma_n, 1/|A^{-1}|_F, and omega for every configured n."""
    return _scan_to_files(cfg, "scan.csv", "scan.svg")


def cmd_figures(cfg: RunConfig) -> int:
    """Run the scan for all eight built-in reference sets (fig_i2 .. fig_i9)."""
    worst = 0
    for period, a_strs in REFERENCE_SETS:
        sub = replace(cfg, mu=REFERENCE_MU, a=a_strs)
        code = _scan_to_files(sub, f"fig_i{period}.csv", f"fig_i{period}.svg")
        worst = max(worst, code)
    return worst


def cmd_verify(cfg: RunConfig) -> int:
    """Build the proof trace at max(n_values) and print every check verdict."""
    n = max(cfg.n_values)
    spec = make_spec(cfg, n)
    verdict = check_hypotheses(spec)
    if not verdict.passed:
        print("hypotheses: FAIL")
        for line in verdict.violations:
            print(f"  {line}")
        return 2
    trace = build_proof_trace(spec)
    tb = theorem_bound(spec)
    print(f"n = {n}")
    print(f"theta = {tb.theta!r}")
    print(f"omega = {tb.omega!r}")
    print(f"nu = {trace.nu!r}")
    print(f"r = {trace.r!r}  x_hat = {trace.x_hat!r}  y_hat = {trace.y_hat!r}")
    for name in CHECK_NAMES:
        rec = trace.checks[name]
        status = "PASS" if rec.passed else "FAIL"
        where = f" at {rec.at}" if rec.at is not None else ""
        print(f"{name}: lhs = {rec.lhs!r} rhs = {rec.rhs!r} {status}{where}")
    return 0 if trace.all_passed else 4


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ConfigError (exit code 1)."""

    def error(self, message):  # noqa: A002 - argparse API
        raise ConfigError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="toeptri",
        description=(
            "Structured triangular matrices with periodic subdiagonals: "
            "closed-form smallest-singular-value bound, n-scans, and "
            "derivation-chain verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("bound", "feasibility verdict plus theta/omega; writes bound.csv"),
        ("scan", "sigma_n, 1/|A^-1|_F, omega over the n grid; writes scan.csv"),
        ("figures", "scan all eight built-in reference sets; writes fig_i{2..9}.csv"),
        ("verify", "evaluate every derivation check at max(n); exit 4 on failure"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", metavar="FILE", help="JSON config document")
        cmd.add_argument("--out", metavar="DIR", help="output directory")
        cmd.add_argument("--tol", type=float, metavar="X", help="power-iteration tolerance")
        cmd.add_argument("--seed", type=int, metavar="N", help="start-vector seed")
        cmd.add_argument("--svg", action="store_true", help="also emit SVG charts")
    return parser


_COMMANDS = {
    "bound": cmd_bound,
    "scan": cmd_scan,
    "figures": cmd_figures,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config) if args.config else RunConfig(n_values=default_n_grid())
        if args.out is not None:
            cfg = replace(cfg, output_dir=Path(args.out))
        if args.tol is not None:
            cfg = replace(cfg, tol=args.tol)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
        if args.svg:
            cfg = replace(cfg, emit_svg=True)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HypothesisViolated as exc:
        print(f"infeasible parameters: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except ToeptriError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
