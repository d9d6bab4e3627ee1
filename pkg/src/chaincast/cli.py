"""Command-line front end: config-driven chain mapping runs.

    chaincast validate --config job.json
    chaincast run --config job.json [--q Q] [--sites N] [--out-dir DIR]

The config is a JSON object (unknown keys rejected):

    {
      "spectral_density": {"family": "power_law", "s": 1, "alpha": 0.1,
                           "omega_c": 1.0},
      "mapping_q": 0,
      "sites": 50,
      "residual_orders": [1, 2, 3],
      "grid": {"points": 512, "range": [0.01, 0.99]},
      "outputs": {"chain_csv": "chain.csv", "residual_csv": "residual.csv",
                  "report_json": "report.json"}
    }

spectral_density families: "power_law" and "power_law_exp_cutoff" take
(s, alpha, omega_c); "tabulated" takes samples_path (CSV rows omega,J with
strictly increasing omega); "piecewise" takes intervals [[lo, hi, height],
...] and may be gapped.

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 unsupported
request (residual densities of a gapped measure, or 0 < q < 1).
Outputs are deterministic: identical configs give byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .chainmap import chain_coefficients
from .convergence import convergence_report
from .errors import (
    ChaincastError,
    ConfigError,
    DivergentMoment,
    GappedMeasure,
    IllConditioned,
    UnsupportedMapping,
)
from .measures import (
    SpectralDensity,
    piecewise_uniform_sd,
    power_law_exp_sd,
    power_law_sd,
    tabulated_sd,
)
from .residual import ResidualDensity
from .stieltjes import find_gap_zero

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_UNSUPPORTED = 4

_SD_KEYS = {"family", "s", "alpha", "omega_c", "samples_path", "intervals"}
_GRID_KEYS = {"points", "range"}
_OUTPUT_KEYS = {"chain_csv", "residual_csv", "report_json"}
_TOP_KEYS = {"spectral_density", "mapping_q", "sites", "residual_orders",
             "grid", "outputs"}


@dataclass(frozen=True)
class JobConfig:
    sd: SpectralDensity
    sd_spec: dict
    mapping_q: float
    sites: int
    residual_orders: tuple[int, ...]
    grid_points: int
    grid_range: tuple[float, float] | None
    chain_csv: str
    residual_csv: str
    report_json: str
    warnings: tuple[str, ...] = field(default=())


def _require(cond: bool, fld: str, reason: str) -> None:
    if not cond:
        raise ConfigError(fld, reason)


def _build_sd(spec: dict, base_dir: Path) -> SpectralDensity:
    _require(isinstance(spec, dict), "spectral_density", "must be an object")
    unknown = set(spec) - _SD_KEYS
    _require(not unknown, "spectral_density", f"unknown keys {sorted(unknown)}")
    family = spec.get("family")
    _require(family in ("power_law", "power_law_exp_cutoff", "tabulated", "piecewise"),
             "spectral_density.family", f"unknown family {family!r}")
    if family in ("power_law", "power_law_exp_cutoff"):
        for key in ("s", "alpha"):
            _require(key in spec, f"spectral_density.{key}", "required")
        s = float(spec["s"])
        alpha = float(spec["alpha"])
        omega_c = float(spec.get("omega_c", 1.0))
        _require(s > -1, "spectral_density.s", "must satisfy s > -1")
        _require(alpha > 0, "spectral_density.alpha", "must be positive")
        _require(omega_c > 0, "spectral_density.omega_c", "must be positive")
        maker = power_law_sd if family == "power_law" else power_law_exp_sd
        return maker(s, alpha, omega_c)
    if family == "tabulated":
        _require("samples_path" in spec, "spectral_density.samples_path", "required")
        path = base_dir / str(spec["samples_path"])
        _require(path.exists(), "spectral_density.samples_path", f"no file {path}")
        rows = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                _require(len(row) >= 2, "spectral_density.samples_path",
                         f"row {row} needs omega,J")
                rows.append((float(row[0]), float(row[1])))
        _require(len(rows) >= 2, "spectral_density.samples_path", "need >= 2 samples")
        omega = [r[0] for r in rows]
        vals = [r[1] for r in rows]
        _require(all(b > a for a, b in zip(omega, omega[1:])),
                 "spectral_density.samples_path", "omega must be strictly increasing")
        _require(all(v >= 0 for v in vals),
                 "spectral_density.samples_path", "J samples must be nonnegative")
        _require(omega[0] >= 0, "spectral_density.samples_path", "omega must be >= 0")
        return tabulated_sd(omega, vals)
    # piecewise
    _require("intervals" in spec, "spectral_density.intervals", "required")
    pieces = spec["intervals"]
    _require(isinstance(pieces, list) and pieces, "spectral_density.intervals",
             "must be a nonempty list of [lo, hi, height]")
    parsed = []
    for i, piece in enumerate(pieces):
        _require(isinstance(piece, list) and len(piece) == 3,
                 f"spectral_density.intervals[{i}]", "must be [lo, hi, height]")
        lo, hi, hgt = map(float, piece)
        _require(hi > lo >= 0, f"spectral_density.intervals[{i}]",
                 "needs 0 <= lo < hi")
        _require(hgt >= 0, f"spectral_density.intervals[{i}]",
                 "height must be nonnegative")
        parsed.append((lo, hi, hgt))
    parsed.sort()
    for (_, hi, _), (lo2, _, _) in zip(parsed, parsed[1:]):
        _require(lo2 > hi, "spectral_density.intervals", "intervals must be disjoint")
    return piecewise_uniform_sd(parsed)


def validate(path: str | Path, q_override: float | None = None,
             sites_override: int | None = None,
             out_dir: str | Path | None = None) -> JobConfig:
    """Parse, check and resolve a config file (defaults applied)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError("config", f"no such file: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from exc
    _require(isinstance(raw, dict), "config", "top level must be an object")
    unknown = set(raw) - _TOP_KEYS
    _require(not unknown, "config", f"unknown keys {sorted(unknown)}")
    _require("spectral_density" in raw, "spectral_density", "required")

    sd = _build_sd(raw["spectral_density"], path.parent)

    q = float(raw.get("mapping_q", 0.0)) if q_override is None else float(q_override)
    _require(0.0 <= q <= 1.0, "mapping_q", "must lie in [0, 1]")

    sites = int(raw.get("sites", 50)) if sites_override is None else int(sites_override)
    _require(sites >= 1, "sites", "must be a positive integer")

    orders_raw = raw.get("residual_orders", [])
    _require(isinstance(orders_raw, list), "residual_orders", "must be a list")
    orders = []
    for i, val in enumerate(orders_raw):
        _require(isinstance(val, int) and val >= 0,
                 f"residual_orders[{i}]", "must be a nonnegative integer")
        orders.append(val)
    if orders:
        _require(q in (0.0, 1.0), "residual_orders",
                 f"residual densities are unsupported for mapping_q={q} "
                 "(only q = 0 or q = 1)")

    grid = raw.get("grid", {})
    _require(isinstance(grid, dict), "grid", "must be an object")
    unknown = set(grid) - _GRID_KEYS
    _require(not unknown, "grid", f"unknown keys {sorted(unknown)}")
    points = int(grid.get("points", 512))
    _require(points >= 2, "grid.points", "need at least 2 grid points")
    grange = grid.get("range")
    if grange is not None:
        _require(isinstance(grange, list) and len(grange) == 2, "grid.range",
                 "must be [lo, hi]")
        grange = (float(grange[0]), float(grange[1]))
        _require(grange[1] > grange[0], "grid.range", "needs lo < hi")

    outputs = raw.get("outputs", {})
    _require(isinstance(outputs, dict), "outputs", "must be an object")
    unknown = set(outputs) - _OUTPUT_KEYS
    _require(not unknown, "outputs", f"unknown keys {sorted(unknown)}")
    base = Path(out_dir) if out_dir is not None else path.parent

    def resolve(key: str, default: str) -> str:
        name = outputs.get(key, default)
        p = Path(name)
        return str(p if p.is_absolute() else base / p)

    return JobConfig(
        sd=sd, sd_spec=raw["spectral_density"], mapping_q=q, sites=sites,
        residual_orders=tuple(sorted(set(orders))),
        grid_points=points, grid_range=grange,
        chain_csv=resolve("chain_csv", "chain.csv"),
        residual_csv=resolve("residual_csv", "residual.csv"),
        report_json=resolve("report_json", "report.json"),
    )


def _fmt(x: float) -> str:
    # 17 significant digits round-trips doubles exactly.
    return format(float(x), ".17g")


def _write_chain_csv(path: str, cc, support) -> None:
    sup = ";".join(f"[{_fmt(lo)},{_fmt(hi)}]" for lo, hi in support)
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# E5={_fmt(cc.E5)} q={_fmt(cc.q)} support={sup}\n")
        fh.write("n,alpha,beta,E1,E2,E3,E4\n")
        for i in range(cc.sites):
            row = (str(i), _fmt(cc.alpha[i]), _fmt(cc.beta[i]), _fmt(cc.E1[i]),
                   _fmt(cc.E2[i]), _fmt(cc.E3[i]), _fmt(cc.E4[i]))
            fh.write(",".join(row) + "\n")


def _j0_sample_range(sd: SpectralDensity) -> tuple[float, float]:
    """Sampling window when only J0 is requested: the support hull, with
    unbounded tails cut where the declared bound certifies decay."""
    lo, hi = sd.hull
    if hi == float("inf"):
        if sd.tail is None:
            raise DivergentMoment("unbounded spectral density without tail bound")
        hi = sd.tail.cutoff(0)
    return lo, hi


def _write_residual_csv(path: str, grid, columns: dict[int, np.ndarray],
                        q: float, clipped: tuple[float, float]) -> None:
    orders = sorted(columns)
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# q={_fmt(q)} clipped_range=[{_fmt(clipped[0])},"
                 f"{_fmt(clipped[1])}]\n")
        fh.write("omega," + ",".join(f"J{n}" for n in orders) + "\n")
        for i, w in enumerate(grid):
            fh.write(",".join([_fmt(w)] + [_fmt(columns[n][i]) for n in orders])
                     + "\n")


def run(config: JobConfig) -> int:
    """Execute a validated job; returns the process exit code."""
    warnings = list(config.warnings)
    for out in (config.chain_csv, config.residual_csv, config.report_json):
        Path(out).parent.mkdir(parents=True, exist_ok=True)
    try:
        cc = chain_coefficients(config.sd, config.mapping_q, config.sites)
    except (IllConditioned, DivergentMoment) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write_chain_csv(config.chain_csv, cc, config.sd.support)

    residual_columns: dict[int, np.ndarray] = {}
    positive_orders = [n for n in config.residual_orders if n > 0]
    if positive_orders:
        if config.mapping_q not in (0.0, 1.0):
            print("unsupported: residual densities need q in {0, 1}",
                  file=sys.stderr)
            return EXIT_UNSUPPORTED
        if not config.sd.gapless:
            from .chainmap import measure_from_sd
            z0 = find_gap_zero(measure_from_sd(config.sd, config.mapping_q))
            print("unsupported: residual densities of a gapped spectral "
                  f"density (Stieltjes transform vanishes at z0={z0:.12g} "
                  "inside the gap)", file=sys.stderr)
            return EXIT_UNSUPPORTED
    try:
        if positive_orders:
            rd = ResidualDensity.build(config.sd, int(config.mapping_q),
                                       max(positive_orders))
            clipped = rd.clipped_range()
        else:
            rd = None
            clipped = _j0_sample_range(config.sd)
        lo, hi = clipped
        if config.grid_range is not None:
            glo, ghi = config.grid_range
            if glo < lo or ghi > hi:
                warnings.append(f"grid range clipped to guard-banded support "
                                f"[{_fmt(lo)}, {_fmt(hi)}]")
            lo, hi = max(lo, glo), min(hi, ghi)
            if not hi > lo:
                warnings.append("grid range outside the support; using the "
                                "full sample range")
                lo, hi = clipped
        grid = np.linspace(lo, hi, config.grid_points)
        # J0 is always emitted alongside any requested orders.
        residual_columns[0] = np.asarray(config.sd(grid), float)
        for n in positive_orders:
            residual_columns[n] = np.asarray(rd(n, grid), float)
    except (UnsupportedMapping, GappedMeasure) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (IllConditioned, DivergentMoment) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write_residual_csv(config.residual_csv, grid, residual_columns,
                        config.mapping_q, clipped)

    try:
        report = convergence_report(config.sd, config.mapping_q, config.sites)
    except (IllConditioned, DivergentMoment) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    payload = {
        "szego": str(report.szego),
        "q": report.q,
        "alpha_limit": report.alpha_limit,
        "beta_limit": report.beta_limit,
        "alpha": [float(v) for v in report.alpha],
        "beta": [float(v) for v in report.beta],
        "alpha_deviation": [float(v) for v in report.alpha_deviation],
        "beta_deviation": [float(v) for v in report.beta_deviation],
        "moment_gaps": {str(n): [float(v) for v in vals]
                        for n, vals in sorted(report.terminal_moment_gap.items())},
        "hopping_ratio": [float(v) for v in report.hopping_ratio],
        "warnings": warnings,
        "provenance": {"tool": "chaincast", "version": __version__},
    }
    with open(config.report_json, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="chaincast",
        description="Chain mappings and residual spectral densities of bath "
                    "spectral densities.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", "validate"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON job config")
        p.add_argument("--q", type=float, default=None,
                       help="override mapping_q")
        p.add_argument("--sites", type=int, default=None,
                       help="override number of chain sites")
        p.add_argument("--out-dir", default=None,
                       help="directory for output files")
    args = parser.parse_args(argv)
    try:
        config = validate(args.config, q_override=args.q,
                          sites_override=args.sites, out_dir=args.out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "validate":
        print(f"config ok: q={config.mapping_q} sites={config.sites} "
              f"residual_orders={list(config.residual_orders)}")
        return EXIT_OK
    try:
        return run(config)
    except ChaincastError as exc:  # uncaught domain errors are numerical
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
