"""Command-line interface: ``tetradcalc eval|check|gauge|table``.

A run config is a JSON object::

    {"geometry": {...}, "gauge": {...}, "points": [[t, r, th, ph], ...],
     "grid": {"r": {"min": 1, "max": 5, "count": 5}, "th": 1.57, ...},
     "sample": {"count": 20, "ranges": {"r": [3, 50]}},
     "diff": "dual", "tol": 1e-9, "seed": 0}

Exit codes: 0 success, 1 failed check (or flagged row with ``--strict``),
2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import checks, gauge, geometry, newman_penrose as npf, ricci, spinor
from . import exprlang as X

DEFAULT_TOL = {"dual": 1e-9, "fd": 1e-6}


class ConfigError(ValueError):
    pass


# configuration -----------------------------------------------------------------


@dataclass
class RunConfig:
    geometry: geometry.TetradField
    gauge: object | None
    points: list[tuple[float, float, float, float]]
    diff_mode: str = "dual"
    tol: float = 1e-9
    seed: int = 0
    gauge_cfg: dict | None = field(default=None, repr=False)


def _coord_value(v) -> float:
    if isinstance(v, (int, float)):
        return float(v)
    val = X.constant_value(str(v))
    if abs(val.imag) > 0:
        raise ConfigError(f"coordinate value {v!r} is not real")
    return float(val.real)


def parse_point(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"a point needs four comma-separated values, got {text!r}")
    return tuple(_coord_value(p) for p in parts)


def parse_grid(text: str, names: Sequence[str]) -> dict:
    """``"t=0,r=1:5:5,th=pi/2,ph=0"`` into a grid mapping."""
    grid = {}
    for item in text.split(","):
        if "=" not in item:
            raise ConfigError(f"grid entry {item!r} must look like name=value or name=min:max:count")
        name, spec = (s.strip() for s in item.split("=", 1))
        if name not in names:
            raise ConfigError(f"unknown coordinate {name!r} in grid; chart has {', '.join(names)}")
        bits = spec.split(":")
        if len(bits) == 1:
            grid[name] = _coord_value(bits[0])
        elif len(bits) == 3:
            grid[name] = {"min": bits[0], "max": bits[1], "count": int(bits[2])}
        else:
            raise ConfigError(f"grid entry {item!r} must look like name=value or name=min:max:count")
    return grid


def grid_points(grid: dict, names: Sequence[str]) -> list[tuple[float, ...]]:
    axes = []
    for name in names:
        spec = grid.get(name, 0.0)
        if isinstance(spec, dict):
            count = int(spec["count"])
            if count < 1:
                raise ConfigError(f"grid count for {name} must be at least 1")
            lo, hi = _coord_value(spec["min"]), _coord_value(spec["max"])
            axes.append(np.linspace(lo, hi, count) if count > 1 else np.array([lo]))
        else:
            axes.append(np.array([_coord_value(spec)]))
    mesh = np.meshgrid(*axes, indexing="ij")
    return [tuple(float(m.flat[k]) for m in mesh) for k in range(mesh[0].size)]


def sample_points(sample: dict, names: Sequence[str], seed: int) -> list[tuple[float, ...]]:
    rng = np.random.default_rng(seed)
    ranges = sample.get("ranges", {})
    count = int(sample.get("count", 10))
    lo = np.array([_coord_value(ranges.get(n, [0, 0])[0]) for n in names])
    hi = np.array([_coord_value(ranges.get(n, [0, 0])[1]) for n in names])
    return [tuple(float(x) for x in lo + (hi - lo) * rng.random(4)) for _ in range(count)]


def load_points(obj) -> list[tuple[float, ...]]:
    """Explicit points: lists of four values or records carrying a ``point`` key."""
    out = []
    for item in obj:
        if isinstance(item, dict):
            item = item["point"]
        if isinstance(item, str):
            out.append(parse_point(item))
        else:
            if len(item) != 4:
                raise ConfigError(f"a point needs four values, got {item!r}")
            out.append(tuple(_coord_value(v) for v in item))
    return out


def build_config(raw: dict, args) -> RunConfig:
    geo_cfg = raw.get("geometry")
    if geo_cfg is None and ("builtin" in raw or "chart" in raw):
        geo_cfg = raw
    if geo_cfg is None:
        raise ConfigError("config has no geometry")
    field_ = geometry.field_from_config(geo_cfg)
    names = field_.chart.names
    gauge_cfg = raw.get("gauge")
    g = None
    seed = args.seed if args.seed is not None else int(raw.get("seed", 0))
    if gauge_cfg is not None:
        if gauge_cfg.get("random"):
            g = gauge.ConstantGauge(gauge.random_sl2c(np.random.default_rng(seed + 7919)))
        else:
            g = gauge.gauge_from_config(gauge_cfg, names)
    points: list = []
    if args.point:
        points += [parse_point(p) for p in args.point]
    if args.grid:
        points += grid_points(parse_grid(args.grid, names), names)
    if not points:
        if "points" in raw:
            points += load_points(raw["points"])
        if "grid" in raw:
            points += grid_points(raw["grid"], names)
        if "sample" in raw:
            points += sample_points(raw["sample"], names, seed)
    if not points:
        raise ConfigError("no points: give --point, --grid, or points/grid/sample in the config")
    diff = args.diff or raw.get("diff", "dual")
    if diff not in DEFAULT_TOL:
        raise ConfigError(f"diff mode must be dual or fd, not {diff!r}")
    tol = args.tol if args.tol is not None else float(raw.get("tol", DEFAULT_TOL[diff]))
    if not tol > 0:
        raise ConfigError("tol must be positive")
    return RunConfig(field_, g, points, diff, tol, seed, gauge_cfg)


# quantity catalog --------------------------------------------------------------

PAIRS = [(a, b) for a in range(4) for b in range(a + 1, 4)]


def _frame_tensor(name: str, t: np.ndarray) -> dict:
    return {f"{name}_{a}{b}{c}": t[a, b, c] for a, b in PAIRS for c in range(4)}


def _vector(name: str, v) -> dict:
    return {f"{name}_{k}": v[k] for k in range(4)}


def _spin(prefix: str, s: npf.SpinCoefficientSet) -> dict:
    return {f"{prefix}{k}": v for k, v in s.as_dict().items()}


def q_gamma(d: checks.PointData) -> dict:
    return _frame_tensor("gamma", d.ricci.gamma)


def q_b_dirac(d):
    return _vector("B", d.ricci.B_dirac)


def q_b_trace(d):
    return _vector("Btr", d.ricci.B_trace)


def q_c(d):
    return _vector("C", d.ricci.C)


def q_decomposition(d):
    dec = d.ricci.decomposition
    return _frame_tensor("Cpart", dec.C_part) | _frame_tensor("Bpart", dec.B_part) | _frame_tensor("Epart", dec.E_part)


def q_spin(d):
    return _spin("", d.spin)


def q_letters(d):
    return _spin("letter_", spinor.to_letters(d.spin))


def q_np(d):
    return {k.rstrip("_"): v for k, v in vars(npf.np_letters(d.spin)).items()}


def q_hat(d):
    names = ("0", "1", "2", "3")
    h = d.hat
    return (
        {f"Bhat{k}": v for k, v in zip(names, h.B_hat)}
        | {f"Chat{k}": v for k, v in zip(names, h.C_hat)}
        | {f"Ahat{k}": v for k, v in zip(names, h.A_hat)}
    )


CATALOG = {
    "gamma": q_gamma,
    "B_dirac": q_b_dirac,
    "B_trace": q_b_trace,
    "C_vector": q_c,
    "decomposition": q_decomposition,
    "spin_coefficients": q_spin,
    "spin_letters": q_letters,
    "np_letters": q_np,
    "hat_components": q_hat,
}


def evaluate_point(field_, point, diff: str, selectors: Sequence[str]) -> dict:
    d = checks.point_data(field_, point, diff)
    row = {}
    for sel in selectors:
        row.update(CATALOG[sel](d))
    return row


# output ------------------------------------------------------------------------


def _num(x: float) -> str:
    x = float(x) + 0.0
    return repr(x) if math.isfinite(x) else str(x)


def _is_complex(v) -> bool:
    return isinstance(v, complex) or np.iscomplexobj(v)


def flatten_row(names: Sequence[str], point, values: dict, error: str = "") -> dict:
    row = {n: _num(x) for n, x in zip(names, point)}
    for k, v in values.items():
        if _is_complex(v):
            row[f"{k}_re"] = _num(np.real(v))
            row[f"{k}_im"] = _num(np.imag(v))
        else:
            row[k] = _num(v)
    if error:
        row["error"] = error
    return row


def write_csv(rows: list[dict], stream) -> None:
    header: list[str] = []
    for r in rows:
        for k in r:
            if k not in header:
                header.append(k)
    w = csv.DictWriter(stream, fieldnames=header, restval="", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def json_records(names: Sequence[str], records: list[tuple]) -> list[dict]:
    out = []
    for point, values, error in records:
        rec = {"point": [float(x) + 0.0 for x in point]}
        for k, v in values.items():
            rec[k] = [float(np.real(v)) + 0.0, float(np.imag(v)) + 0.0] if _is_complex(v) else float(v) + 0.0
        if error:
            rec["error"] = error
        out.append(rec)
    return out


def emit(names, records, fmt: str, out_path: str | None) -> None:
    buf = io.StringIO()
    if fmt == "json":
        json.dump(json_records(names, records), buf, indent=1)
        buf.write("\n")
    else:
        write_csv([flatten_row(names, p, v, e) for p, v, e in records], buf)
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ----------------------------------------------------------------------


def _target_field(cfg: RunConfig):
    return cfg.geometry if cfg.gauge is None else gauge.transform_tetrad(cfg.geometry, cfg.gauge)


def _evaluate_rows(cfg: RunConfig, selectors):
    field_ = _target_field(cfg)
    records, flagged = [], 0
    for p in cfg.points:
        try:
            records.append((p, evaluate_point(field_, p, cfg.diff_mode, selectors), ""))
        except (geometry.GeometryError, gauge.GaugeError, X.ExprError) as exc:
            records.append((p, {}, str(exc)))
            flagged += 1
    return records, flagged


def cmd_eval(cfg: RunConfig, args) -> int:
    records, flagged = _evaluate_rows(cfg, list(CATALOG))
    emit(cfg.geometry.chart.names, records, args.format, args.out)
    return 1 if (flagged and args.strict) else 0


def cmd_table(cfg: RunConfig, args) -> int:
    selectors = [s.strip() for s in args.quantity.split(",")]
    unknown = [s for s in selectors if s not in CATALOG]
    if unknown:
        raise ConfigError(f"unknown quantity {', '.join(unknown)}; known: {', '.join(CATALOG)}")
    records, flagged = _evaluate_rows(cfg, selectors)
    emit(cfg.geometry.chart.names, records, args.format, args.out)
    return 1 if (flagged and args.strict) else 0


def cmd_check(cfg: RunConfig, args) -> int:
    gauges = []
    if cfg.gauge is not None:
        gauges.append(cfg.gauge)
    rng = np.random.default_rng(cfg.seed)
    gauges.append(gauge.ConstantGauge(gauge.random_sl2c(rng)))
    try:
        results = checks.run_suites(cfg.geometry, cfg.points, gauges, cfg.diff_mode)
    except geometry.SingularTetradError as exc:
        print(f"FAIL singular tetrad: {exc}", file=sys.stderr)
        return 1
    except (geometry.GeometryError, gauge.GaugeError) as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 1
    failed = 0
    lines = []
    for r in results:
        if r.skipped:
            lines.append(f"SKIP {r.name}: {r.skipped}")
            continue
        worst = max(r.residuals.values()) if r.residuals else 0.0
        status = "PASS" if r.passed(cfg.tol) else "FAIL"
        lines.append(f"{status} {r.name}: max residual {worst:.3e} (tol {cfg.tol:.1e})")
        if status == "FAIL":
            failed += 1
            for k, v in r.residuals.items():
                if v > cfg.tol:
                    lines.append(f"    {k} = {v:.3e} at point {r.worst_point}")
    n_pass = sum(1 for r in results if r.passed(cfg.tol))
    lines.append(f"{n_pass}/{len(results)} suites pass over {len(cfg.points)} points")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 1 if failed else 0


def cmd_gauge(cfg: RunConfig, args) -> int:
    if cfg.gauge is None:
        raise ConfigError("the gauge command needs a gauge in the config")
    g = cfg.gauge
    base = cfg.geometry
    moved = gauge.transform_tetrad(base, g)
    records, bad = [], 0
    for p in cfg.points:
        try:
            d = checks.point_data(base, p, cfg.diff_mode)
            d2 = checks.point_data(moved, p, cfg.diff_mode)
            law_letters = gauge.transform_letters(d.spin, d.null, g, p)
            rec_letters = spinor.to_letters(d2.spin)
            law_B = gauge.transform_B(d.ricci.B_dirac, g, d.frame)
            law_C = gauge.transform_C(d.ricci.C, g, d.frame)
            kernels = gauge.gauge_kernels(d.spin, d.null, g, p)
        except (geometry.GeometryError, gauge.GaugeError, X.ExprError) as exc:
            records.append((p, {}, str(exc)))
            bad += 1
            continue
        values = {}
        for label, v in zip(rec_letters.labels(), law_letters.as_array()):
            values[f"law_{label}"] = v
        for label, v in zip(rec_letters.labels(), rec_letters.as_array()):
            values[f"recomputed_{label}"] = v
        for name, arr in (("F", kernels.F), ("G", kernels.G), ("H", kernels.H), ("Delta", kernels.Delta)):
            for i in range(3):
                values[f"{name}{i + 1}"] = arr[i]
        values |= _vector("law_B", law_B) | _vector("recomputed_B", d2.ricci.B_dirac)
        values |= _vector("law_C", law_C) | _vector("recomputed_C", d2.ricci.C)
        res = checks.commuting_square(base, g, p, cfg.diff_mode)
        for k, v in res.items():
            values[f"residual_{k}"] = v
        if max(res.values()) > cfg.tol:
            bad += 1
        records.append((p, values, ""))
    emit(base.chart.names, records, args.format, args.out)
    return 1 if bad else 0


COMMANDS = {"eval": cmd_eval, "check": cmd_check, "gauge": cmd_gauge, "table": cmd_table}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tetradcalc", description="Tetrad, Ricci and spin-coefficient calculator.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="run config (JSON)")
        p.add_argument("--point", action="append", help='point such as "0,2,pi/2,0" (repeatable)')
        p.add_argument("--grid", help='grid such as "t=0,r=1:5:5,th=pi/2,ph=0"')
        p.add_argument("--diff", choices=["dual", "fd"])
        p.add_argument("--tol", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--strict", action="store_true")
        p.add_argument("--out")
        if name == "table":
            p.add_argument("--quantity", required=True, help=f"comma-separated: {', '.join(CATALOG)}")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        cfg = build_config(raw, args)
        return COMMANDS[args.command](cfg, args)
    except (OSError, json.JSONDecodeError, ConfigError, X.ExprError, gauge.GaugeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except geometry.GeometryError as exc:
        if isinstance(exc, (geometry.SingularTetradError, geometry.PointDomainError)):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
