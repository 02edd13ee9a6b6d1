"""Command-line interface: error-rate tables, threshold scans,
qubit-kind comparisons, idle sweeps, and laser-power tables.

Each subcommand writes a UTF-8 CSV (with the resolved configuration echoed
as `#` header comments) and an SVG plot into --out.  Identical
configuration produces byte-identical CSV output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import experiments as ex
from . import species as species_mod
from . import stats

REPORT_KINDS = ("error_rates", "threshold", "comparison", "idle", "power")


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_csv(path: str, columns, rows, header_lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header_lines:
            f.write(f"# {line}\n")
        f.write(",".join(columns) + "\n")
        for row in rows:
            f.write(",".join(_fmt(row[c]) for c in columns) + "\n")


def _config_lines(command: str, config: ex.ExperimentConfig,
                  extra=()) -> list:
    lines = [f"ionqec {command}"]
    for key, val in sorted(config.to_dict().items()):
        if key == "out":  # destination path, not a simulation parameter
            continue
        lines.append(f"{key}={val!r}")
    lines.extend(extra)
    return lines


def _plot_curves(ax, curves, label_fmt="d={key}"):
    for key in sorted(curves):
        pts = [(x, y) for x, y in curves[key] if y > 0]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.loglog(xs, ys, "o-", label=label_fmt.format(key=key))


def emit_report(rows, kind: str, outdir: str, header_lines,
                curves=None) -> dict:
    """Write <kind>.csv and <kind>.svg; returns the file paths."""
    if kind not in REPORT_KINDS:
        raise ValueError(f"unknown report kind {kind!r}")
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    columns = {
        "error_rates": ex.RATES_COLUMNS,
        "threshold": ex.THRESHOLD_COLUMNS,
        "comparison": ex.COMPARE_COLUMNS,
        "idle": ex.IDLE_COLUMNS,
        "power": ex.POWER_COLUMNS,
    }[kind]
    csv_path = os.path.join(outdir, f"{kind}.csv")
    write_csv(csv_path, columns, rows, header_lines)

    fig, ax = plt.subplots(figsize=(5.0, 3.8))
    if kind == "error_rates":
        for qubit, style in (("ground", "-"), ("metastable", "--")):
            sub = [r for r in rows if r["qubit"] == qubit]
            xs = [r["delta_frac"] for r in sub]
            for col in ("p_xy", "p_z", "p_leak", "p_erasure", "p_total"):
                ys = [r[col] for r in sub]
                if any(y > 0 for y in ys):
                    ax.loglog(xs, ys, style, label=f"{qubit} {col}")
        ax.set_xlabel("detuning / fine-structure splitting")
        ax.set_ylabel("error per gate")
    elif kind == "threshold":
        _plot_curves(ax, curves)
        _band(ax, rows, "p2q_g", "p2q_m")
        ax.set_xlabel("two-qubit gate error")
        ax.set_ylabel("logical error rate")
    elif kind == "comparison":
        for qubit, style in (("ground", "-"), ("metastable", "--")):
            for d in sorted({r["d"] for r in rows}):
                sub = [r for r in rows if r["d"] == d]
                key = "p_L_ground" if qubit == "ground" else "p_L_meta"
                pts = [(r["p2q_g"], r[key]) for r in sub if r[key] > 0]
                if pts:
                    xs, ys = zip(*pts)
                    ax.loglog(xs, ys, style + "o",
                              label=f"{qubit} d={d}")
        ax.set_xlabel("ground-qubit two-qubit gate error")
        ax.set_ylabel("logical error rate")
    elif kind == "idle":
        _plot_curves(ax, curves)
        _band(ax, rows, "p_idle")
        ax.set_xlabel("idle erasure per round")
        ax.set_ylabel("logical error rate")
    elif kind == "power":
        for qubit, style in (("ground", "-"), ("metastable", "--")):
            sub = [r for r in rows if r["qubit"] == qubit]
            ax.semilogy([r["delta_frac"] for r in sub],
                        [r["power_W"] for r in sub], style, label=qubit)
        ax.set_xlabel("detuning / fine-structure splitting")
        ax.set_ylabel("laser power (W)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    svg_path = os.path.join(outdir, f"{kind}.svg")
    fig.savefig(svg_path)
    plt.close(fig)
    return {"csv": csv_path, "svg": svg_path}


def _band(ax, rows, *xcols):
    """Overlay the per-distance confidence band from ci columns."""
    for d in sorted({r["d"] for r in rows}):
        sub = [r for r in rows if r["d"] == d]
        pts = []
        for r in sub:
            x = next((r[c] for c in xcols if r[c] != ""), None)
            if x is not None and r["ci_high"] > 0:
                pts.append((x, max(r["ci_low"], 1e-12), r["ci_high"]))
        if pts:
            xs, lo, hi = zip(*sorted(pts))
            ax.fill_between(xs, lo, hi, alpha=0.2)


def _parse_distances(text):
    return tuple(int(t) for t in text.split(",") if t)


def _resolve_config(args) -> ex.ExperimentConfig:
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            base = json.loads(f.read())
    else:
        base = {}
    over = {
        "species": args.species,
        "qubit": getattr(args, "qubit", None),
        "case": getattr(args, "case", None),
        "shots": args.shots,
        "master_seed": args.seed,
        "out": args.out,
    }
    if getattr(args, "distances", None):
        over["distances"] = _parse_distances(args.distances)
    if getattr(args, "idle_meas", False):
        over["include_idle"] = True
    base.update({k: v for k, v in over.items() if v is not None})
    return ex.ExperimentConfig.from_dict(base)


def _add_common(p, sim=True):
    p.add_argument("--species", help="species name, e.g. Ba133 or Ca43")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--species-db", dest="species_db",
                   help="JSON species registry replacing the built-ins")
    p.add_argument("--out", help="output directory (default: out)")
    if sim:
        p.add_argument("--qubit", choices=("ground", "metastable"))
        p.add_argument("--case", choices=("I", "II", "III"))
        p.add_argument("--distances", help="comma-separated odd distances")
        p.add_argument("--shots", type=int)
        p.add_argument("--seed", type=int)
    else:
        p.set_defaults(qubit=None, case=None, distances=None,
                       shots=None, seed=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ionqec",
        description="Trapped-ion erasure-conversion QEC simulator")
    sub = ap.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser(
        "rates", help="gate-error budget vs detuning"), sim=False)
    thr = sub.add_parser(
        "threshold", help="surface-code threshold scan")
    _add_common(thr)
    thr.add_argument("--idle-meas", action="store_true",
                     help="include idle erasure and measurement noise")
    _add_common(sub.add_parser(
        "compare", help="ground vs metastable at matched laser settings"))
    _add_common(sub.add_parser(
        "idle", help="idle-erasure sweep at fixed gate error"))
    _add_common(sub.add_parser(
        "power", help="laser power vs detuning"), sim=False)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.species_db:
        species_mod.use_registry(species_mod.load_registry(args.species_db))
    config = _resolve_config(args)
    outdir = config.out

    if args.command == "rates":
        rows = ex.rates_table(config.species)
        files = emit_report(rows, "error_rates", outdir,
                            _config_lines("rates", config))
    elif args.command == "threshold":
        rows, curves = ex.threshold_scan(config)
        th = (stats.estimate_threshold(curves) if len(curves) > 1
              else stats.ThresholdEstimate(None, 0.0, ()))
        extra = [f"threshold={_fmt(th.value) if th.crossed else 'none'}",
                 f"threshold_spread={_fmt(th.spread) if th.crossed else ''}"]
        files = emit_report(rows, "threshold", outdir,
                            _config_lines("threshold", config, extra),
                            curves=curves)
        if th.crossed:
            print(f"threshold estimate: {th.value:.4g} "
                  f"(spread {th.spread:.2g})")
        else:
            print("threshold estimate: no crossing in scanned range")
    elif args.command == "compare":
        rows, curves = ex.compare_scan(config)
        files = emit_report(rows, "comparison", outdir,
                            _config_lines("compare", config))
    elif args.command == "idle":
        rows, curves = ex.idle_scan(config)
        th = (stats.estimate_threshold(curves) if len(curves) > 1
              else stats.ThresholdEstimate(None, 0.0, ()))
        extra = [f"idle_threshold={_fmt(th.value) if th.crossed else 'none'}"]
        files = emit_report(rows, "idle", outdir,
                            _config_lines("idle", config, extra),
                            curves=curves)
        if th.crossed:
            print(f"idle threshold estimate: {th.value:.4g}")
    else:
        rows = ex.power_table(config.species)
        files = emit_report(rows, "power", outdir,
                            _config_lines("power", config))
    print(f"wrote {files['csv']}")
    print(f"wrote {files['svg']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
