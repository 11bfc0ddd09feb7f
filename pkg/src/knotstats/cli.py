"""Command-line front end.

Subcommands: import, verify, fit, density, check, plot.  Delimited
output (CSV in the table column order) and JSON reports are written to
the output directory; the report path also renders SVG figures there.

Exit codes: 0 success or soft warnings, 1 analysis failure,
2 usage or I/O failure.
"""

from __future__ import annotations

import csv
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import conjectures, dataset, plots, stats
from .errors import (EmptyFile, KnotstatsError, MissingColumn, TooFewPoints,
                     DegenerateX)
from .families import FamilyReport, family_report

_LOGS = {"e": math.log, "10": math.log10}


def _read_config(path) -> dict[str, str]:
    if path is None:
        return {}
    return dataset.read_header_map(path)  # same flat key=value format


def _load_table(data, header_map, config):
    data = data or config.get("data")
    header_map = header_map or config.get("map")
    if data is None:
        raise click.UsageError("no --data path given")
    data = Path(data)
    if not data.exists():
        click.echo(f"error: data file {data} does not exist", err=True)
        sys.exit(2)
    hmap = dataset.read_header_map(header_map) if header_map else None
    try:
        return dataset.load_csv(data, hmap)
    except (MissingColumn, EmptyFile) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _out_dir(out, config) -> Path:
    out = Path(out or config.get("out") or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _selected_groups(table, groups: str, crossings: int | None):
    chosen = []
    for c, alt in table.groups():
        if crossings is not None and c != crossings:
            continue
        if groups == "alt" and not alt:
            continue
        if groups == "nonalt" and alt:
            continue
        chosen.append((c, alt))
    return chosen


@click.group()
def main():
    """Knot determinants, dataset statistics and conjecture checks."""


_common = [
    click.option("--data", type=click.Path(), default=None,
                 help="Dataset CSV path."),
    click.option("--map", "header_map", type=click.Path(exists=True),
                 default=None, help="Header-map file (ours = theirs)."),
    click.option("--out", type=click.Path(), default=None,
                 help="Output directory (default: cwd)."),
    click.option("--config", type=click.Path(exists=True), default=None,
                 help="Flat key=value config; flags win."),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@main.command("import")
@common_options
def cmd_import(data, header_map, out, config):
    """Ingest and validate a dataset CSV; write the validation report."""
    cfg = _read_config(config)
    table, report = _load_table(data, header_map, cfg)
    out_dir = _out_dir(out, cfg)
    path = out_dir / "import_report.json"
    path.write_text(report.to_json() + "\n")
    counts = table.group_counts()
    click.echo(f"loaded {report.loaded} records "
               f"({len(report.quarantined)} quarantined, "
               f"{report.non_hyperbolic} non-hyperbolic) -> {path}")
    for group, n in counts.items():
        click.echo(f"  {group}: {n}")


def _parse_family_spec(spec: str):
    """Parse twist:1..30 or pretzel:3,3,2..20[:even|:odd]."""
    parts = spec.split(":")
    kind = parts[0]
    if kind == "twist" and len(parts) == 2:
        m = re.fullmatch(r"(\d+)\.\.(\d+)", parts[1])
        if m:
            return "twist", list(range(int(m.group(1)), int(m.group(2)) + 1))
    if kind == "pretzel" and len(parts) in (2, 3):
        m = re.fullmatch(r"3,3,(\d+)\.\.(\d+)", parts[1])
        if m:
            values = list(range(int(m.group(1)), int(m.group(2)) + 1))
            if len(parts) == 3:
                parity = parts[2]
                want = 0 if parity == "even" else 1
                values = [v for v in values if v % 2 == want]
            return "pretzel33", values
    raise click.UsageError(f"bad family spec {spec!r}")


@main.command("verify")
@common_options
@click.option("--sample", type=int, default=0,
              help="Sample size for dataset determinant cross-checks.")
@click.option("--crossings", type=int, default=None)
@click.option("--families", multiple=True,
              help="Family spec like twist:1..30 or pretzel:3,3,2..20:even.")
@click.option("--seed", type=int, default=0)
def cmd_verify(data, header_map, out, config, sample, crossings, families, seed):
    """Cross-check determinants: dataset samples and/or closed-form families."""
    cfg = _read_config(config)
    out_dir = _out_dir(out, cfg)
    failed = False
    for spec in families:
        kind, values = _parse_family_spec(spec)
        report: FamilyReport = family_report(kind, values)
        matches = sum(r.match for r in report.rows)
        click.echo(f"{kind}: {matches}/{len(report.rows)} closed-form matches")
        (out_dir / f"verify_{kind}.json").write_text(report.to_json() + "\n")
        (out_dir / f"verify_{kind}.csv").write_text(report.to_csv())
        failed |= not report.all_match
    if sample:
        table, _ = _load_table(data, header_map, cfg)
        report = dataset.verify_sample(table, sample, seed=seed,
                                       crossings=crossings)
        click.echo(f"dataset sample: {report.matches}/{len(report.checks)} "
                   "consensus matches")
        (out_dir / "verify_sample.json").write_text(report.to_json() + "\n")
        failed |= report.matches != len(report.checks)
    if not families and not sample:
        raise click.UsageError("nothing to verify: give --sample or --families")
    sys.exit(1 if failed else 0)


_FIT_HEADER = ["group", "r_squared", "correlation", "slope", "slope_err",
               "intercept", "intercept_err", "n"]


def _fit_group(table, c, alt, y_field, log):
    recs = [r for r in table.group(c, alt) if r.hyperbolic]
    xs = [r.volume for r in recs]
    ys = [log(getattr(r, y_field)) for r in recs]
    return stats.linfit(xs, ys)


@main.command("fit")
@common_options
@click.option("--y", "y_field", type=click.Choice(["kfh_rank", "determinant"]),
              default="kfh_rank")
@click.option("--groups", type=click.Choice(["all", "alt", "nonalt"]),
              default="all")
@click.option("--crossings", type=int, default=None)
@click.option("--log-base", type=click.Choice(["e", "10"]), default=None)
@click.option("--jobs", type=int, default=1)
def cmd_fit(data, header_map, out, config, y_field, groups, crossings,
            log_base, jobs):
    """OLS fits of volume vs log-invariant, one row per group."""
    cfg = _read_config(config)
    log = _LOGS[log_base or cfg.get("log_base", "e")]
    table, _ = _load_table(data, header_map, cfg)
    out_dir = _out_dir(out, cfg)
    chosen = _selected_groups(table, groups, crossings)

    def run(key):
        c, alt = key
        try:
            return key, _fit_group(table, c, alt, y_field, log)
        except (TooFewPoints, DegenerateX) as exc:
            return key, exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, chosen))
    else:
        results = [run(key) for key in chosen]

    rows = []
    as_json = {}
    for (c, alt), fit in results:
        name = f"{c}{'a' if alt else 'n'}"
        if isinstance(fit, Exception):
            click.echo(f"warning: {name}: {fit}", err=True)
            rows.append([name, "", "", "", "", "", "", ""])
            continue
        rows.append([name, f"{fit.r_squared:.6g}", f"{fit.pearson_r:.6g}",
                     f"{fit.slope:.6g}", f"{fit.slope_err:.3g}",
                     f"{fit.intercept:.6g}", f"{fit.intercept_err:.3g}", fit.n])
        as_json[name] = fit.__dict__
    stem = f"fit_{y_field}_{groups}"
    csv_path = out_dir / f"{stem}.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_FIT_HEADER)
        writer.writerows(rows)
    (out_dir / f"{stem}.json").write_text(json.dumps(as_json, indent=2) + "\n")
    click.echo(f"wrote {csv_path}")


@main.command("density")
@common_options
@click.option("--d", "cutoff", type=int, default=50)
@click.option("--crossings", type=int, default=None)
@click.option("--groups", type=click.Choice(["nonalt"]), default="nonalt")
@click.option("--no-plot", is_flag=True, default=False)
def cmd_density(data, header_map, out, config, cutoff, crossings, groups,
                no_plot):
    """Density curves f(x) for non-alternating groups with sigmoid fits."""
    cfg = _read_config(config)
    table, _ = _load_table(data, header_map, cfg)
    out_dir = _out_dir(out, cfg)
    fits = {}
    for c, alt in _selected_groups(table, "nonalt", crossings):
        name = f"{c}n"
        recs = [r for r in table.group(c, alt) if r.hyperbolic]
        if not recs:
            continue
        curve = stats.density_f(recs, cutoff)
        xs, ys = curve.finite_points()
        with (out_dir / f"density_{name}_d{cutoff}.csv").open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["volume", "fraction"])
            for x, y in zip(curve.breakpoints, curve.values):
                writer.writerow([x, f"{y:.10g}"])
        try:
            fit = stats.sigmoid_fit(curve)
        except (TooFewPoints, DegenerateX, KnotstatsError) as exc:
            click.echo(f"warning: {name}: sigmoid fit refused ({exc})", err=True)
            fit = None
        if fit is not None:
            fits[name] = {
                "L": fit.L, "L_err": fit.L_err, "k": fit.k, "k_err": fit.k_err,
                "x0": fit.x0, "x0_err": fit.x0_err, "b": fit.b, "b_err": fit.b_err,
                "sse": fit.sse, "iterations": fit.iterations,
                "converged": fit.converged,
            }
        if not no_plot:
            plots.density_figure(curve, fit, out_dir / f"density_{name}_d{cutoff}.svg",
                                 title=f"{name}, d={cutoff}")
    json_path = out_dir / f"density_fits_d{cutoff}.json"
    json_path.write_text(json.dumps(fits, indent=2) + "\n")
    with (out_dir / f"density_fits_d{cutoff}.csv").open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["group", "L", "L_err", "k", "k_err",
                         "x0", "x0_err", "b", "b_err"])
        for name, p in fits.items():
            writer.writerow([name] + [f"{p[k]:.6g}" for k in
                                      ("L", "L_err", "k", "k_err",
                                       "x0", "x0_err", "b", "b_err")])
    click.echo(f"wrote {json_path}")


@main.command("check")
@common_options
@click.argument("kind", type=click.Choice(
    ["rank-volume", "det-volume", "stoimenow", "density"]))
@click.option("--a", type=float, default=1.0)
@click.option("--b", type=float, default=0.0)
@click.option("--d", "cutoff", type=int, default=50)
@click.option("--margin", type=float, default=0.0)
@click.option("--log-base", type=click.Choice(["e", "10"]), default=None)
def cmd_check(data, header_map, out, config, kind, a, b, cutoff, margin,
              log_base):
    """Evaluate one of the volume-bound inequalities over the dataset."""
    cfg = _read_config(config)
    log = _LOGS[log_base or cfg.get("log_base", "e")]
    table, _ = _load_table(data, header_map, cfg)
    out_dir = _out_dir(out, cfg)
    if kind == "rank-volume":
        report = conjectures.check_rank_volume(table, a, log=log)
    elif kind == "det-volume":
        report = conjectures.check_det_volume(table, a, b, log=log)
    elif kind == "stoimenow":
        report = conjectures.check_stoimenow(table)
    else:
        params = {}
        for c, alt in _selected_groups(table, "nonalt", None):
            recs = [r for r in table.group(c, alt) if r.hyperbolic]
            if not recs:
                continue
            try:
                fit = stats.sigmoid_fit(stats.density_f(recs, cutoff))
            except KnotstatsError:
                continue
            params[f"{c}n"] = fit.params
        report = conjectures.check_density_bound(table, cutoff, params, margin)
    path = out_dir / f"check_{kind}.json"
    path.write_text(report.to_json() + "\n")
    if hasattr(report, "to_csv"):
        (out_dir / f"check_{kind}.csv").write_text(report.to_csv())
    click.echo(f"wrote {path}")
    for g in report.groups:
        frac = getattr(g, "fraction_strict", getattr(g, "fraction", None))
        click.echo(f"  {g.group}: {frac:.4f}")


@main.command("plot")
@common_options
@click.option("--kind", type=click.Choice(
    ["scatter-rank", "scatter-det", "hist-volume", "hist-rank", "hist-det"]),
    default="scatter-rank")
@click.option("--crossings", type=int, default=None)
@click.option("--log-base", type=click.Choice(["e", "10"]), default=None)
@click.option("--seed", type=int, default=0)
def cmd_plot(data, header_map, out, config, kind, crossings, log_base, seed):
    """Render scatter or distribution figures as SVG files."""
    cfg = _read_config(config)
    log = _LOGS[log_base or cfg.get("log_base", "e")]
    table, _ = _load_table(data, header_map, cfg)
    out_dir = _out_dir(out, cfg)
    written = []
    if kind.startswith("scatter"):
        y_field = "kfh_rank" if kind == "scatter-rank" else "determinant"
        numbers = sorted({c for c, _ in table.groups()
                          if crossings is None or c == crossings})
        for c in numbers:
            fits = {}
            for alt in (False, True):
                name = f"{c}{'a' if alt else 'n'}"
                try:
                    fits[name] = _fit_group(table, c, alt, y_field, log)
                except (TooFewPoints, DegenerateX):
                    pass
            if not any(table.group(c, alt) for alt in (False, True)):
                click.echo(f"warning: no records for c={c}", err=True)
                continue
            written.append(plots.scatter_volume_fit(
                table, c, y_field, fits,
                out_dir / f"{kind}_{c}.svg", log=log, seed=seed))
    else:
        field = {"hist-volume": "volume", "hist-rank": "kfh_rank",
                 "hist-det": "determinant"}[kind]
        written.append(plots.histogram_figure(
            table, field, out_dir / f"{kind}.svg"))
    for p in written:
        click.echo(f"wrote {p}")
    if not written:
        click.echo("warning: nothing plotted", err=True)


if __name__ == "__main__":
    main()
