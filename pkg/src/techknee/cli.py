"""Command-line front-end.

Exit codes: 0 success, 1 domain error (no crossover under
--require-crossover, reproduction mismatch under --strict), 2 usage error
(bad flags, missing files, unit mismatches). Output carries explicit
units and provenance and contains no timestamps, so identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .datasets import data_dir, export_bundled, load_all, parse_series_csv
from .errors import TechkneeError
from .fitting import crossover_empirical, crossover_fitted, fit_exponential, knee, tir
from .plots import write_case_svg, write_tidy_csv
from .series import UNIT_TAGS
from .sweep import (
    SweepConfig,
    feasibility_range,
    reproduce_case_studies,
    run_scenario,
    run_sweep,
    Scenario,
    Detection,
    parse_detection,
    parse_usage_metric,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="techknee",
        description="Fit technology improvement curves, detect performance "
        "crossovers and adoption knees, and reproduce the bundled "
        "internet-audio/video case studies.",
    )
    parser.add_argument("--version", action="version", version=f"techknee {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit an exponential improvement curve to a CSV series")
    p.add_argument("--input", required=True, help="CSV file with header year,value")
    p.add_argument("--unit", default="count-per-year", choices=sorted(UNIT_TAGS))
    p.add_argument("--from", dest="from_year", type=int, default=None)
    p.add_argument("--to", dest="to_year", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("crossover", help="detect the performance crossover of two series")
    p.add_argument("--replacement", required=True, help="CSV for the improving technology")
    p.add_argument("--target", required=True, help="CSV for the incumbent technology")
    p.add_argument("--unit", default="media-units-per-real-dollar", choices=sorted(UNIT_TAGS))
    p.add_argument("--fitted", action="store_true", help="intersect fitted curves instead of raw data")
    p.add_argument("--from", dest="from_year", type=int, default=None, help="fit window start (fitted mode)")
    p.add_argument("--to", dest="to_year", type=int, default=None, help="fit window end (fitted mode)")
    p.add_argument("--require-crossover", action="store_true", help="exit 1 if no crossover is found")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("knee", help="detect the adoption-curve knee of a share series")
    p.add_argument("--input", required=True, help="CSV file with header year,value (shares in [0,1])")
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("case", help="run a bundled case study end to end")
    p.add_argument("case", choices=["audio", "video"])
    p.add_argument(
        "--scenario",
        default=None,
        help="override the baseline axes with a scenario id, e.g. "
        "'mail_cassette|song|raw_bits|fitted:1995-|0.1' "
        "(target|reference|metric|detection|threshold)",
    )
    p.add_argument("--threshold", type=float, default=0.01, help="knee threshold (default 1%%)")
    p.add_argument("--out", default=None, help="directory for tidy curve CSV and SVG chart")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="run a scenario sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="directory for results.csv and feasibility.json")

    p = sub.add_parser("reproduce", help="recompute every reproducible published table cell")
    p.add_argument("--strict", action="store_true", help="exit 1 if any cell deviates beyond tolerance")
    p.add_argument("--out", default=None, help="directory for the cell report and curve data")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("export-data", help="dump the bundled tables for auditing")
    p.add_argument("--out", required=True)

    return parser


def _load_series(path: str, unit: str):
    try:
        return parse_series_csv(path, unit)
    except FileNotFoundError:
        raise _Usage(f"no such file: {path} (pass an existing CSV with header year,value)")
    except ValueError as exc:
        raise _Usage(str(exc))


class _Usage(Exception):
    pass


def _cmd_fit(args) -> int:
    series = _load_series(args.input, args.unit)
    fit = fit_exponential(series, (args.from_year, args.to_year))
    rate = tir(fit)
    if args.json:
        print(
            json.dumps(
                {
                    "input": args.input,
                    "unit": args.unit,
                    "window": list(fit.window),
                    "n_points": fit.n_points,
                    "level_at_t0": fit.a,
                    "rate_per_year": fit.k,
                    "tir_percent": rate,
                    "r_squared": fit.r_squared,
                }
            )
        )
    else:
        print(f"input: {args.input} ({args.unit})")
        print(f"window: {fit.window[0]}-{fit.window[1]} ({fit.n_points} points)")
        print(f"level at {fit.t0}: {fit.a:.6g} {args.unit}")
        print(f"continuous rate: {fit.k:.6f} per year")
        print(f"TIR: {rate:.1f}% per year")
        print(f"r-squared (log space): {fit.r_squared:.4f}")
    return 0


def _cmd_crossover(args) -> int:
    replacement = _load_series(args.replacement, args.unit)
    target = _load_series(args.target, args.unit)
    if args.fitted:
        window = (args.from_year, args.to_year)
        result = crossover_fitted(
            fit_exponential(replacement, window), fit_exponential(target, window)
        )
    else:
        result = crossover_empirical(replacement, target)
    if args.json:
        print(
            json.dumps(
                {
                    "replacement": args.replacement,
                    "target": args.target,
                    "unit": args.unit,
                    "mode": result.mode,
                    "year": result.year,
                    "fractional_year": result.fractional_year,
                }
            )
        )
    else:
        provenance = f"{args.replacement} vs {args.target} ({args.unit}, {result.mode})"
        if result.year is None:
            print(f"{provenance}: no crossover")
        elif result.fractional_year is not None:
            print(f"{provenance}: crossover {result.year} (fractional {result.fractional_year:.2f})")
        else:
            print(f"{provenance}: crossover {result.year}")
    if args.require_crossover and result.year is None:
        print("error: no crossover found", file=sys.stderr)
        return 1
    return 0


def _cmd_knee(args) -> int:
    series = _load_series(args.input, "dimensionless-share")
    result = knee(series, args.threshold)
    if args.json:
        print(json.dumps({"input": args.input, "threshold": args.threshold, "year": result.year}))
    elif result.year is None:
        print(f"{args.input}: share never reaches {args.threshold:.0%}")
    else:
        print(f"{args.input}: knee({args.threshold:.0%}) = {result.year}")
    return 0


_BASELINE_TARGET = {"audio": "mail_cd", "video": "mail_dvd"}
_BASELINE_MEDIA = {"audio": "album", "video": "clip"}


def _parse_scenario_id(case: str, raw: str, default_threshold: float) -> Scenario:
    """Scenario from 'target|reference|metric|detection[|threshold]'."""
    parts = raw.split("|")
    if parts and parts[0] == case:
        parts = parts[1:]
    if len(parts) not in (4, 5):
        raise _Usage(
            f"scenario id {raw!r} needs target|reference|metric|detection[|threshold]"
        )
    threshold = float(parts[4]) if len(parts) == 5 else default_threshold
    return Scenario(
        case=case,
        target=parts[0],
        reference_media=parts[1],
        usage_metric=parse_usage_metric(parts[2]),
        detection=parse_detection(parts[3]),
        knee_threshold=threshold,
    )


def _cmd_case(args) -> int:
    datasets = load_all()
    if args.scenario:
        try:
            scenario = _parse_scenario_id(args.case, args.scenario, args.threshold)
        except ValueError as exc:
            raise _Usage(f"bad scenario id: {exc}")
    else:
        scenario = Scenario(
            case=args.case,
            target=_BASELINE_TARGET[args.case],
            reference_media=_BASELINE_MEDIA[args.case],
            usage_metric=parse_usage_metric("minutes"),
            detection=Detection("empirical"),
            knee_threshold=args.threshold,
        )
    result = run_scenario(scenario, datasets)
    threshold_label = f"{scenario.knee_threshold:.0%}"
    if args.json:
        print(
            json.dumps(
                {
                    "case": args.case,
                    "scenario": scenario.scenario_id,
                    "data": sorted(p.name for p in data_dir().glob("*.csv")),
                    "crossover": result.crossover.year,
                    "knee_threshold": scenario.knee_threshold,
                    "knee": result.knee.year,
                }
            )
        )
    else:
        print(f"case: {args.case}")
        print(f"replacement: internet {args.case} ({scenario.reference_media}) "
              f"[a1_bandwidth_cost, a2_compression]")
        print(f"target: {scenario.target} [a3_postage]")
        print(f"adoption: {scenario.usage_metric.label()} metric [a2, a4_traffic, a5_media_share, a6_sales, a7, a8]")
        print(f"crossover: {result.crossover.year}, knee({threshold_label}): {result.knee.year}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        from .sweep import adoption_series, replacement_performance, target_performance

        curves = {
            f"internet_{args.case}": replacement_performance(args.case, scenario.reference_media, datasets),
            scenario.target: target_performance(scenario.target, datasets),
        }
        adoption = adoption_series(args.case, scenario.usage_metric, datasets)
        write_tidy_csv(out / f"{args.case}_curves.csv", {**curves, "adoption": adoption})
        write_case_svg(out / f"{args.case}.svg", curves, adoption, f"internet {args.case} vs {scenario.target}")
        if not args.json:
            print(f"wrote: {out / f'{args.case}_curves.csv'}")
            print(f"wrote: {out / f'{args.case}.svg'}")
    return 0


def _cmd_sweep(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as f:
            doc = json.load(f)
    except FileNotFoundError:
        raise _Usage(f"no such config file: {args.config}")
    except json.JSONDecodeError as exc:
        raise _Usage(f"{args.config}: invalid JSON ({exc})")

    from .sweep import extend_datasets

    datasets = extend_datasets(load_all(), doc, base_dir=Path(args.config).parent)
    config = SweepConfig.from_json(doc)
    results = run_sweep(config, datasets)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows_path = out / "results.csv"
    with open(rows_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(
            ["scenario_id", "case", "target", "reference_media", "usage_metric",
             "detection", "knee_threshold", "crossover_year", "crossover_fractional", "knee_year"]
        )
        for r in results:
            s = r.scenario
            writer.writerow(
                [
                    s.scenario_id, s.case, s.target, s.reference_media,
                    s.usage_metric.label(), s.detection.label(), f"{s.knee_threshold:g}",
                    r.crossover.year if r.crossover.year is not None else "",
                    f"{r.crossover.fractional_year:.4f}" if r.crossover.fractional_year is not None else "",
                    r.knee.year if r.knee.year is not None else "",
                ]
            )

    ranges = feasibility_range(results, group_by=None) + feasibility_range(results, group_by="target")
    summary = {
        "n_scenarios": len(results),
        "ranges": [
            {
                "label": fr.label,
                "n_scenarios": fr.n_scenarios,
                "crossover": [fr.crossover_min, fr.crossover_max],
                "crossover_absent": fr.crossover_absent,
                "knee": [fr.knee_min, fr.knee_max],
                "knee_absent": fr.knee_absent,
            }
            for fr in ranges
        ],
    }
    (out / "feasibility.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    print(f"{len(results)} scenarios -> {rows_path}")
    print(f"feasibility summary -> {out / 'feasibility.json'}")
    return 0


def _cmd_reproduce(args) -> int:
    datasets = load_all()
    report = reproduce_case_studies(datasets)
    if args.json:
        print(report.to_json())
    else:
        for cell in report.cells:
            expected = cell.expected if cell.expected is not None else "-"
            computed = cell.computed if cell.computed is not None else "-"
            if cell.expected is None:
                tol = "-"
            else:
                tol = f"+/-{cell.tolerance}" if cell.tolerance else "exact"
            line = (f"{cell.status.upper():16s} {cell.cell_id:28s} expected {expected} "
                    f"({tol}) computed {computed}")
            if cell.note:
                line += f"  [{cell.note}]"
            print(line)
        for rng in report.ranges:
            computed = list(rng.computed) if rng.computed else "-"
            print(f"{rng.status.upper():16s} {rng.range_id:28s} expected {list(rng.expected)} "
                  f"computed {computed}")
        n_dev = len(report.deviations)
        print(f"deviations: {n_dev}" + (f" ({', '.join(report.deviations)})" if n_dev else ""))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "cells.csv", "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["cell_id", "table", "case", "label", "expected", "tolerance", "computed", "status", "note"])
            for c in report.cells:
                writer.writerow([c.cell_id, c.table, c.case, c.label,
                                 c.expected if c.expected is not None else "",
                                 c.tolerance, c.computed if c.computed is not None else "",
                                 c.status, c.note])
        (out / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
        for case, curves in report.curves.items():
            write_tidy_csv(out / f"fig3_{case}.csv", curves)
            write_case_svg(
                out / f"fig3_{case}.svg",
                {k: v for k, v in curves.items() if k != "adoption"},
                curves["adoption"],
                f"internet {case}: performance and adoption",
            )
    if args.strict and not report.ok:
        print(f"error: {len(report.deviations)} cell(s) deviate beyond tolerance", file=sys.stderr)
        return 1
    return 0


def _cmd_export_data(args) -> int:
    written = export_bundled(args.out)
    print(f"exported {len(written)} files from {data_dir()} to {args.out}")
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "crossover": _cmd_crossover,
    "knee": _cmd_knee,
    "case": _cmd_case,
    "sweep": _cmd_sweep,
    "reproduce": _cmd_reproduce,
    "export-data": _cmd_export_data,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TechkneeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
