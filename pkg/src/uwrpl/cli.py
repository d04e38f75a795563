"""Command line front end: single runs, seed sweeps, validation, traces.

Exit codes: 0 everything ran and validated, 1 a run failed or produced an
invalid report, 2 the configuration was unusable.
"""

import argparse
import csv
import dataclasses
import io
import json
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .engine import parse_plan, parse_scenario, run_scenario
from .metrics import serialize_trace, validate_report

AGGREGATE_FIELDS = (
    "pdr_percent", "altn_s", "mean_e2e_delay_s", "delay_jitter_s",
    "convergence_time_s", "first_death_s", "median_death_s",
    "alive_node_count", "control_overhead_packets",
)


def _atomic_write(path: Path, text: str):
    """Write-then-rename so readers never see a half-written file."""
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _run_payload(label, scenario, report) -> str:
    body = {
        "label": label,
        "seed": scenario.seed,
        "scenario": dataclasses.asdict(scenario),
        "report": report.to_dict(),
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def _sweep_point(packed):
    """Worker: run one (label, scenario) point; never raises."""
    label, scenario = packed
    try:
        report, _ = run_scenario(scenario)
    except Exception as exc:  # preserved in the failure manifest
        return label, scenario.seed, None, f"{type(exc).__name__}: {exc}"
    problems = validate_report(
        report, node_count=scenario.node_count,
        predetermined_lifetime_s=scenario.predetermined_lifetime_s)
    return label, scenario.seed, report, "; ".join(problems) if problems else None


def _aggregate_rows(results):
    """Group per-run reports by sweep label into mean/std rows."""
    groups = {}
    for label, scenario, report in results:
        groups.setdefault(label, []).append((scenario, report))
    rows = []
    for label in sorted(groups):
        runs = groups[label]
        row = {"label": label, "runs": len(runs)}
        for name in AGGREGATE_FIELDS:
            values = []
            for scenario, report in runs:
                v = getattr(report, name)
                if name == "convergence_time_s" and v is None:
                    # censor never-converged runs at the horizon so the
                    # average stays comparable across sweep points
                    v = scenario.sim_duration_s
                if v is not None:
                    values.append(float(v))
            if values:
                row[f"{name}_mean"] = statistics.fmean(values)
                row[f"{name}_std"] = statistics.stdev(values) if len(values) > 1 else 0.0
            else:
                row[f"{name}_mean"] = None
                row[f"{name}_std"] = None
        rows.append(row)
    return rows


def _write_aggregate_csv(path: Path, rows):
    header = ["label", "runs"]
    for name in AGGREGATE_FIELDS:
        header += [f"{name}_mean", f"{name}_std"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([row["label"], row["runs"]]
                        + [_fmt(row[h]) for h in header[2:]])
    _atomic_write(path, buf.getvalue())


def _load_scenario(path: str, seed):
    scenario = parse_scenario(path)
    if seed is not None:
        scenario = dataclasses.replace(scenario, seed=seed)
    return scenario


def cmd_run(args) -> int:
    try:
        scenario = _load_scenario(args.scenario, args.seed)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report, _ = run_scenario(scenario)
    problems = validate_report(report, node_count=scenario.node_count,
                               predetermined_lifetime_s=scenario.predetermined_lifetime_s)
    label = Path(args.scenario).stem
    payload = _run_payload(label, scenario, report)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        target = out_dir / f"{label}-seed{scenario.seed}.json"
        _atomic_write(target, payload)
        print(target)
    else:
        sys.stdout.write(payload)
    if problems:
        for p in problems:
            print(f"invalid report: {p}", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    try:
        plan = parse_plan(args.plan)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    points = list(plan.points())
    if args.jobs == 1:
        outcomes = [_sweep_point(p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_sweep_point, points))

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ok, failures = [], []
    for (label, scenario), (_, seed, report, problem) in zip(points, outcomes):
        if report is not None:
            target = out_dir / f"{label}-seed{seed}.json"
            _atomic_write(target, _run_payload(label, scenario, report))
        if problem is None:
            ok.append((label, scenario, report))
        else:
            failures.append({"label": label, "seed": seed, "error": problem})

    _write_aggregate_csv(out_dir / "aggregate.csv", _aggregate_rows(ok))
    if failures:
        manifest = json.dumps({"failures": failures}, indent=2, sort_keys=True) + "\n"
        _atomic_write(out_dir / "failures.json", manifest)
        print(f"{len(failures)} of {len(points)} runs failed; "
              f"see {out_dir / 'failures.json'}", file=sys.stderr)
        return 1
    print(f"wrote {len(ok)} runs and {len(_aggregate_rows(ok))} aggregate rows "
          f"to {out_dir}")
    return 0


def cmd_validate(args) -> int:
    try:
        scenario = _load_scenario(args.scenario, None)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"ok: {args.scenario} ({scenario.node_count} nodes, "
          f"{scenario.mode}, seed {scenario.seed})")
    return 0


def cmd_trace(args) -> int:
    try:
        scenario = _load_scenario(args.scenario, args.seed)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _, trace = run_scenario(scenario)
    text = serialize_trace(trace)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        target = out_dir / f"{Path(args.scenario).stem}-seed{scenario.seed}.trace"
        _atomic_write(target, text)
        print(target)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uwrpl",
        description="Underwater acoustic RPL routing simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="simulate one scenario file")
    run_p.add_argument("scenario")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
    run_p.add_argument("--out", default=None,
                       help="directory for the report JSON (default: stdout)")
    run_p.set_defaults(func=cmd_run)

    sweep_p = sub.add_parser("sweep", help="run a plan's sweep points x seeds")
    sweep_p.add_argument("plan")
    sweep_p.add_argument("--out", default="results",
                         help="output directory (default: results)")
    sweep_p.add_argument("--jobs", type=int, default=1,
                         help="parallel worker processes")
    sweep_p.set_defaults(func=cmd_sweep)

    val_p = sub.add_parser("validate", help="check a scenario file and exit")
    val_p.add_argument("scenario")
    val_p.set_defaults(func=cmd_validate)

    trace_p = sub.add_parser("trace", help="emit the full event trace")
    trace_p.add_argument("scenario")
    trace_p.add_argument("--seed", type=int, default=None,
                         help="override the scenario seed")
    trace_p.add_argument("--out", default=None,
                         help="directory for the trace file (default: stdout)")
    trace_p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
