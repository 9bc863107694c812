"""Benchmark command line: seeded solver runs, work comparisons, validation.

Subcommands
-----------
run
    Load or synthesize a dataset, draw one seeded starting membership
    matrix, run every selected solver from that same start, and write one
    trace CSV per solver plus a ``summary.json`` that embeds the fully
    resolved configuration.
compare
    ``run`` plus a work comparison: for each solver, the cumulative
    membership-update count needed to get within 1e-6 (relative) of the
    best final objective, wall time and outer iterations, with the
    fewest-updates solver(s) flagged.
validate
    Execute the brute-force verification battery and report one line per
    check.

Options may come from a flat ``key=value`` config file (``--config``);
explicit command-line flags override file values.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .dataset import DataMatrix, SyntheticSpec, load_csv, make_blobs, standardize
from .membership import init_random
from .oracle import run_suite
from .solvers import SOLVERS, SolverConfig, SolverResult

TRACE_HEADER = "iter,objective,elapsed_ns,membership_updates,inner_iters"
LANDMARK_RTOL = 1e-6

# Desk-scale synthetic presets; the seed comes from the solver config so a
# manifest is reproducible from --seed alone.
SYNTHETIC_PRESETS = {
    "blobs-small": dict(blob_count=3, points_per_blob=20, dim=2,
                        blob_stddev=0.5, blob_center_scale=5.0),
    "blobs-large": dict(blob_count=5, points_per_blob=200, dim=10,
                        blob_stddev=1.0, blob_center_scale=10.0),
}


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce one benchmark run."""

    cfg: SolverConfig
    algorithms: tuple
    output_dir: str
    csv_path: Optional[str] = None
    drop_columns: tuple = ()
    synthetic: Optional[SyntheticSpec] = None

    def __post_init__(self):
        if not self.algorithms:
            raise ValueError("select at least one algorithm")
        unknown = [a for a in self.algorithms if a not in SOLVERS]
        if unknown:
            raise ValueError(f"unknown algorithm(s) {unknown}; choose from {sorted(SOLVERS)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ValueError("duplicate algorithm selected")
        if (self.csv_path is None) == (self.synthetic is None):
            raise ValueError("specify exactly one data source (CSV path or synthetic spec)")

    def dataset_descriptor(self) -> dict:
        if self.csv_path is not None:
            return {"csv_path": self.csv_path,
                    "drop_columns": sorted(self.drop_columns)}
        return {"synthetic": dataclasses.asdict(self.synthetic)}


def iris_manifest(csv_path, output_dir, algorithms=("irw", "mm"),
                  seed: int = 42) -> RunManifest:
    """Built-in manifest for the Iris benchmark; the CSV path is yours.

    Assumes the usual layout of 4 numeric features plus a trailing label
    column, 3 clusters, fuzziness 2.
    """
    return RunManifest(cfg=SolverConfig(c=3, r=2.0, seed=seed),
                       algorithms=tuple(algorithms), output_dir=str(output_dir),
                       csv_path=str(csv_path), drop_columns=(4,))


def _csv_has_header(path) -> bool:
    """A file whose first row contains any non-numeric cell has a header."""
    with open(path, newline="") as fh:
        first = fh.readline()
    for cell in first.strip().split(","):
        try:
            float(cell)
        except ValueError:
            return True
    return False


def load_manifest_dataset(manifest: RunManifest) -> DataMatrix:
    """Materialize the manifest's dataset, standardized if configured."""
    if manifest.csv_path is not None:
        data = load_csv(manifest.csv_path, manifest.drop_columns,
                        has_header=_csv_has_header(manifest.csv_path))
    else:
        data = make_blobs(manifest.synthetic)
    return standardize(data) if manifest.cfg.standardize else data


def execute(manifest: RunManifest) -> dict:
    """Run every selected solver from one shared starting matrix."""
    data = load_manifest_dataset(manifest)
    F0 = init_random(data.n, manifest.cfg.c, manifest.cfg.seed)
    return {name: SOLVERS[name](data, F0, manifest.cfg)
            for name in manifest.algorithms}


def _atomic_write(path, text):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_trace_csv(result: SolverResult, path) -> None:
    lines = [TRACE_HEADER]
    for rec in result.trace.records:
        lines.append(f"{rec.outer_iter},{repr(rec.objective)},{rec.elapsed_ns},"
                     f"{rec.membership_updates},{rec.inner_iters}")
    _atomic_write(path, "\n".join(lines) + "\n")


def _summary_payload(manifest: RunManifest, results: dict) -> dict:
    payload = {"config": {**dataclasses.asdict(manifest.cfg),
                          "algorithms": list(manifest.algorithms),
                          "output_dir": manifest.output_dir,
                          "dataset": manifest.dataset_descriptor()}}
    for name, result in results.items():
        last = result.trace.records[-1] if result.trace.records else None
        payload[name] = {
            "final_objective": result.objective_final,
            "termination": result.termination,
            "total_membership_updates": result.trace.total_membership_updates(),
            "outer_iters": last.outer_iter if last else 0,
            "wall_time_ns": last.elapsed_ns if last else 0,
        }
    return payload


def cmd_run(manifest: RunManifest):
    """Execute the manifest and write trace CSVs plus summary.json.

    Returns ``(exit_status, results)``; nonzero status only for dataset
    load failures (degenerate terminations are recorded in the summary).
    """
    try:
        results = execute(manifest)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    os.makedirs(manifest.output_dir, exist_ok=True)
    for name, result in results.items():
        write_trace_csv(result, os.path.join(manifest.output_dir, f"{name}_trace.csv"))
    _atomic_write(os.path.join(manifest.output_dir, "summary.json"),
                  json.dumps(_summary_payload(manifest, results), indent=2) + "\n")
    return 0, results


def updates_to_reach(result: SolverResult, target: float,
                     rtol: float = LANDMARK_RTOL) -> Optional[int]:
    """Membership updates spent until the trace first reaches the target."""
    threshold = target + rtol * (1.0 + abs(target))
    for rec in result.trace.records:
        if rec.objective <= threshold:
            return rec.membership_updates
    return None


def cmd_compare(manifest: RunManifest):
    """Run the manifest and rank solvers by work to the common optimum."""
    if len(manifest.algorithms) < 2:
        print("error: compare needs at least two algorithms", file=sys.stderr)
        return 2, None
    status, results = cmd_run(manifest)
    if status != 0:
        return status, None
    finals = [res.objective_final for res in results.values()
              if res.trace.records and not res.objective_final != res.objective_final]
    if not finals:
        print("error: no solver produced a usable trace", file=sys.stderr)
        return 1, None
    best = min(finals)
    per_algorithm = {}
    for name, result in results.items():
        last = result.trace.records[-1] if result.trace.records else None
        per_algorithm[name] = {
            "final_objective": result.objective_final,
            "termination": result.termination,
            "outer_iters": last.outer_iter if last else 0,
            "wall_time_ns": last.elapsed_ns if last else 0,
            "updates_to_best": updates_to_reach(result, best),
        }
    reached = {name: row["updates_to_best"] for name, row in per_algorithm.items()
               if row["updates_to_best"] is not None}
    fewest = min(reached.values())
    winners = sorted(name for name, count in reached.items() if count == fewest)
    report = {"best_objective": best, "per_algorithm": per_algorithm,
              "fewest_updates": winners}
    return 0, report


def _print_compare_report(report: dict) -> None:
    print(f"best final objective: {report['best_objective']:.12g}")
    print(f"{'algorithm':>10} {'final objective':>18} {'outer':>6} "
          f"{'updates_to_best':>16} {'wall_ms':>10}  termination")
    for name, row in report["per_algorithm"].items():
        updates = row["updates_to_best"]
        print(f"{name:>10} {row['final_objective']:>18.10g} {row['outer_iters']:>6} "
              f"{str(updates) if updates is not None else 'not reached':>16} "
              f"{row['wall_time_ns'] / 1e6:>10.2f}  {row['termination']}")
    winners = report["fewest_updates"]
    if len(winners) == 1:
        print(f"fewest membership updates: {winners[0]}")
    else:
        print(f"fewest membership updates: tie between {', '.join(winners)}")


def cmd_validate(scale: str = "quick", seed: int = 0) -> int:
    """Print one line per verification check; exit 0 iff all pass."""
    reports = run_suite(scale, seed)
    for report in reports:
        print(report)
    return 0 if all(r.passed for r in reports) else 1


def _parse_config_file(path) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values

# Option name -> (config file key, parser). Defaults live in _OPTION_DEFAULTS
# so that file values can sit between built-in defaults and explicit flags.
_BOOLEANS = {"true": True, "1": True, "yes": True, "on": True,
             "false": False, "0": False, "no": False, "off": False}


def _parse_bool(text):
    try:
        return _BOOLEANS[text.lower()]
    except KeyError:
        raise ValueError(f"expected a boolean, got {text!r}") from None


def _parse_int_list(text):
    return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")


def _parse_str_list(text):
    return tuple(tok.strip() for tok in text.split(",") if tok.strip() != "")


_OPTION_PARSERS = {
    "data": str, "drop_cols": _parse_int_list, "synthetic": str,
    "c": int, "r": float, "seed": int, "algos": _parse_str_list,
    "outer_tol": float, "inner_tol": float, "max_outer": int,
    "max_inner": int, "standardize": _parse_bool, "out": str,
}

_OPTION_DEFAULTS = {
    "data": None, "drop_cols": (), "synthetic": None,
    "c": 3, "r": 2.0, "seed": 0, "algos": ("classic", "irw", "mm"),
    "outer_tol": 1e-8, "inner_tol": 1e-8, "max_outer": 500,
    "max_inner": 100, "standardize": True, "out": "runs",
}


def _resolve_options(args: argparse.Namespace) -> dict:
    resolved = dict(_OPTION_DEFAULTS)
    if args.config:
        for key, text in _parse_config_file(args.config).items():
            if key not in _OPTION_PARSERS:
                raise ValueError(f"unknown config key {key!r}")
            resolved[key] = _OPTION_PARSERS[key](text)
    overrides = {
        "data": args.data, "drop_cols": args.drop_cols, "synthetic": args.synthetic,
        "c": args.c, "r": args.r, "seed": args.seed, "algos": args.algos,
        "outer_tol": args.outer_tol, "inner_tol": args.inner_tol,
        "max_outer": args.max_outer, "max_inner": args.max_inner,
        "standardize": False if args.no_standardize else None, "out": args.out,
    }
    for key, value in overrides.items():
        if value is not None:
            resolved[key] = value
    return resolved


def manifest_from_options(options: dict) -> RunManifest:
    cfg = SolverConfig(c=options["c"], r=options["r"],
                       outer_tol=options["outer_tol"], inner_tol=options["inner_tol"],
                       max_outer_iters=options["max_outer"],
                       max_inner_iters=options["max_inner"], seed=options["seed"],
                       standardize=options["standardize"])
    synthetic = None
    if options["synthetic"] is not None:
        preset = SYNTHETIC_PRESETS.get(options["synthetic"])
        if preset is None:
            raise ValueError(f"unknown synthetic preset {options['synthetic']!r}; "
                             f"choose from {sorted(SYNTHETIC_PRESETS)}")
        synthetic = SyntheticSpec(seed=cfg.seed, **preset)
    return RunManifest(cfg=cfg, algorithms=tuple(options["algos"]),
                       output_dir=options["out"], csv_path=options["data"],
                       drop_columns=tuple(options["drop_cols"]), synthetic=synthetic)


def _add_manifest_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file; flags override it")
    parser.add_argument("--data", help="CSV dataset path (header auto-detected)")
    parser.add_argument("--drop-cols", dest="drop_cols", type=_parse_int_list,
                        help="comma-separated 0-based column indices to drop")
    parser.add_argument("--synthetic", choices=sorted(SYNTHETIC_PRESETS),
                        help="synthetic dataset preset")
    parser.add_argument("--c", type=int, help="cluster count (default 3)")
    parser.add_argument("--r", type=float, help="fuzziness exponent (default 2)")
    parser.add_argument("--seed", type=int, help="seed for the shared start (default 0)")
    parser.add_argument("--algos", type=_parse_str_list,
                        help="comma-separated subset of classic,irw,mm")
    parser.add_argument("--outer-tol", dest="outer_tol", type=float)
    parser.add_argument("--inner-tol", dest="inner_tol", type=float)
    parser.add_argument("--max-outer", dest="max_outer", type=int)
    parser.add_argument("--max-inner", dest="max_inner", type=int)
    parser.add_argument("--no-standardize", action="store_true",
                        help="skip feature standardization")
    parser.add_argument("--out", help="output directory (default runs/)")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fcmm", description="Fuzzy c-means solver benchmark harness.")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run solvers from one shared start")
    _add_manifest_flags(run_p)
    cmp_p = sub.add_parser("compare", help="run and rank solvers by work")
    _add_manifest_flags(cmp_p)
    val_p = sub.add_parser("validate", help="run the verification battery")
    val_p.add_argument("--scale", choices=("quick", "full"), default="quick")
    val_p.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if args.command == "validate":
        return cmd_validate(args.scale, args.seed)
    try:
        manifest = manifest_from_options(_resolve_options(args))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "run":
        status, results = cmd_run(manifest)
        if status == 0:
            for name, result in results.items():
                print(f"{name}: objective {result.objective_final:.12g} "
                      f"({result.termination}, "
                      f"{result.trace.total_membership_updates()} updates)")
            print(f"wrote traces and summary.json to {manifest.output_dir}")
        return status
    status, report = cmd_compare(manifest)
    if status == 0:
        _print_compare_report(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
