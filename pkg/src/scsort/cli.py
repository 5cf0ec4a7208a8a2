"""Command-line surface: oracle runs, predictions, evaluation, plot data.

Every command that writes an output file writes a JSON manifest next to it
(`<out>.manifest.json`) recording the command line and effective settings;
re-running the manifest's command reproduces the output byte for byte.

Exit codes: 0 success, 1 usage error, 2 infeasible/budget, 3 fit failure.
"""

from __future__ import annotations

import argparse
import json

import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .budgets import Budgets, BudgetExceededError
from .dataset import Dataset, SCRecord, Source
from .modular import modular_sc_m3quicksort, modular_sc_quicksort
from .oracle import sc_exhaustive, sc_hillclimb
from .predictors import NlrConfig, TlrConfig, nlr_predict, tlr_fit, tlr_predict
from .regression import FitError, error_report
from .sorters import Algorithm, MaxStrategy, max_runtime

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_FIT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def parse_range(spec: str, n_for_k: int | None = None) -> list[int]:
    """Parse `lo..hi[:step]`, a comma list, or a single integer.

    The literal `N` is allowed as the upper bound of a K range and means
    K up to the row's N (requires n_for_k).
    """
    spec = spec.strip()
    if "," in spec:
        return [int(tok) for tok in spec.split(",")]
    if ".." in spec:
        lo, rest = spec.split("..", 1)
        step = 1
        if ":" in rest:
            rest, step_s = rest.split(":", 1)
            step = int(step_s)
        if rest == "N":
            if n_for_k is None:
                raise UsageError("`N` upper bound is only valid for K ranges")
            hi = n_for_k
        else:
            hi = int(rest)
        return list(range(int(lo), hi + 1, step))
    if spec == "N":
        if n_for_k is None:
            raise UsageError("`N` is only valid for K ranges")
        return [n_for_k]
    return [int(spec)]


def _k_values(k_spec: str, n: int) -> list[int]:
    return [k for k in parse_range(k_spec, n_for_k=n) if k <= n]


def write_manifest(out_path: Path, args: argparse.Namespace, extras: dict) -> None:
    manifest = {
        "tool": "scsort",
        "version": __version__,
        "command": sys.argv[1:],
        "settings": {k: v for k, v in sorted(vars(args).items()) if k != "func"},
        **extras,
    }
    path = out_path.with_suffix(out_path.suffix + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2, default=str) + "\n")


def _budgets(args) -> Budgets:
    return Budgets(
        enumeration_max_n=args.enum_cap,
        exhaustive_lookups=args.exhaustive_budget,
        hillclimb_group_size=args.group_budget,
    )


def _modular_cell(task):
    alg_value, n, k = task
    alg = Algorithm(alg_value)
    if alg is Algorithm.QUICKSORT:
        return n, k, modular_sc_quicksort(n, k)
    return n, k, modular_sc_m3quicksort(n, k)


def cmd_oracle(args) -> int:
    alg = Algorithm(args.alg)
    budgets = _budgets(args)
    n_values = parse_range(args.n)
    records: list[SCRecord] = []
    skipped: list[str] = []

    if args.mode == "modular":
        if alg not in (Algorithm.QUICKSORT, Algorithm.M3QUICKSORT):
            print(f"error: no modular recurrence for {alg.value}", file=sys.stderr)
            return EXIT_USAGE
        tasks = []
        for n in n_values:
            for k in _k_values(args.k, n):
                tasks.append((alg.value, n, k))
        if not tasks:
            print("error: empty (N, K) grid", file=sys.stderr)
            return EXIT_USAGE
        results = []
        errors = []
        if args.workers > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                for task, outcome in zip(tasks, pool.map(_modular_cell_safe, tasks)):
                    results.append(outcome) if outcome[0] == "ok" else errors.append(outcome)
        else:
            for task in tasks:
                outcome = _modular_cell_safe(task)
                results.append(outcome) if outcome[0] == "ok" else errors.append(outcome)
        for _, n, k, value in results:
            records.append(SCRecord(alg, n, k, value, Source.MODULAR))
        skipped = [msg for _, msg in errors]
    else:
        for n in n_values:
            for k in _k_values(args.k, n):
                try:
                    if args.mode == "exhaustive":
                        records.append(sc_exhaustive(alg, n, k, budgets))
                    else:
                        records.append(sc_hillclimb(alg, n, k, args.restarts, args.seed, budgets))
                except BudgetExceededError as exc:
                    skipped.append(f"(N={n}, K={k}): {exc}")

    for msg in skipped:
        print(f"skipped {msg}", file=sys.stderr)
    if not records:
        print("error: no feasible (N, K) cells", file=sys.stderr)
        return EXIT_INFEASIBLE
    ds = Dataset(records)
    out = Path(args.out)
    ds.write_csv(out)
    write_manifest(out, args, {"rows": len(ds), "skipped": skipped})
    return EXIT_OK


def _modular_cell_safe(task):
    try:
        n, k, value = _modular_cell(task)
        return ("ok", n, k, value)
    except ValueError as exc:
        return ("err", f"(N={task[1]}, K={task[2]}): {exc}")


def cmd_maxruntime(args) -> int:
    alg = Algorithm(args.alg)
    strategy = MaxStrategy(args.strategy)
    budgets = _budgets(args)
    rows = []
    for n in parse_range(args.n):
        try:
            value, witness = max_runtime(alg, n, strategy, args.seed, args.restarts, budgets)
        except BudgetExceededError as exc:
            print(f"error: (N={n}): {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        rows.append((alg.value, n, value, " ".join(map(str, witness))))
    out = Path(args.out)
    with open(out, "w", newline="") as fh:
        fh.write("algorithm,N,max_runtime,witness\n")
        for row in rows:
            fh.write(f"{row[0]},{row[1]},{row[2]},{row[3]}\n")
    write_manifest(out, args, {"rows": len(rows)})
    return EXIT_OK


def cmd_predict(args) -> int:
    alg = Algorithm(args.alg)
    try:
        train = Dataset.read_csv(args.train)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read training data: {exc}", file=sys.stderr)
        return EXIT_USAGE
    targets = parse_range(args.targets) if args.targets else []
    if not targets:
        print("error: no targets", file=sys.stderr)
        return EXIT_USAGE
    diagnostics: list[dict] = []
    try:
        if args.model == "nlr":
            cfg = NlrConfig.for_algorithm(alg, t=args.t, fix_c=args.fix_c, seed=args.seed)
            predicted, diags = nlr_predict(alg, train, targets, cfg)
            diagnostics = [
                {
                    "N": d.n,
                    "converged": d.curve.converged,
                    "iterations": d.curve.iterations,
                    "rss": d.curve.rss,
                    "monotone": d.monotone,
                    "notes": d.notes,
                }
                for d in diags
            ]
            if all(not d.curve.converged for d in diags):
                print("error: no target curve converged", file=sys.stderr)
                return EXIT_FIT
        else:
            cfg = TlrConfig(a=args.tlr_a, b=args.tlr_b)
            model = tlr_fit(train.filter(algorithm=alg), cfg)
            records = []
            for n in targets:
                nks = [(n, k) for k in range(2, n + 1)]
                for (n_i, k_i), v in zip(nks, tlr_predict(model, alg, nks, cfg)):
                    records.append(SCRecord(alg, n_i, k_i, float(v), Source.PREDICTED))
            predicted = Dataset(records)
            diagnostics = [{"coefficients": model.coef.tolist(),
                            "features": list(model.feature_names)}]
    except FitError as exc:
        print(f"error: fit failed: {exc}", file=sys.stderr)
        return EXIT_FIT
    out = Path(args.out)
    predicted.write_csv(out)
    write_manifest(out, args, {"rows": len(predicted), "diagnostics": diagnostics})
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        pred = Dataset.read_csv(args.pred)
        truth = Dataset.read_csv(args.truth)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    truth_by_key = {(r.algorithm, r.n, r.k): r.value for r in truth}
    pairs = [
        (r.n, r.value, truth_by_key[(r.algorithm, r.n, r.k)])
        for r in pred
        if (r.algorithm, r.n, r.k) in truth_by_key
    ]
    if not pairs:
        print("error: empty join", file=sys.stderr)
        return EXIT_USAGE
    print("scope,n_pairs,MAE,RMSE,MAPE_percent")
    overall = error_report([p for _, p, _ in pairs], [t for _, _, t in pairs])
    print(f"overall,{overall.n},{overall.mae:.4f},{overall.rmse:.4f},{overall.mape_percent:.4f}")
    for n in sorted({n for n, _, _ in pairs}):
        sub = [(p, t) for n_i, p, t in pairs if n_i == n]
        rep = error_report([p for p, _ in sub], [t for _, t in sub])
        print(f"N={n},{rep.n},{rep.mae:.4f},{rep.rmse:.4f},{rep.mape_percent:.4f}")
    return EXIT_OK


_SOURCE_PRIORITY = [Source.EMPIRICAL_EXACT, Source.EMPIRICAL_HILLCLIMB,
                    Source.MODULAR, Source.PREDICTED]


def cmd_plotdata(args) -> int:
    try:
        ds = Dataset.read_csv(args.data)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    # Deduplicate (N, K) cells across sources by oracle preference.
    best: dict[tuple, SCRecord] = {}
    for r in ds:
        cell = (r.algorithm, r.n, r.k)
        if cell not in best or (_SOURCE_PRIORITY.index(r.source)
                                < _SOURCE_PRIORITY.index(best[cell].source)):
            best[cell] = r
    records = list(best.values())
    if args.alg:
        records = [r for r in records if r.algorithm is Algorithm(args.alg)]
    if args.slice == "fixn":
        rows = sorted((r.k, r.value) for r in records if r.n == args.n)
        header = "K,sc"
    elif args.slice == "fixk":
        rows = sorted((r.n, r.value) for r in records if r.k == args.k)
        header = "N,sc"
    else:
        rows = sorted((r.n, r.k, r.value) for r in records)
        header = "N,K,sc"
    if not rows:
        print("error: empty slice", file=sys.stderr)
        return EXIT_INFEASIBLE
    out = Path(args.out)
    with open(out, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.6f}" if isinstance(v, float) else str(v) for v in row) + "\n")
    write_manifest(out, args, {"rows": len(rows)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scsort",
        description="Smoothed complexity of sorting algorithms: oracles and predictors.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=20)
        p.add_argument("--workers", type=int, default=1,
                       help="internal parallelism; results are worker-count invariant")
        p.add_argument("--enum-cap", type=int, default=10,
                       help="max N for N!-sized enumeration")
        p.add_argument("--exhaustive-budget", type=float, default=2e9)
        p.add_argument("--group-budget", type=float, default=1e7)

    p = sub.add_parser("oracle", help="compute SC ground truth")
    p.add_argument("--alg", required=True, choices=[a.value for a in Algorithm])
    p.add_argument("--mode", required=True, choices=["exhaustive", "hillclimb", "modular"])
    p.add_argument("--n", required=True, help="N range, e.g. 10..20:5")
    p.add_argument("--k", default="2..N", help="K range, e.g. 2..N (default)")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("maxruntime", help="worst-case comparison counts")
    p.add_argument("--alg", required=True, choices=[a.value for a in Algorithm])
    p.add_argument("--n", required=True)
    p.add_argument("--strategy", default="closed_form",
                   choices=[s.value for s in MaxStrategy])
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_maxruntime)

    p = sub.add_parser("predict", help="predict SC with TLR or NLR")
    p.add_argument("--model", required=True, choices=["tlr", "nlr"])
    p.add_argument("--alg", required=True, choices=[a.value for a in Algorithm])
    p.add_argument("--train", required=True, help="training dataset CSV")
    p.add_argument("--targets", required=True, help="target N values, e.g. 40,45,50")
    p.add_argument("--t", type=int, default=None, help="NLR anchor-model count")
    p.add_argument("--fix-c", action="store_true", help="3-parameter curve variant")
    p.add_argument("--tlr-a", type=float, default=2.2)
    p.add_argument("--tlr-b", type=float, default=-0.7)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="MAE/RMSE/MAPE of predictions vs truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("plotdata", help="long-format slices for external plotting")
    p.add_argument("--data", required=True)
    p.add_argument("--slice", required=True, choices=["fixn", "fixk", "surface"])
    p.add_argument("--alg", default=None, choices=[a.value for a in Algorithm])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plotdata)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
