"""Command line: simulate, search, report, replicate, traces."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from pathlib import Path

from . import csvio, plotting
from .agent import run_lifetime
from .config import ENVIRONMENT_TYPES, ConfigError, RunConfigDocument, document_from_config, load_document
from .experiment import (
    BatchResult,
    best_per_subcategory,
    enumerate_configs,
    filter_configs,
    pick_best,
    run_batch,
    run_traces,
    standard_error_units,
)
from .gridworld import EnvironmentConfig
from .pain_model import PAIN_CONDITIONS, get_params
from .published import TABLES, find
from .search import run_search
from .stats import paired_t_test_one_sided
from .subjective_reward import RewardCategory, parse_category

log = logging.getLogger("introspective_rl")


def _parse_table_ref(ref: str) -> tuple[str, RewardCategory, str]:
    try:
        table, cat, pain = ref.split(":")
    except ValueError:
        raise ConfigError(f"--from-table expects TABLE:CATEGORY:PAIN, got {ref!r}") from None
    if table not in TABLES:
        raise ConfigError(f"unknown table {table!r}; expected one of {sorted(TABLES)}")
    return table, parse_category(cat), pain


def _document(args) -> RunConfigDocument:
    if getattr(args, "from_table", None):
        table, cat, pain = _parse_table_ref(args.from_table)
        doc = document_from_config(find(table, cat, pain).config, table)
        if args.config:
            doc.execution = load_document(args.config).execution
        return doc
    return load_document(args.config)


def _environment(args, doc: RunConfigDocument) -> EnvironmentConfig:
    return doc.environment_config(getattr(args, "env", None))


def _n(args, doc: RunConfigDocument) -> int:
    n = args.n if args.n is not None else doc.execution.n
    if n < 1:
        raise ConfigError("--n must be at least 1")
    return n


def _seed(args, doc: RunConfigDocument) -> int:
    return args.seed if args.seed is not None else doc.execution.seed_base


def _out(args, doc: RunConfigDocument, default: str) -> Path:
    return Path(args.out or doc.execution.output or default)


def cmd_simulate(args) -> int:
    doc = _document(args)
    env_cfg = _environment(args, doc)
    cfg = doc.reward_function()
    seed = _seed(args, doc)
    out = _out(args, doc, "trace.csv")
    history = run_lifetime(env_cfg, cfg.agent, cfg.weights, get_params(cfg.pain), seed)
    csvio.write_trace(out, history)
    final = history.records[-1]
    print(f"COR={history.cor} cum_f_w={float(final.cumulative_well_being)!r} steps={len(history)} trace={out}")
    return 0


def cmd_search(args) -> int:
    doc = load_document(args.config)
    env_cfg = _environment(args, doc)
    space = doc.search_space()
    categories = [parse_category(c) for c in args.filter_category] or None
    for pain in args.filter_pain:
        if pain not in PAIN_CONDITIONS:
            raise ConfigError(f"--filter-pain must be one of {PAIN_CONDITIONS}, got {pain!r}")
    configs = filter_configs(enumerate_configs(space), categories, args.filter_pain or None)
    n = _n(args, doc)
    seed_base = _seed(args, doc)
    workers = args.workers if args.workers is not None else doc.execution.workers
    out = _out(args, doc, "results.csv")
    results = run_search(configs, env_cfg, n, seed_base, out, workers)
    print(f"{len(results)} configs in {out}")
    return 0


def _fill_cors(results: list[BatchResult], env_cfg: EnvironmentConfig) -> list[BatchResult]:
    """Rerun the given results to recover their per-trial CORs."""
    filled = []
    for res in results:
        rerun = run_batch(res.config, env_cfg, res.n, res.seed_base)
        if abs(rerun.mean - res.mean) > 1e-9:
            raise ConfigError(
                f"rerun of {res.config} gave mean {rerun.mean}, file says {res.mean}; "
                "wrong environment for these results?"
            )
        filled.append(rerun)
    return filled


def cmd_report(args) -> int:
    results_path = Path(args.results)
    results = csvio.read_results(results_path)
    if not results:
        raise ConfigError(f"{results_path} holds no results")
    meta = csvio.read_metadata(results_path)
    if args.env is not None:
        doc = RunConfigDocument(environment={"type": args.env})
        env_cfg = doc.environment_config()
    elif meta is not None:
        env_cfg = meta["environment"]
    else:
        raise ConfigError(f"no metadata next to {results_path}; pass --env")

    winners = _fill_cors(list(pick_best(results).values()), env_cfg)
    rows = best_per_subcategory(winners)
    out = Path(args.out) if args.out else results_path.with_name(results_path.stem + "_report.csv")
    csvio.write_report(out, rows)
    for row in rows:
        if row.baseline_missing:
            print(f"warning: no no-pain baseline for {row.category.value}; {row.pain} row has no test",
                  file=sys.stderr)

    stem = out.with_suffix("")
    plotting.plot_report(rows, Path(f"{stem}.png"), title=f"Best mean COR ({len(results)} configs)")
    plotting.plot_distribution(results, RewardCategory.OBJECTIVE_EXPECT, Path(f"{stem}_distribution.png"))
    plotting.plot_alpha_sweep(results, RewardCategory.OBJECTIVE_ONLY, Path(f"{stem}_alpha.png"))
    for row in rows:
        star = "*" if row.significant else ""
        print(f"{row.category.value:17s} {row.pain:8s} mean={row.result.mean:8.1f}{star:1s} sd={row.result.sd:6.1f}")
    print(f"report written to {out}")
    return 0


REPLICATE_COLUMNS = csvio.RESULTS_COLUMNS[:9] + (
    "n", "published_mean", "published_sd", "measured_mean", "measured_sd", "deviation_se",
    "published_star", "t_stat", "p_value", "significant",
)


def cmd_replicate(args) -> int:
    table = args.table
    env_cfg = RunConfigDocument(environment={"type": table}).environment_config()
    n = args.n if args.n is not None else 300
    seed_base = args.seed if args.seed is not None else 0
    categories = {parse_category(c) for c in args.filter_category}
    pains = set(args.filter_pain)
    rows = [
        r for r in TABLES[table]
        if (not categories or r.category in categories) and (not pains or r.pain in pains)
    ]
    measured: dict[tuple, tuple[BatchResult, float]] = {}
    for prow in rows:
        start = time.perf_counter()
        measured[(prow.category, prow.pain)] = (run_batch(prow.config, env_cfg, n, seed_base), time.perf_counter() - start)

    out = Path(args.out or f"replicate_{table}.csv")
    labels, m_stats, p_stats = [], ([], []), ([], [])
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPLICATE_COLUMNS)
        print(f"{'category':17s} {'pain':8s} {'published':>16s} {'measured':>16s} {'dev/SE':>7s}  p")
        for prow in rows:
            res, seconds = measured[(prow.category, prow.pain)]
            test = None
            baseline = measured.get((prow.category, "none"))
            if prow.pain != "none" and baseline is not None:
                try:
                    test = paired_t_test_one_sided(res.cors, baseline[0].cors)
                except ValueError:
                    test = None
            dev = standard_error_units(res.mean, prow.mean, prow.sd, n)
            significant = test is not None and test.p_value < 0.05
            w.writerow(csvio.result_row(res)[:9] + [
                str(n), csvio.fmt(prow.mean), csvio.fmt(prow.sd), csvio.fmt(res.mean), csvio.fmt(res.sd),
                csvio.fmt(dev), csvio.fmt(prow.starred),
                csvio.fmt(test.t_statistic) if test else csvio.NA,
                csvio.fmt(test.p_value) if test else csvio.NA,
                csvio.fmt(significant) if prow.pain != "none" else csvio.NA,
            ])
            p_text = f"{test.p_value:.2e}" if test else "-"
            print(
                f"{prow.category.value:17s} {prow.pain:8s} "
                f"{prow.mean:7.1f} ({prow.sd:5.1f}) {res.mean:7.1f} ({res.sd:5.1f}) {dev:7.2f}  {p_text}  [{seconds:.1f}s]"
            )
            labels.append(f"{plotting.CATEGORY_LABELS[prow.category]} {prow.pain}")
            m_stats[0].append(res.mean)
            m_stats[1].append(res.sd)
            p_stats[0].append(prow.mean)
            p_stats[1].append(prow.sd)
    if rows:
        plotting.plot_replication(labels, m_stats, p_stats, out.with_suffix(".png"), title=table.replace("_", "-"))
    print(f"replication written to {out}")
    return 0


def cmd_traces(args) -> int:
    doc = _document(args)
    env_cfg = _environment(args, doc)
    cfg = doc.reward_function()
    n = _n(args, doc)
    out = _out(args, doc, "traces.csv")
    agg = run_traces(cfg, env_cfg, n, _seed(args, doc))
    csvio.write_aggregate(out, agg)
    plotting.plot_traces(agg, out.with_suffix(".png"), title=f"{cfg.category.value}, {cfg.pain} pain (n={n})")
    print(f"final mean cum_f_w={float(agg.mean_cum_fw[-1])!r} rows={len(agg.t)} traces={out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="introspective-rl", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, config=True, env=True, n=True, workers=False, filters=False, table_ref=False):
        if config:
            p.add_argument("--config", help="JSON run-config document")
        if table_ref:
            p.add_argument("--from-table", metavar="TABLE:CATEGORY:PAIN",
                           help="use a published best config, e.g. non_stationary:ObjectiveExpect:chronic")
        if env:
            p.add_argument("--env", choices=ENVIRONMENT_TYPES, help="override the environment type")
        p.add_argument("--seed", type=int, help="seed (simulate) or seed base (batches)")
        if n:
            p.add_argument("--n", type=int, help="trials per config")
        if workers:
            p.add_argument("--workers", type=int, help="worker processes")
        if filters:
            p.add_argument("--filter-category", action="append", default=[], help="repeatable")
            p.add_argument("--filter-pain", action="append", default=[], help="repeatable")
        p.add_argument("--out", help="output path")

    p = sub.add_parser("simulate", help="run one lifetime and write its per-step trace")
    common(p, n=False, table_ref=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="grid search over reward functions (resumable)")
    common(p, workers=True, filters=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", help="best config per subcategory with paired t-tests and figures")
    p.add_argument("results", help="results CSV written by search")
    p.add_argument("--env", choices=ENVIRONMENT_TYPES, help="environment, if no metadata file exists")
    p.add_argument("--out", help="report CSV path")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("replicate", help="rerun the published best configs and compare")
    p.add_argument("table", choices=sorted(TABLES))
    common(p, config=False, env=False, filters=True)
    p.set_defaults(func=cmd_replicate)

    p = sub.add_parser("traces", help="mean/SD time series over n lifetimes")
    common(p, table_ref=True)
    p.set_defaults(func=cmd_traces)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, csvio.CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: not found: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
