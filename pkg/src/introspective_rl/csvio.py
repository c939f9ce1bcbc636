"""CSV schemas for traces, grid-search results and reports.

All files use ``,`` separators, ``.`` decimals and LF line endings.  Floats
are written with ``repr`` so values survive a round trip unchanged.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .agent import LifetimeHistory
from .experiment import BatchResult, ReportRow, RewardFunctionConfig, TraceAggregate
from .gridworld import EnvironmentConfig
from .subjective_reward import RewardWeights

TRACE_COLUMNS = (
    "t", "state_col", "state_row", "action", "next_col", "next_row",
    "objective", "f_h", "observation", "p_pain", "subjective_pain", "f_w",
    "cum_objective", "cum_f_w",
)
RESULTS_COLUMNS = (
    "category", "pain", "w1", "w2", "w3", "w4", "rho", "epsilon", "alpha",
    "n", "mean_cor", "sd_cor", "seed_base",
)
REPORT_COLUMNS = RESULTS_COLUMNS + ("t_stat", "p_value", "significant")
AGGREGATE_COLUMNS = TraceAggregate.COLUMNS

NA = "NA"


class CheckpointError(RuntimeError):
    """A results file cannot be trusted for resuming."""


def fmt(x) -> str:
    if x is None:
        return NA
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        if math.isnan(x):
            return NA
        return repr(float(x))
    return str(x)


def _writer(handle):
    return csv.writer(handle, lineterminator="\n")


def write_trace(path: Path, history: LifetimeHistory) -> None:
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(TRACE_COLUMNS)
        for r in history.records:
            w.writerow([
                r.t, r.state.col, r.state.row, r.action.name, r.next_state.col, r.next_state.row,
                fmt(r.objective_reward), fmt(r.happiness),
                r.observation.name.lower() if r.observation is not None else NA,
                fmt(r.p_pain), fmt(r.subjective_pain), fmt(r.well_being),
                fmt(r.cumulative_objective), fmt(r.cumulative_well_being),
            ])


def write_aggregate(path: Path, agg: TraceAggregate) -> None:
    cols = agg.columns()
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(AGGREGATE_COLUMNS)
        for i in range(len(agg.t)):
            w.writerow([int(cols["t"][i])] + [fmt(float(cols[c][i])) for c in AGGREGATE_COLUMNS[1:]])


def result_row(res: BatchResult) -> list[str]:
    cfg = res.config
    w = cfg.weights
    return [
        cfg.category.value, cfg.pain,
        fmt(w.w1), fmt(w.w2), fmt(w.w3), fmt(w.w4), fmt(w.rho),
        fmt(cfg.epsilon), fmt(cfg.alpha),
        str(res.n), fmt(res.mean), fmt(res.sd), str(res.seed_base),
    ]


def parse_result_row(row: dict[str, str]) -> BatchResult:
    rho = None if row["rho"] == NA else float(row["rho"])
    weights = RewardWeights(
        w1=float(row["w1"]), w2=float(row["w2"]), w3=float(row["w3"]), w4=float(row["w4"]), rho=rho
    )
    cfg = RewardFunctionConfig(weights, row["pain"], float(row["alpha"]), float(row["epsilon"]))
    if cfg.category.value != row["category"]:
        raise ValueError(f"category {row['category']!r} does not match the weights")
    return BatchResult(
        config=cfg,
        cors=None,
        mean=float(row["mean_cor"]),
        sd=float(row["sd_cor"]),
        seed_base=int(row["seed_base"]),
        n=int(row["n"]),
    )


def read_results(path: Path) -> list[BatchResult]:
    """Load a results file, refusing anything malformed."""
    results = []
    seen = set()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return results
        if tuple(header) != RESULTS_COLUMNS:
            raise CheckpointError(f"{path}: unexpected header {header}")
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(RESULTS_COLUMNS):
                raise CheckpointError(f"{path}:{lineno}: expected {len(RESULTS_COLUMNS)} fields, got {len(raw)}")
            try:
                res = parse_result_row(dict(zip(RESULTS_COLUMNS, raw)))
            except (ValueError, KeyError) as exc:
                raise CheckpointError(f"{path}:{lineno}: {exc}") from None
            key = res.config.key()
            if key in seen:
                raise CheckpointError(f"{path}:{lineno}: duplicate config")
            seen.add(key)
            results.append(res)
    with open(path, "rb") as fh:
        fh.seek(0, 2)
        if fh.tell() > 0:
            fh.seek(-1, 2)
            if fh.read(1) != b"\n":
                raise CheckpointError(f"{path}: last line is truncated")
    return results


class ResultsWriter:
    """Append-only results file; each row is flushed as soon as it is written."""

    def __init__(self, path: Path):
        self.path = Path(path)
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        self._fh = open(self.path, "a", newline="")
        self._w = _writer(self._fh)
        if fresh:
            self._w.writerow(RESULTS_COLUMNS)
            self._fh.flush()

    def append(self, res: BatchResult) -> None:
        self._w.writerow(result_row(res))
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> ResultsWriter:
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def write_results(path: Path, results: list[BatchResult]) -> None:
    """Write results sorted by canonical key, replacing ``path`` atomically."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(RESULTS_COLUMNS)
        for res in sorted(results, key=lambda r: r.config.key()):
            w.writerow(result_row(res))
    tmp.replace(path)


def write_report(path: Path, rows: list[ReportRow]) -> None:
    with open(path, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(REPORT_COLUMNS)
        for row in rows:
            if row.test is None:
                t_stat = p_value = NA
            else:
                t_stat, p_value = fmt(float(row.test.t_statistic)), fmt(float(row.test.p_value))
            significant = NA if row.baseline_missing else fmt(row.significant)
            w.writerow(result_row(row.result) + [t_stat, p_value, significant])


def metadata_path(results_path: Path) -> Path:
    results_path = Path(results_path)
    return results_path.with_name(results_path.name + ".meta.json")


def write_metadata(results_path: Path, env_cfg: EnvironmentConfig, n: int, seed_base: int) -> None:
    meta = {"environment": asdict(env_cfg), "n": n, "seed_base": seed_base}
    metadata_path(results_path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def read_metadata(results_path: Path) -> dict | None:
    path = metadata_path(results_path)
    if not path.exists():
        return None
    try:
        meta = json.loads(path.read_text())
        meta["environment"] = EnvironmentConfig(**meta["environment"])
    except (ValueError, KeyError, TypeError) as exc:
        raise CheckpointError(f"{path}: unreadable metadata ({exc})") from None
    return meta
