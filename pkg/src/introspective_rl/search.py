"""Checkpointed, optionally parallel execution of a config grid."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

from .csvio import CheckpointError, ResultsWriter, read_metadata, read_results, write_metadata, write_results
from .experiment import BatchResult, RewardFunctionConfig, run_batch
from .gridworld import EnvironmentConfig

log = logging.getLogger(__name__)


def _check_metadata(out: Path, env_cfg: EnvironmentConfig, n: int, seed_base: int) -> None:
    meta = read_metadata(out)
    if meta is None:
        raise CheckpointError(f"{out} exists but has no metadata file; refusing to resume")
    expected = {"environment": env_cfg, "n": n, "seed_base": seed_base}
    for key, value in expected.items():
        if meta[key] != value:
            raise CheckpointError(f"{out}: checkpoint was written with {key}={meta[key]!r}, not {value!r}")


def run_search(
    configs: list[RewardFunctionConfig],
    env_cfg: EnvironmentConfig,
    n: int,
    seed_base: int,
    out: Path,
    workers: int = 1,
) -> list[BatchResult]:
    """Run every config not already in ``out`` and return all results for this grid.

    Rows are appended as batches finish, so an interrupted run resumes where it
    stopped.  On completion the file is rewritten in canonical key order.
    """
    out = Path(out)
    done: list[BatchResult] = []
    if out.exists() and out.stat().st_size > 0:
        _check_metadata(out, env_cfg, n, seed_base)
        done = read_results(out)
    else:
        write_metadata(out, env_cfg, n, seed_base)

    done_keys = {r.config.key() for r in done}
    todo = [c for c in configs if c.key() not in done_keys]
    log.info("%d configs requested, %d already done, %d to run", len(configs), len(configs) - len(todo), len(todo))

    with ResultsWriter(out) as writer:
        if workers <= 1:
            for i, cfg in enumerate(todo, 1):
                res = run_batch(cfg, env_cfg, n, seed_base)
                writer.append(res)
                done.append(res)
                if i % 100 == 0:
                    log.info("%d/%d configs finished", i, len(todo))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(run_batch, cfg, env_cfg, n, seed_base) for cfg in todo]
                for i, fut in enumerate(as_completed(futures), 1):
                    res = fut.result()
                    writer.append(res)
                    done.append(res)
                    if i % 100 == 0:
                        log.info("%d/%d configs finished", i, len(todo))

    for res in done:
        res.cors = None
    write_results(out, done)
    wanted = {c.key() for c in configs}
    return sorted((r for r in done if r.config.key() in wanted), key=lambda r: r.config.key())
