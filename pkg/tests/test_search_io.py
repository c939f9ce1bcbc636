import csv

import numpy as np
import pytest

from introspective_rl import csvio
from introspective_rl.experiment import SearchSpace, enumerate_configs, run_batch
from introspective_rl.gridworld import EnvironmentConfig
from introspective_rl.search import run_search

ENV = EnvironmentConfig(lifetime=120)
SPACE = SearchSpace(weight_values=(0.0, 1.0), rho_values=(0.5,), alpha_values=(0.5,), epsilon_values=(0.1,))


def test_result_rows_round_trip(tmp_path):
    configs = enumerate_configs(SPACE)
    results = [run_batch(c, ENV, 3, 2) for c in configs[:6]]
    path = tmp_path / "r.csv"
    csvio.write_results(path, results)
    back = csvio.read_results(path)
    assert [r.config for r in back] == sorted((r.config for r in results), key=lambda c: c.key())
    by_key = {r.config.key(): r for r in results}
    for r in back:
        assert r.mean == by_key[r.config.key()].mean
        assert r.sd == by_key[r.config.key()].sd
        assert r.n == 3 and r.seed_base == 2


def test_results_header_exact(tmp_path):
    path = tmp_path / "r.csv"
    csvio.write_results(path, [])
    assert path.read_bytes() == (",".join(csvio.RESULTS_COLUMNS) + "\n").encode()


def test_rho_written_as_na(tmp_path):
    res = run_batch(enumerate_configs(SPACE)[0], ENV, 2, 0)
    assert res.config.weights.rho is None
    assert csvio.result_row(res)[6] == "NA"


def test_search_writes_every_config_sorted(tmp_path):
    out = tmp_path / "res.csv"
    results = run_search(enumerate_configs(SPACE), ENV, 4, 0, out)
    assert len(results) == 24
    rows = list(csv.DictReader(open(out)))
    assert len(rows) == 24
    keys = [r.config.key() for r in csvio.read_results(out)]
    assert keys == sorted(keys)
    assert csvio.read_metadata(out)["environment"] == ENV


def test_resume_skips_finished_configs(tmp_path, monkeypatch):
    out = tmp_path / "res.csv"
    configs = enumerate_configs(SPACE)
    run_search(configs[:10], ENV, 4, 0, out)
    first = out.read_text()

    calls = []
    import introspective_rl.search as search_mod

    real = search_mod.run_batch

    def counting(cfg, *a):
        calls.append(cfg)
        return real(cfg, *a)

    monkeypatch.setattr(search_mod, "run_batch", counting)
    run_search(configs, ENV, 4, 0, out)
    assert len(calls) == 14
    back = csvio.read_results(out)
    assert len(back) == 24
    assert len({r.config.key() for r in back}) == 24
    # rows from the first run are unchanged
    assert set(first.splitlines()[1:]) <= set(out.read_text().splitlines()[1:])


def test_interrupted_run_resumes_without_duplicates(tmp_path):
    out = tmp_path / "res.csv"
    configs = enumerate_configs(SPACE)
    # simulate an interrupted append-only run
    csvio.write_metadata(out, ENV, 4, 0)
    with csvio.ResultsWriter(out) as w:
        for cfg in configs[5:9]:
            w.append(run_batch(cfg, ENV, 4, 0))
    run_search(configs, ENV, 4, 0, out)
    fresh = tmp_path / "fresh.csv"
    run_search(configs, ENV, 4, 0, fresh)
    assert out.read_bytes() == fresh.read_bytes()


def test_truncated_checkpoint_refused(tmp_path):
    out = tmp_path / "res.csv"
    run_search(enumerate_configs(SPACE)[:3], ENV, 4, 0, out)
    text = out.read_text()
    out.write_text(text[:-5])
    with pytest.raises(csvio.CheckpointError):
        run_search(enumerate_configs(SPACE), ENV, 4, 0, out)


def test_garbage_checkpoint_refused(tmp_path):
    out = tmp_path / "res.csv"
    run_search(enumerate_configs(SPACE)[:3], ENV, 4, 0, out)
    with open(out, "a") as fh:
        fh.write("ObjectiveOnly,none,abc,0,0,0,NA,0.1,0.5,4,1.0,1.0,0\n")
    with pytest.raises(csvio.CheckpointError):
        csvio.read_results(out)


def test_checkpoint_with_other_settings_refused(tmp_path):
    out = tmp_path / "res.csv"
    run_search(enumerate_configs(SPACE)[:3], ENV, 4, 0, out)
    with pytest.raises(csvio.CheckpointError):
        run_search(enumerate_configs(SPACE), ENV, 5, 0, out)
    with pytest.raises(csvio.CheckpointError):
        run_search(enumerate_configs(SPACE), EnvironmentConfig(lifetime=121), 4, 0, out)


def test_parallel_matches_serial(tmp_path):
    configs = enumerate_configs(SPACE)[:6]
    run_search(configs, ENV, 3, 1, tmp_path / "a.csv", workers=1)
    run_search(configs, ENV, 3, 1, tmp_path / "b.csv", workers=2)
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_report_csv(tmp_path):
    from introspective_rl.experiment import best_per_subcategory

    results = [run_batch(c, ENV, 6, 0) for c in enumerate_configs(SPACE)]
    rows = best_per_subcategory(results)
    path = tmp_path / "rep.csv"
    csvio.write_report(path, rows)
    table = list(csv.DictReader(open(path)))
    assert tuple(table[0].keys()) == csvio.REPORT_COLUMNS
    assert len(table) == 21
    for row in table:
        if row["pain"] == "none":
            assert row["t_stat"] == "NA"
        elif row["p_value"] != "NA":
            assert (row["significant"] == "true") == (float(row["p_value"]) < 0.05)


def test_fmt():
    assert csvio.fmt(0.1) == "0.1"
    assert csvio.fmt(np.float64(2.5)) == "2.5"
    assert csvio.fmt(None) == "NA"
    assert csvio.fmt(True) == "true"
