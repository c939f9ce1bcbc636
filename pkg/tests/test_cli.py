import csv
import json

import pytest

from introspective_rl import csvio
from introspective_rl.cli import REPLICATE_COLUMNS, main

SMALL_SPACE = {"weight_values": [0.0, 1.0], "rho_values": [0.5], "alpha_values": [0.5], "epsilon_values": [0.1]}


def write_doc(path, **blocks):
    path.write_text(json.dumps(blocks))
    return str(path)


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_simulate_from_table_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    ref = "stationary:ObjectiveOnly:chronic"
    assert main(["simulate", "--from-table", ref, "--seed", "4", "--out", str(a)]) == 0
    assert main(["simulate", "--from-table", ref, "--seed", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = read_rows(a)
    assert len(rows) == 2500
    assert tuple(rows[0]) == csvio.TRACE_COLUMNS
    assert rows[0]["t"] == "1"
    assert "COR=" in capsys.readouterr().out


def test_simulate_without_pain(tmp_path):
    cfg = write_doc(tmp_path / "c.json", agent={"alpha": 0.9, "epsilon": 0.1},
                    reward={"w1": 0.9, "pain": "none"}, environment={"type": "non_stationary"})
    out = tmp_path / "t.csv"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 5000
    assert all(float(r["p_pain"]) == 0.0 for r in rows)
    assert all(r["observation"] == "NA" for r in rows)


def test_search_then_report(tmp_path, capsys):
    cfg = write_doc(tmp_path / "s.json", environment={"type": "stationary", "lifetime": 150},
                    execution={"n": 5}, space=SMALL_SPACE)
    res = tmp_path / "res.csv"
    assert main(["search", "--config", cfg, "--out", str(res)]) == 0
    assert len(read_rows(res)) == 24
    # rerun resumes with nothing left to do
    before = res.read_bytes()
    assert main(["search", "--config", cfg, "--out", str(res)]) == 0
    assert res.read_bytes() == before

    rep = tmp_path / "rep.csv"
    assert main(["report", str(res), "--out", str(rep)]) == 0
    rows = read_rows(rep)
    assert tuple(rows[0]) == csvio.REPORT_COLUMNS
    assert len(rows) == 21
    for suffix in ("rep.png", "rep_distribution.png", "rep_alpha.png"):
        assert (tmp_path / suffix).stat().st_size > 0


def test_search_filters(tmp_path):
    cfg = write_doc(tmp_path / "s.json", environment={"lifetime": 100}, execution={"n": 3}, space=SMALL_SPACE)
    res = tmp_path / "res.csv"
    assert main(["search", "--config", cfg, "--filter-category", "ObjectiveOnly",
                 "--filter-pain", "none", "--filter-pain", "chronic", "--out", str(res)]) == 0
    rows = read_rows(res)
    assert len(rows) == 2
    assert {r["pain"] for r in rows} == {"none", "chronic"}


def test_traces_non_stationary(tmp_path):
    out = tmp_path / "tr.csv"
    assert main(["traces", "--from-table", "non_stationary:ObjectiveExpect:chronic",
                 "--n", "3", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 5000
    assert tuple(rows[0]) == csvio.AGGREGATE_COLUMNS
    assert (tmp_path / "tr.png").exists()


def test_replicate_subset(tmp_path, capsys):
    out = tmp_path / "rep.csv"
    assert main(["replicate", "stationary", "--filter-category", "ObjectiveOnly",
                 "--n", "10", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert tuple(rows[0]) == REPLICATE_COLUMNS
    assert [r["pain"] for r in rows] == ["none", "normal", "chronic"]
    assert rows[0]["p_value"] == "NA"
    assert rows[1]["p_value"] != "NA"
    assert (tmp_path / "rep.png").exists()


@pytest.mark.parametrize(
    "doc",
    [
        {"agent": {"alpha": 0.5, "epsilon": 0.1}, "reward": {"w1": 1.0}, "extra": {}},
        {"agent": {"alpha": 0.5, "epsilon": 0.1, "beta": 2}, "reward": {"w1": 1.0}},
        {"agent": {"alpha": 1.5, "epsilon": 0.1}, "reward": {"w1": 1.0}},
        {"agent": {"alpha": 0.5, "epsilon": 0.1, "gamma": 0.9}, "reward": {"w1": 1.0}},
        {"agent": {"alpha": 0.5, "epsilon": 0.1}, "reward": {"w1": 1.0, "w4": 0.5, "pain": "none"}},
        {"agent": {"alpha": 0.5, "epsilon": 0.1}, "reward": {"w3": 0.5}},
        {"agent": {"alpha": 0.5}, "reward": {"w1": 1.0}},
    ],
)
def test_invalid_config_exits_2(tmp_path, doc):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps(doc))
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 2
    assert not (tmp_path / "x.csv").exists()


def test_unknown_table_reference_exits_2(tmp_path):
    assert main(["simulate", "--from-table", "stationary:Objective:none", "--out", str(tmp_path / "x.csv")]) == 2


def test_report_refuses_corrupt_results(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,results,file\n")
    assert main(["report", str(bad), "--env", "stationary"]) == 2
