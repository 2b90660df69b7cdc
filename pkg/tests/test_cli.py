import csv
import json

import numpy as np
import pytest

from trafficnet import readwrite as rw
from trafficnet.cli import TABLE_COLUMNS, main, parse_thresholds, UsageError
from trafficnet.synthgen import barabasi_albert
from trafficnet.traffic import TrafficMatrix, write_traffic_csv


@pytest.fixture
def abc_csv(tmp_path):
    m = TrafficMatrix.from_array([[1, 2, 3, 4], [2, 4, 6, 8], [4, 3, 2, 1]], ["a", "b", "c"],
                                 [120.0, 120.1, 120.2], [30.0, 30.1, 30.2])
    p = tmp_path / "abc.csv"
    write_traffic_csv(m, p)
    return p


def run(*argv):
    return main([str(a) for a in argv])


def load(p):
    with open(p, encoding="utf-8") as fh:
        return json.load(fh)


def test_build_three_stations(tmp_path, abc_csv):
    out = tmp_path / "g"
    assert run("build", abc_csv, "--threshold", "0.54", "--out", out) == 0
    g, doc = rw.read_graph(out)
    assert g.n == 2 and g.edge_set() == {(0, 1)} and g.station_ids() == ["a", "b"]
    rep = load(tmp_path / "g.report.json")
    assert rep["isolated"] == 1 and rep["isolation_rate"] == pytest.approx(1 / 3)
    assert rep["format_version"] == rw.FORMAT_VERSION and rep["config"]["threshold"] == "0.54"
    assert doc["build"]["network_size"] == 2


@pytest.mark.parametrize("argv", [
    ["build", "X", "--threshold", "1.5", "--out", "o"],
    ["build", "X", "--threshold", "0.7:0.5:0.1", "--out", "o"],
    ["analyze"],
    ["nope"],
    ["synth", "er", "--param", "oops", "--out", "o"],
    ["synth", "er", "--out", "o"],
])
def test_usage_errors(tmp_path, abc_csv, argv):
    argv = [str(abc_csv) if a == "X" else str(tmp_path / a) if a == "o" else a for a in argv]
    assert main(argv) == 1


def test_data_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("station_id,lon,lat,t0,t1\ns1,1,2,3,x\n")
    assert run("build", bad, "--out", tmp_path / "g") == 2
    assert run("analyze", tmp_path / "missing", "--out", tmp_path / "a") == 2
    (tmp_path / "e.edges").write_text("")
    (tmp_path / "e.json").write_text(json.dumps({"n": 3, "nodes": [{"station_id": str(i)} for i in range(3)]}))
    assert run("analyze", tmp_path / "e", "--out", tmp_path / "a") == 2


def test_malformed_row_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("station_id,lon,lat,t0,t1\ns1,1,2,3,4\ns2,1,2,3,x\n")
    assert run("build", bad, "--out", tmp_path / "g") == 2
    assert "bad.csv:3" in capsys.readouterr().err


def test_internal_error_exit_code(monkeypatch, tmp_path):
    import trafficnet.cli as cli

    def boom(args):
        raise AssertionError("invariant broken")
    monkeypatch.setattr(cli, "cmd_synth", boom)
    assert cli.main(["synth", "path", "--param", "n=4", "--out", str(tmp_path / "p")]) == 3


def test_parse_thresholds():
    assert parse_thresholds("0.5") == [0.5]
    assert parse_thresholds("0.50:0.70:0.02") == [round(0.5 + 0.02 * i, 10) for i in range(11)]
    with pytest.raises(UsageError):
        parse_thresholds("0:0.5:0.1")


def test_sweep_table_monotone(tmp_path):
    traffic = tmp_path / "t.csv"
    assert run("synth", "traffic_blocks", "--param", "per_block=20", "--param", "noise=1.5",
               "--seed", 3, "--out", traffic) == 0
    assert run("build", traffic, "--threshold", "0.50:0.70:0.02", "--out", tmp_path / "s") == 0
    with open(tmp_path / "s.sweep.csv", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 11
    assert set(rows[0]) == {"threshold", "network_size", "isolated", "isolation_rate", "edges", "degree_exponent"}
    sizes = [int(r["network_size"]) for r in rows]
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    assert all(int(r["network_size"]) + int(r["isolated"]) == 60 for r in rows)
    assert load(tmp_path / "s.sweep.json")["format_version"] == rw.FORMAT_VERSION


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# synth settings\nparam=n=7\nseed=4\nout=%s\n" % (tmp_path / "p"))
    assert run("synth", "path", "--config", cfg) == 0
    g, doc = rw.read_graph(tmp_path / "p")
    assert g.n == 7 and doc["config"]["seed"] == 4
    assert run("synth", "path", "--config", cfg, "--seed", 9, "--out", tmp_path / "q") == 0
    assert rw.read_graph(tmp_path / "q")[1]["config"]["seed"] == 9
    cfg.write_text("bogus=1\n")
    assert run("synth", "path", "--config", cfg, "--out", tmp_path / "r") == 1
    cfg.write_text("seed=abc\n")
    assert run("synth", "path", "--param", "n=3", "--config", cfg, "--out", tmp_path / "r") == 1


def _synth_graph(tmp_path, *params, kind="path", seed=0):
    stem = tmp_path / kind
    args = ["synth", kind, "--seed", seed, "--out", stem]
    for p in params:
        args += ["--param", p]
    assert run(*args) == 0
    return stem


def test_analyze_star(tmp_path):
    g = _synth_graph(tmp_path, "leaves=9", kind="star")
    assert run("analyze", g, "--reps", 20, "--ensemble", 5, "--out", tmp_path / "a") == 0
    s = load(tmp_path / "a" / "summary.json")
    assert set(s["table"]) == set(TABLE_COLUMNS)
    assert s["table"]["pearson_coefficient"] == pytest.approx(-1.0)
    assert s["table"]["clustering_coefficient"] == 0.0
    assert s["table"]["network_size"] == 10
    assert s["influence"]["HD"]["q_c"] == pytest.approx(0.1)
    for strategy in ("CI", "HD", "HDA"):
        q = rw.read_columns(tmp_path / "a" / f"gq_{strategy}.dat")
        assert q[0, 0] == 0.0 and q.shape[1] == 2


def test_analyze_path_dimension(tmp_path):
    g = _synth_graph(tmp_path, "n=1024")
    assert run("analyze", g, "--reps", 50, "--ensemble", 2, "--seed", 1, "--out", tmp_path / "a") == 0
    s = load(tmp_path / "a" / "summary.json")
    assert 0.85 <= s["table"]["fractal_dimension"] <= 1.15
    boxes = rw.read_columns(tmp_path / "a" / "boxes_original.dat")
    assert boxes.shape[1] == 3 and boxes[0, 0] == 1


def test_outputs_round_trip(tmp_path):
    g = _synth_graph(tmp_path, "n=120", "m=2", kind="ba", seed=2)
    out = tmp_path / "a"
    assert run("analyze", g, "--reps", 20, "--ensemble", 5, "--out", out) == 0
    sk, doc = rw.read_graph(out / "skeleton")
    assert sk.m == sk.n - 1 and doc["format_version"] == rw.FORMAT_VERSION
    d = rw.read_columns(out / "degree.dat")
    assert d[:, 1].sum() == pytest.approx(1.0)
    with open(out / "profile.csv", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "k_lo" and rows[1][0] == "k_hi"
    prof = load(out / "profile.json")
    ratio = np.array([[np.nan if v is None else v for v in row] for row in prof["ratio"]])
    body = np.array([[np.nan if v == "" else float(v) for v in row[1:]] for row in rows[2:]])
    assert np.array_equal(np.isnan(ratio), np.isnan(body))
    assert np.allclose(np.nan_to_num(ratio), np.nan_to_num(body))
    assert sum(map(sum, prof["observed"])) == pytest.approx(1.0)


def test_influence_command(tmp_path):
    g = _synth_graph(tmp_path, "n=60", "m=2", kind="ba", seed=5)
    out = tmp_path / "top.csv"
    assert run("influence", g, "--count", 60, "--out", out) == 0
    with open(out, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["rank", "station_id", "degree", "lon", "lat"]
    assert [int(r["rank"]) for r in rows] == list(range(1, 61))
    assert sorted(int(r["station_id"]) for r in rows) == list(range(60))
    assert run("influence", g, "--count", 61, "--out", out) == 1


def test_influence_on_traffic_graph(tmp_path):
    traffic = tmp_path / "t.csv"
    run("synth", "traffic_blocks", "--seed", 2, "--out", traffic)
    run("build", traffic, "--out", tmp_path / "g")
    assert run("influence", tmp_path / "g", "--count", 10, "--out", tmp_path / "top.csv") == 0
    with open(tmp_path / "top.csv", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["rank"]) for r in rows] == list(range(1, 11))
    assert all(r["station_id"].startswith("b") and r["lon"] for r in rows)


def test_skeleton_fractal_profile_commands(tmp_path):
    g = _synth_graph(tmp_path, "u=2", "v=2", "generations=3", kind="flower")
    assert run("skeleton", g, "--reps", 30, "--out", tmp_path / "sk") == 0
    sk, doc = rw.read_graph(tmp_path / "sk")
    assert sk.m == sk.n - 1 == 43
    assert set(doc["summary"]) == {"n", "start", "lambda_skeleton", "d_b_skeleton", "r_squared"}
    with open(tmp_path / "sk.edges", encoding="utf-8") as fh:
        assert all(len(line.split()) == 3 for line in fh)
    assert run("fractal", g, "--reps", 30, "--out", tmp_path / "fr") == 0
    fr = load(tmp_path / "fr.json")
    assert fr["repetitions"] == 30 and "config" in fr
    assert run("profile", g, "--ensemble", 4, "--out", tmp_path / "pr") == 0
    assert load(tmp_path / "pr.json")["ensemble_size"] == 4


def test_byte_identical_reruns(tmp_path):
    g = _synth_graph(tmp_path, "n=200", "m=2", kind="ba", seed=1)
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("analyze", g, "--reps", 30, "--ensemble", 5, "--seed", 3, "--out", a) == 0
    assert run("analyze", g, "--reps", 30, "--ensemble", 5, "--seed", 3, "--workers", 3, "--out", b) == 0
    files = sorted(p.name for p in a.iterdir())
    assert files == sorted(p.name for p in b.iterdir())
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name
