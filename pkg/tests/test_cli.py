"""End-to-end runs of every subcommand, plus the exit-code contract."""

import json
import subprocess
import sys

import numpy as np
import pytest

from sctopo.blp import build_joint_instance, solve, write_instance
from sctopo.cli import main
from sctopo.complexes import Selection, build_candidate_complex
from sctopo.datagen import load_bundle
from sctopo.datasets import save_selection
from sctopo.smoothness import CostVectors


def test_synth_writes_a_loadable_bundle(tmp_path, capsys):
    out = tmp_path / "bundle"
    rc = main(["synth", "--n0", "8", "--p", "0.6", "--seed", "3",
               "--prior", "similarity", "--out", str(out)])
    assert rc == 0
    info = json.loads(capsys.readouterr().out)
    assert info["n0"] == 8 and info["seed"] == 3
    bundle = load_bundle(out)
    assert bundle.config.n0 == 8
    assert bundle.config.edge_prior == "similarity"
    assert bundle.x0.shape[0] == 8
    assert bundle.x1bar.shape[0] == 28  # full candidate edge space


def test_synth_rejects_bad_arguments(tmp_path, capsys):
    rc = main(["synth", "--n0", "2", "--out", str(tmp_path / "x")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    assert main(["synth"]) == 1  # missing required --n0/--out
    assert main(["frobnicate"]) == 1
    capsys.readouterr()  # swallow argparse chatter


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "synth" in capsys.readouterr().out


def test_run_and_eval_round_trip(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n0_values": [8], "seeds": [0, 1],
                               "priors": ["low_curl"]}))
    out = tmp_path / "exp"
    rc = main(["run", "--config", str(cfg), "--out", str(out)])
    info = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert info["node_limited_methods"] == []
    assert (out / "results.csv").exists()
    report = json.loads((out / "report.json").read_text())
    assert info["records"] == len(report["records"]) == 2 * 3

    # identical reruns produce the identical aggregate table
    rc = main(["run", "--config", str(cfg), "--out", str(tmp_path / "exp2")])
    capsys.readouterr()
    assert rc == 0
    assert (out / "results.csv").read_bytes() == \
        (tmp_path / "exp2" / "results.csv").read_bytes()

    # score one persisted record against its own truth via eval
    rec = report["records"][0]
    cx = build_candidate_complex(8)
    est = tmp_path / "est.json"
    tru = tmp_path / "tru.json"
    save_selection(Selection.from_indices(cx.n_edges, cx.n_triangles,
                                          rec["selection"]["edges"],
                                          rec["selection"]["triangles"]), est)
    save_selection(Selection.from_indices(cx.n_edges, cx.n_triangles,
                                          rec["truth"]["edges"],
                                          rec["truth"]["triangles"]), tru)
    rc = main(["eval", "--estimate", str(est), "--truth", str(tru)])
    scores = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert scores["f1_edges"] == pytest.approx(rec["f1_edges"])
    assert scores["f1_triangles"] == pytest.approx(rec["f1_triangles"])


def test_run_exits_two_when_node_limited(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n0_values": [8], "seeds": [0],
                               "priors": ["low_curl"], "node_limit": 0}))
    rc = main(["run", "--config", str(cfg), "--out", str(tmp_path / "exp")])
    info = json.loads(capsys.readouterr().out)
    assert rc == 2
    assert info["node_limited_methods"] == ["joint"]


def test_run_rejects_broken_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n0_values": [8], "wat": 1}))
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 1
    assert "wat" in capsys.readouterr().err


def test_eval_missing_file_exits_one(tmp_path, capsys):
    sel = tmp_path / "a.json"
    save_selection(Selection.from_indices(3, 1, [0], []), sel)
    assert main(["eval", "--estimate", str(sel),
                 "--truth", str(tmp_path / "nope.json")]) == 1
    capsys.readouterr()


def _dump_instance(tmp_path, c1, c2, seed=4):
    rng = np.random.default_rng(seed)
    cx = build_candidate_complex(6)
    costs = CostVectors(h1=1.0 + 0.001 * rng.random(cx.n_edges),
                        h2=0.1 + 0.001 * rng.random(cx.n_triangles),
                        h2_kind="curl")
    inst = build_joint_instance(cx, costs, c1, c2)
    path = tmp_path / "inst.txt"
    write_instance(inst, path)
    return inst, path


def test_solve_subcommand_matches_library(tmp_path, capsys):
    inst, path = _dump_instance(tmp_path, 6, 3)
    rc = main(["solve", "--instance", str(path)])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    ref = solve(inst)
    assert payload["status"] == "optimal"
    assert payload["objective"] == pytest.approx(ref.objective, rel=1e-12)
    assert payload["edges"] == [int(e) for e in ref.selection.edge_indices]
    assert payload["triangles"] == [int(t) for t in
                                    ref.selection.triangle_indices]


def test_solve_exit_codes(tmp_path, capsys):
    _, path = _dump_instance(tmp_path, 6, 3)
    assert main(["solve", "--instance", str(path), "--node-limit", "0"]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "node_limit"
    assert payload["objective"] is None  # no incumbent yet, still valid JSON

    _, bad = _dump_instance(tmp_path, 16, 3)  # floors exceed the candidates
    assert main(["solve", "--instance", str(bad)]) == 1
    assert json.loads(capsys.readouterr().out)["status"] == "infeasible"

    notafile = tmp_path / "missing.txt"
    assert main(["solve", "--instance", str(notafile)]) == 1
    capsys.readouterr()


def test_console_entry_point_runs(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "sctopo", "synth", "--n0", "6",
         "--out", str(tmp_path / "b")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n0"] == 6
