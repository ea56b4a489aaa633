import json

import pytest

from radixcirc import cli, ir


def run_cli(*argv):
    return cli.main(list(argv))


def test_build_compress241_to_file(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run_cli("build", "--kind", "compress241", "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert len(doc["wires"]) == 2 and len(doc["gates"]) == 3
    assert "width=2" in capsys.readouterr().out


def test_build_stdout_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("build", "--kind", "cla-adder", "--n", "4", "--carry-out", "--out", str(a))
    run_cli("build", "--kind", "cla-adder", "--n", "4", "--carry-out", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_build_block_writes_plan_sidecar(tmp_path):
    out = tmp_path / "blk.json"
    assert run_cli("build", "--kind", "block-adder", "--n", "12", "--scheme", "241", "--out", str(out)) == 0
    plan = json.loads((tmp_path / "blk.plan.json").read_text())
    assert plan["mode"] == "a+b" and plan["scheme"] == "2-4-1"
    assert plan["n"] == 12 and plan["c"] == 4
    assert len(plan["blocks"]) == 4 and len(plan["carry_slots"]) == 3
    circ = ir.loads(out.read_text())
    assert circ.width == 24


def test_build_infeasible_exits_2(tmp_path, capsys):
    rc = run_cli("build", "--kind", "block-adder", "--n", "29", "--scheme", "231", "--out", str(tmp_path / "x.json"))
    assert rc == 2
    err = capsys.readouterr().err
    assert "infeasible" in err and "2n/c + c - 1" in err


def test_build_missing_flags_exit_2():
    assert run_cli("build", "--kind", "cla-adder") == 2
    assert run_cli("build", "--kind", "plus-k", "--n", "3") == 2
    assert run_cli("build", "--kind", "block-plus-k", "--n", "60", "--scheme", "241") == 2


def test_simulate_table_row(tmp_path, capsys):
    out = tmp_path / "c231.json"
    run_cli("build", "--kind", "compress231", "--out", str(out))
    capsys.readouterr()
    assert run_cli("simulate", str(out), "--input", "1,0,1") == 0
    assert capsys.readouterr().out.strip() == "2,1,0"


def test_simulate_bad_input_exits_2(tmp_path, capsys):
    out = tmp_path / "c231.json"
    run_cli("build", "--kind", "compress231", "--out", str(out))
    assert run_cli("simulate", str(out), "--input", "1,0") == 2
    assert run_cli("simulate", str(out), "--input", "1,0,7") == 2
    assert run_cli("simulate", str(out), "--input", "x,y,z") == 2
    assert run_cli("simulate", str(tmp_path / "missing.json"), "--input", "0") == 2


def test_verify_exhaustive_compress(capsys):
    assert run_cli("verify", "--kind", "compress231", "--exhaustive") == 0
    assert "PASS compress231: 8 cases" in capsys.readouterr().out
    assert run_cli("verify", "--kind", "compress241", "--exhaustive") == 0


def test_verify_adders():
    assert run_cli("verify", "--kind", "cla-adder", "--n", "3", "--carry-in", "--carry-out", "--exhaustive") == 0
    assert run_cli("verify", "--kind", "ripple-adder", "--n", "3", "--exhaustive") == 0
    assert run_cli("verify", "--kind", "plus-k", "--n", "4", "--k", "9", "--exhaustive") == 0


def test_verify_sampled_block(capsys):
    rc = run_cli("verify", "--kind", "block-adder", "--n", "12", "--scheme", "241",
                 "--samples", "40", "--seed", "7", "--carry-in", "--carry-out")
    assert rc == 0
    assert "PASS block-adder: 40 cases" in capsys.readouterr().out


def test_verify_corrupted_circuit_exits_1(tmp_path, capsys):
    out = tmp_path / "c.json"
    run_cli("build", "--kind", "compress241", "--out", str(out))
    doc = json.loads(out.read_text())
    doc["gates"] = doc["gates"][:-1]  # drop the last clearing gate
    out.write_text(json.dumps(doc))
    rc = run_cli("verify", "--kind", "compress241", "--exhaustive", "--circuit", str(out))
    assert rc == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_exhaustive_too_large_exits_2():
    assert run_cli("verify", "--kind", "cla-adder", "--n", "16", "--exhaustive") == 2


def test_verify_usage_errors():
    assert run_cli("verify", "--kind", "cla-adder", "--n", "3") == 2  # no mode flag
    assert run_cli("verify", "--kind", "cla-adder", "--n", "3", "--samples", "0") == 2


def test_stats_json_and_csv(tmp_path, capsys):
    out = tmp_path / "c241.json"
    run_cli("build", "--kind", "compress241", "--out", str(out))
    capsys.readouterr()
    assert run_cli("stats", str(out)) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total_gates"] == 3
    assert doc["gate_counts"] == [{"arity": 2, "dim": 4, "count": 3}]
    assert run_cli("stats", str(out), "--csv") == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].startswith("width,depth")


def test_stats_expand_cost_model(tmp_path, capsys):
    out = tmp_path / "c231.json"
    run_cli("build", "--kind", "compress231", "--out", str(out))
    capsys.readouterr()
    assert run_cli("stats", str(out), "--expand-cost-model") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total_gates"] <= 22
    assert not doc["depth_exact"]


def test_stats_reads_plan_sidecar(tmp_path, capsys):
    out = tmp_path / "blk.json"
    run_cli("build", "--kind", "block-adder", "--n", "12", "--scheme", "241", "--out", str(out))
    capsys.readouterr()
    assert run_cli("stats", str(out)) == 0
    doc = json.loads(capsys.readouterr().out)
    # 3 compressed blocks of 6 wires, one generated ancilla per 2-wire group
    assert doc["ancilla_generated"] == 9


def test_stats_malformed_file_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run_cli("stats", str(bad)) == 2
