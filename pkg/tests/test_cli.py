import json

import pytest

from fbqc_compare.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def records(out):
    return [json.loads(ln) for ln in out.splitlines() if ln.strip()]


def test_reference_filter(capsys):
    code, out = run(capsys, "reference", "--filter", "source_ref=songetal", "--filter", "fusion_network=4star")
    assert code == 0
    recs = records(out)
    assert len(recs) == 14
    assert all(r["schema_version"] == 1 for r in recs)


def test_reference_bad_filter(capsys):
    assert main(["reference", "--filter", "nonsense"]) == 2
    assert main(["reference", "--filter", "colour=red"]) == 2


def test_cost_record(capsys):
    code, out = run(capsys, "cost", "--family", "4star", "--code", "2,2")
    (rec,) = records(out)
    assert code == 0
    assert rec["cost"] == 256 and rec["lower_bound"] == 196 and rec["qubits"] == 16
    assert rec["target_matched"] is True


def test_cost_with_edge_override(tmp_path, capsys):
    p = tmp_path / "ld.txt"
    p.write_text("qubits 8\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n")
    code, out = run(capsys, "cost", "--family", "8ld", "--code", "1,1", "--edges", str(p))
    # six leaves cannot split evenly; exhaustive search also gives 40
    assert code == 0 and records(out)[0]["cost"] == 40


def test_fusion_stats_exact(capsys):
    code, out = run(capsys, "fusion-stats", "--code", "2,2", "--eta", "0", "--exact")
    (rec,) = records(out)
    assert rec["exact"] == ["11/16", "31/256", "49/256", "0"]


def test_fusion_stats_samples(capsys):
    code, out = run(capsys, "fusion-stats", "--code", "2,2", "--eta", "0.05", "--strategy", "adaptive",
                    "--samples", "20000", "--seed", "4")
    (rec,) = records(out)
    assert abs(rec["both"] + rec["XX_only"] + rec["ZZ_only"] + rec["neither"] - 1) < 1e-12


def test_fusion_stats_validation_errors(capsys):
    assert main(["fusion-stats", "--code", "2,2", "--eta", "2"]) == 2
    assert main(["fusion-stats", "--code", "4,3", "--eta", "0", "--exact"]) == 2
    with pytest.raises(SystemExit) as err:
        main(["fusion-stats", "--code", "0,2", "--eta", "0"])
    assert err.value.code == 2


def test_threshold_writes_log(tmp_path, capsys):
    argv = ["--out", str(tmp_path), "threshold", "--control", "--sizes", "4,6", "--trials", "200",
            "--bracket", "0.2,0.3", "--seed", "1"]
    code, out = run(capsys, *argv)
    assert code == 0
    (rec,) = records(out)
    assert rec["kind"] == "threshold" and rec["seed"] == 1 and rec["trials"] == 200
    log = (tmp_path / "threshold_results.jsonl").read_text().splitlines()
    n = len(log)
    assert n > 0 and all(json.loads(ln)["kind"] == "threshold_point" for ln in log)
    run(capsys, *argv)
    assert len((tmp_path / "threshold_results.jsonl").read_text().splitlines()) == 2 * n


def test_table1_exit_code(capsys):
    code, out = run(capsys, "table1")
    assert code == 0
    assert [r["cost"] for r in records(out)] == [256, 1520, 1120, 12928, 66560, 52480]


def test_figure_writes_svg(tmp_path, capsys):
    thr = tmp_path / "thr.jsonl"
    thr.write_text(json.dumps({"kind": "threshold", "family": "6ring", "code": "{2,2}", "strategy": "randomized",
                               "boosted": True, "threshold": 0.026}) + "\n")
    code, out = run(capsys, "--out", str(tmp_path), "figure", "--envelope", "--computed", str(thr))
    assert code == 0
    assert (tmp_path / "figure_envelope.svg").read_bytes().startswith(b"<?xml")
    assert any(r.get("series", "").startswith("computed") for r in records(out))


@pytest.mark.parametrize("argv", [
    ["reference"],
    ["cost", "--family", "6ring", "--code", "2,2"],
    ["fusion-stats", "--code", "3,2", "--eta", "0.05", "--samples", "5000"],
    ["fusion-stats", "--code", "2,2", "--eta", "0.05", "--exact"],
    ["threshold", "--control", "--sizes", "4,5", "--trials", "100", "--bracket", "0.2,0.3"],
    ["table1"],
    ["figure"],
])
def test_byte_identical_reruns(argv, tmp_path, capsys):
    full = ["--seed", "7", "--out", str(tmp_path)] + argv
    assert main(full) == 0
    a = capsys.readouterr().out
    assert main(full) == 0
    b = capsys.readouterr().out
    assert a == b and a


def test_text_format(capsys):
    code, out = run(capsys, "--format", "text", "cost", "--family", "4star", "--code", "1,1")
    assert out.startswith("kind=cost ")


def test_global_flags_after_subcommand(capsys):
    code, out = run(capsys, "reference", "--format", "text", "--filter", "qubit_count=168")
    assert code == 0 and out.startswith("kind=reference")
