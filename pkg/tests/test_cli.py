import json
import subprocess
import sys

import pytest

from genusgauge.cli import decide_inputs, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,expected", [
    (["eval", "G", "--k", "6", "--q", "5"], "1"),
    (["eval", "N", "--k", "1", "--q", "1"], "1"),
    (["eval", "qd", "--h", "1", "--e", "0", "--label", "t1", "--which", "bot"], "1/2"),
    (["eval", "G", "--p", "2", "--q", "1"], "1/2"),
    (["eval", "g", "--k", "6", "--q", "5", "--i", "1", "--method", "sign"], "0"),
    (["eval", "I", "--k", "2", "--q", "3"], "1"),
    (["eval", "P", "--k", "2", "--q", "1", "--i", "1"], "1 + u"),
    (["eval", "d2k1", "--k", "2", "--s", "0"], "-3/4"),
    (["eval", "delta", "--k", "6", "--q", "5"], "1"),
    (["eval", "theta", "--k", "1", "--q", "1"], "-1/2"),
    (["eval", "h1q", "--h", "2", "--e", "1"], "Z^1 + Z/4"),
    (["eval", "rhoq", "--h", "2", "--e", "4"], "-2"),
])
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_eval_json_uses_rational_strings(capsys):
    code, out, _ = run(capsys, "eval", "d2k1", "--k", "2", "--s", "0", "--json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"command", "inputs", "result", "violated", "certificate", "exact"}
    assert doc["result"]["value"] == "-3/4" and doc["exact"] is True


def test_eval_roots_is_marked_inexact(capsys):
    code, out, _ = run(capsys, "eval", "g", "--k", "1", "--q", "1", "--i", "0", "--method", "roots", "--json")
    assert json.loads(out)["exact"] is False


def test_eval_missing_parameter(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "G", "--k", "2"])
    assert exc.value.code == 2


def test_eval_invalid_parameter(capsys):
    code, _, err = run(capsys, "eval", "G", "--k", "2", "--q", "2")
    assert code == 2 and "coprime" in err


def test_eval_cap_is_resource_error(capsys, monkeypatch):
    monkeypatch.setenv("GENUSGAUGE_MAX_K", "10")
    code, _, _ = run(capsys, "eval", "g", "--k", "11", "--q", "1", "--i", "0", "--method", "roots")
    assert code == 4


def test_feasible_lens_infeasible(capsys):
    code, out, _ = run(capsys, "feasible", "--lens", "4,1", "--h", "1", "--e", "0")
    assert code == 3 and "h >= N" in out


def test_feasible_sphere(capsys):
    code, out, _ = run(capsys, "feasible", "--sphere", "--h", "1", "--e", "2")
    assert code == 0 and out.startswith("feasible")


def test_feasible_json_certificate(capsys):
    code, out, _ = run(capsys, "feasible", "--lens", "4,1", "--h", "3", "--e", "2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["certificate"]["counts"] == [1, 0]
    assert doc["exact"] is True and doc["violated"] == []


@pytest.mark.parametrize("argv", [
    ["feasible", "--lens", "4,1", "--h", "1", "--e", "0", "--json"],
    ["feasible", "--delta", "1/2", "--phi", "trivial", "--h", "1", "--e", "0", "--json"],
    ["feasible", "--definite", "1,1", "--h", "1", "--e", "-4", "--json"],
    ["feasible", "--spin", "16,16,0", "--h", "1", "--e", "14", "--json"],
    ["feasible", "--sphere", "--h", "2", "--e", "4", "--json"],
])
def test_json_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    again = decide_inputs(doc["inputs"])
    assert again.feasible == doc["result"]["feasible"]
    assert list(again.violated) == doc["violated"]
    assert again.exact == doc["exact"]
    assert code == (0 if again.feasible else 3)


def test_conflicting_contexts(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["feasible", "--lens", "4,1", "--sphere", "--h", "1", "--e", "0"])
    assert exc.value.code == 2


def test_orientation_error(capsys):
    code, _, err = run(capsys, "feasible", "--spin=-1,0,1", "--h", "1", "--e", "0")
    assert code == 2 and "orientation" in err


@pytest.mark.parametrize("argv,rows", [
    (["region", "--lens", "2,1", "--h-max", "2"], ["1,0,true", "2,-2,true", "2,2,true"]),
    (["region", "--lens", "4,1", "--h-max", "2"], ["2,0,true"]),
    (["region", "--sphere", "--h-max", "1"], ["1,-2,false", "1,2,false"]),
])
def test_region_csv(capsys, argv, rows):
    code, out, _ = run(capsys, *argv)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "h,e,exact" and lines[1:] == rows


def test_region_unbounded_needs_cap(capsys):
    code, _, _ = run(capsys, "region", "--definite", "2,0", "--h-max", "1")
    assert code == 2
    code, out, _ = run(capsys, "region", "--definite", "2,0", "--h-max", "1", "--e-max", "6")
    assert code == 0 and out.splitlines()[1:] == ["1,-2,false", "1,2,false", "1,6,false"]


def test_scan_command(capsys):
    code, out, _ = run(capsys, "scan", "carlitz", "--max", "8")
    assert code == 0 and "failures 0" in out


def test_scan_json_and_workers(capsys):
    code, out, _ = run(capsys, "scan", "congruence_coherence", "--max-p", "40", "--json", "--workers", "2")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["failures"] == 0 and doc["result"]["complete"]


def test_scan_time_limit_exit(capsys):
    code, out, _ = run(capsys, "scan", "two_g_equals_n", "--time-limit", "0")
    assert code == 4 and "partial" in out


def test_scan_rejects_foreign_bound(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan", "carlitz", "--max-p", "10"])
    assert exc.value.code == 2


def test_fixtures_command(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and "PASS G(2,1)" in out


def test_fixtures_corrupt(capsys, tmp_path):
    bad = tmp_path / "f.txt"
    bad.write_text("nonsense\n")
    code, _, _ = run(capsys, "fixtures", "--file", str(bad))
    assert code == 5
    code, _, _ = run(capsys, "fixtures", "--file", str(tmp_path / "missing.txt"))
    assert code == 5


def test_fixtures_mismatch_exit(capsys, tmp_path):
    f = tmp_path / "f.txt"
    f.write_text("wrong | N | k=1;q=1 | 2 | COMPUTED: deliberately wrong\n")
    code, out, _ = run(capsys, "fixtures", "--file", str(f))
    assert code == 5 and "FAIL wrong" in out


def test_module_entry_point_and_lf_endings():
    proc = subprocess.run(
        [sys.executable, "-m", "genusgauge", "region", "--lens", "2,1", "--h-max", "2"],
        capture_output=True, check=True,
    )
    assert proc.stdout == b"h,e,exact\n1,0,true\n2,-2,true\n2,2,true\n"
