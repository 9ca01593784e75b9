import json
import subprocess
import sys

import pytest

from prequant_ech import Bundle
from prequant_ech.cli import generator_records, main, record_to_orbit_set


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generators_table(capsys):
    code, out, _ = run(capsys, "generators", "--genus", "2", "--euler", "-1", "--gamma", "0", "--max-total", "4")
    assert code == 0
    rows = {line.split("|")[0].strip(): [c.strip() for c in line.split("|")[1:]] for line in out.splitlines()
            if line.startswith("Λ")}
    header = [c.strip() for c in out.splitlines()[1].split("|")[1:]]
    assert header[:7] == ["I=-2", "I=-1", "I=0", "I=1", "I=2", "I=3", "I=4"]
    assert rows["Λ^2"][:5] == ["e-^2", "e-h_i", "e-e+, h_ih_j", "h_ie+", "e+^2"]
    assert rows["Λ^4"][6] == "e-^4"


def test_generators_empty_json(capsys):
    code, out, _ = run(capsys, "generators", "--genus", "0", "--euler", "-3", "--gamma", "2",
                       "--max-total", "0", "--format", "json")
    assert code == 0 and json.loads(out) == []


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "generators", "--genus", "1", "--euler", "-2", "--max-total", "5", "--format", "json")
    records = json.loads(out)
    assert {"m_minus", "m_hyp", "m_plus", "gamma", "degree", "index"} <= set(records[0])
    direct = generator_records(Bundle(1, -2), 0, 5) + generator_records(Bundle(1, -2), 1, 5)
    assert records == direct
    assert json.loads(json.dumps(records)) == records
    assert [str(record_to_orbit_set(r)) for r in records] == [r["label"].replace("∅", "") for r in records]


def test_tsv_header(capsys):
    code, out, _ = run(capsys, "generators", "--genus", "0", "--euler", "-1", "--max-total", "1", "--format", "tsv")
    lines = out.strip().splitlines()
    assert lines[0].split("\t")[:3] == ["m_minus", "m_hyp", "m_plus"]
    assert len(lines) == 4


def test_index_command(capsys):
    code, out, _ = run(capsys, "index", "--genus", "2", "--euler", "-1", "e-", "")
    assert code == 0 and out.strip().endswith("= -2")
    code, out, _ = run(capsys, "index", "--euler", "-2", "--genus", "0", "e+", "e-", "--format", "json")
    assert code == 0 and json.loads(out)["index"] == 2


@pytest.mark.parametrize("argv,code", [
    (["index", "x", ""], 2),
    (["index", "--euler", "-2", "e+", "e-^2"], 3),
    (["generators", "--euler", "2"], 2),
    (["generators", "--euler", "-2", "--gamma", "5"], 2),
    (["verify", "nonsense"], 2),
    (["partitions", "--theta", "1/2", "--m", "2"], 0),
    (["partitions", "--theta", "1", "--m", "3"], 3),
    (["partitions", "--theta", "pi"], 2),
])
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:  # argparse usage errors
        got = exc.code
    assert got == code


def test_verify_commands(capsys):
    assert run(capsys, "verify", "main-theorem", "--genus", "1", "--euler", "-2", "--max-total", "8")[0] == 0
    code, out, _ = run(capsys, "verify", "lens", "--euler", "-5", "--gamma", "3", "--max-total", "20")
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "verify", "connectors", "--max-mult", "6", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
    for which in ["partitions", "stability", "differential"]:
        assert run(capsys, "verify", which, "--genus", "1")[0] == 0
    for which in ["parity", "additivity", "trivialization"]:
        assert run(capsys, "verify", which, "--samples", "200", "--seed", "3")[0] == 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    from prequant_ech import cli
    from prequant_ech.complex import Report

    monkeypatch.setitem(cli.SUITES, "lens", lambda **kw: Report("lens", False, 1, {"gamma": 0}))
    code, out, _ = run(capsys, "verify", "lens", "--format", "json")
    assert code == 1 and json.loads(out)["counterexample"] == {"gamma": 0}


def test_homology_and_out_file(capsys, tmp_path):
    target = tmp_path / "h.json"
    code, _, _ = run(capsys, "homology", "--genus", "2", "--euler", "-1", "--gamma", "0", "--max-total", "6",
                     "--format", "json", "--out", str(target))
    rows = json.loads(target.read_text())
    assert code == 0
    assert all(r["dimension"] == 8 for r in rows if r["grading"] >= 1)


def test_homology_with_morse_file(capsys, tmp_path):
    morse_json = {"indices": [0, 1, 2, 2], "h_values": ["-1/2", "0", "1/2", "1/4"], "flows": [[2, 1], [3, 1]]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(morse_json))
    code, out, _ = run(capsys, "homology", "--genus", "0", "--euler", "-1", "--max-total", "4",
                       "--morse", str(path), "--format", "json")
    rows = json.loads(out)
    assert code == 0 and rows and all(r["experimental"] for r in rows)
    assert {r["grading"]: r["dimension"] for r in rows if r["dimension"]} == {k: 1 for k in range(0, 30, 2)}


def test_connectors_command(capsys):
    code, out, _ = run(capsys, "connectors", "--max-mult", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {c["label"] for c in data["covers"]} <= {"i.a", "i.b", "i.c", "ii", "invalid"}
    assert all(d["two_delta"] <= -2 for d in data["deltas"])


def test_action_cutoff_filters(capsys):
    code, out, _ = run(capsys, "generators", "--genus", "0", "--euler", "-1", "--max-total", "6",
                       "--eps", "1/10", "--action-cutoff", "41/10", "--format", "json")
    assert code == 0 and max(r["total"] for r in json.loads(out)) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prequant_ech", "index", "--genus", "0", "--euler", "-1",
                           "e+", ""], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("= 4")
