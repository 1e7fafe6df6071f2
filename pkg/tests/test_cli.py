import json

import pytest

from netinduce import cli
from netinduce.constructions import pendant_k4
from netinduce.graph import emit_graph6


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_from_file(tmp_path, capsys):
    f = tmp_path / "g.g6"
    f.write_text(emit_graph6(pendant_k4()) + "\n")
    code, out, _ = run(capsys, "count", "--target", "net", "--input", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["result"]["nets"] == 4 and rep["id"] == "count.net"
    assert rep["config"]["input"] == str(f) and rep["version"]
    code, out, _ = run(capsys, "count", "--input", str(f), "--format", "text")
    assert out.strip() == "4"


def test_per_vertex_csv(capsys):
    code, out, _ = run(capsys, "count", "--target", "per-vertex", "--graph6", emit_graph6(pendant_k4()),
                       "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "vertex,nets" and len(lines) == 9


def test_recurrence(capsys):
    code, out, _ = run(capsys, "recurrence", "--n", "36", "--format", "text")
    assert code == 0 and out.strip() == "46662 (6, 6, 6, 6, 6, 6)"
    code, out, _ = run(capsys, "recurrence", "--n-max", "8", "--format", "csv")
    assert out.strip().splitlines()[-1] == "8,4"


def test_reports_are_reproducible(capsys):
    args = ("search", "--n", "7", "--method", "local", "--budget", "300", "--seed", "3", "--no-timestamp")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and "timestamp" not in json.loads(a)


def test_qp_and_case_bounds(capsys):
    code, out, _ = run(capsys, "qp")
    rep = json.loads(out)
    assert set(rep["result"]) == {"claim4.min_x1", "claim4.max_x1", "claim4.max_x0", "claim4.max_f"}
    code, out, _ = run(capsys, "case-bounds")
    rep = json.loads(out)
    assert code == 1  # two rows re-derive differently from the printed table
    assert rep["result"]["table1.12"]["match"] is True


def test_verify_neighbourhood_exit_codes(capsys):
    code, out, _ = run(capsys, "verify-claim8")
    assert code == 0 and json.loads(out)["result"]["success"]
    code, out, _ = run(capsys, "verify-claim8", "--threshold", "1e-6", "--max-depth", "40")
    rep = json.loads(out)
    assert code == cli.EXIT_PARTIAL and len(rep["result"]["witness_center"]) == 12


def test_bad_input_and_config(capsys):
    code, _, err = run(capsys, "count", "--graph6", "!!")
    assert code == cli.EXIT_INPUT and "offset" in err
    code, _, err = run(capsys, "count")
    assert code == cli.EXIT_CONFIG
    code, _, _ = run(capsys, "construct", "--kind", "blowup")
    assert code == cli.EXIT_CONFIG
    with pytest.raises(SystemExit):
        cli.main(["count", "--bogus"])


def test_construct_and_decompose(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--kind", "blowup", "--n", "36")
    assert json.loads(out)["result"]["nets"] == 46662
    dest = tmp_path / "rep.json"
    code, _, _ = run(capsys, "decompose", "--blowup", "36", "--output", str(dest))
    rep = json.loads(dest.read_text())
    assert code == 0 and rep["result"]["stats"]["f"] == 0


def test_verify_all_smoke_subset(capsys):
    code, out, err = run(capsys, "verify-all", "--level", "smoke", "--only", "2", "6", "--format", "text")
    assert "[PASS]  2" in out and "[FAIL]  6" in out
    assert code == 1
