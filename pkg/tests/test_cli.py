import csv
import io
import json
import subprocess
import sys

import pytest

from permdes.cli import build_parser, main
from permdes.perm import construct_named, parse_permset


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_charlier_roots_csv(capsys):
    code, out, _ = run(capsys, "charlier-roots", "--kmax", "4")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["k"] for r in rows] == ["1", "2", "3", "4"]
    mids = [float(r["midpoint"]) for r in rows]
    assert mids[0] == 1
    assert abs(mids[1] - 2.616) <= 0.01
    assert abs(mids[2] - 4.115) <= 0.01
    assert abs(mids[3] - 5.544) <= 0.01
    assert float(rows[3]["krasikov_upper"]) == 9


def test_report_pgl25(capsys):
    code, out, _ = run(capsys, "report", "--family", "pgl2", "--p", "5", "--exact")
    assert code == 0
    d = json.loads(out)
    assert d["strength"] == 3 and d["exact_radius"] <= 3
    assert d["bounds"]["thm1"] == 3 and d["bounds"]["cw"] == 3


def test_report_with_annihilation(capsys):
    code, out, _ = run(capsys, "report", "--family", "pgl2", "--p", "5", "--annihilation", "20")
    assert code == 0
    assert json.loads(out)["annihilation"]["passed"] is True


def test_missing_file(capsys):
    code, out, err = run(capsys, "strength", "--in", "missing.txt")
    assert code == 2
    assert out == ""
    assert "missing.txt" in err and err.count("\n") == 1


def test_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 2\n1 2 3\n1 2 3\n")
    code, _, err = run(capsys, "strength", "--in", str(p))
    assert code == 2 and "duplicate" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["strength", "--bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    code, _, err = run(capsys, "strength")
    assert code == 2 and "--in" in err
    code, _, _ = run(capsys, "gen", "--family", "agl1", "--p", "6")
    assert code == 2


def test_gen_roundtrip(tmp_path, capsys):
    target = tmp_path / "pgl.txt"
    code, _, _ = run(capsys, "gen", "--family", "pgl2", "--p", "5", "--out", str(target))
    assert code == 0
    data = target.read_bytes()
    assert b"\r" not in data
    D = parse_permset(data)
    assert D.elements == construct_named("pgl2", p=5).elements
    code, out, _ = run(capsys, "strength", "--in", str(target), "--format", "json")
    assert json.loads(out)["strength"] == 3


def test_radius_json(capsys):
    code, out, _ = run(capsys, "radius", "--family", "cyclic", "--n", "4", "--format", "json",
                       "--farthest", "2")
    d = json.loads(out)
    assert d["radius"] == 2 and d["witness"] == [1, 2, 4, 3] and d["mode"] == "coset-pruned"
    assert "seconds" not in d
    assert len(d["farthest"]) == 2
    code, out, _ = run(capsys, "radius", "--family", "cyclic", "--n", "4", "--format", "json",
                       "--timing", "--mode", "naive", "--jobs", "2")
    d = json.loads(out)
    assert d["enumerated"] == 24 and "seconds" in d


def test_radius_cap(capsys):
    code, _, err = run(capsys, "radius", "--family", "cyclic", "--n", "6", "--cap", "5")
    assert code == 2 and "cap" in err


def test_bound_table(capsys):
    code, out, _ = run(capsys, "bound", "--degree", "10", "--format", "csv")
    rows = {int(r["t"]): r for r in csv.DictReader(io.StringIO(out))}
    assert [int(rows[t]["thm1"]) for t in range(2, 9)] == [8, 7, 7, 5, 5, 4, 4]
    assert rows[2]["caveats"]
    assert rows[1]["thm1"] == ""
    code, out, _ = run(capsys, "bound", "--family", "agl1", "--p", "7", "--format", "json")
    assert json.loads(out)["rows"][0]["thm1"] == 5


def test_verify_orthogonality(capsys):
    code, out, _ = run(capsys, "verify-orthogonality", "--n", "12", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and len(d["entries"]) == 49
    code, _, _ = run(capsys, "verify-orthogonality", "--n", "6", "--rmax", "4")
    assert code == 2


def test_orthogonality_failure_exit_code(capsys, monkeypatch):
    from permdes import charlier
    monkeypatch.setattr(charlier, "space_inner_product", lambda n, F, G: 3)
    code, _, err = run(capsys, "verify-orthogonality", "--n", "4")
    assert code == 1 and "orthogonality" in err


def test_report_violation_exit_code(capsys, monkeypatch):
    from permdes import bounds
    monkeypatch.setattr(bounds, "theorem2_bound", lambda n: 0)
    code, out, _ = run(capsys, "report", "--family", "cyclic", "--n", "4", "--exact")
    assert code == 1
    assert any(c.startswith("violation") for c in json.loads(out)["caveats"])


def test_annihilation_failure_exit_code(capsys, monkeypatch):
    from permdes import cli
    real = cli.verify_annihilation
    monkeypatch.setattr(cli, "verify_annihilation",
                        lambda D, t, **kw: real(construct_named("cyclic", n=6), 3, **kw))
    code, out, _ = run(capsys, "report", "--family", "pgl2", "--p", "5", "--annihilation", "5")
    assert code == 1
    assert json.loads(out)["annihilation"]["passed"] is False


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--degree", "4", "--format", "json")
    d = json.loads(out)
    assert [m["space"] for m in d["moments"][:3]] == ["1/1", "3/1", "10/1"]
    code, out, _ = run(capsys, "moments", "--family", "cyclic", "--n", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[2] == {"i": "2", "space": "10/1", "design": "12/1"}


@pytest.mark.parametrize("argv", [
    ["strength", "--family", "pgl2", "--p", "5"],
    ["radius", "--family", "agl1", "--p", "5"],
    ["bound", "--degree", "9"],
    ["report", "--family", "cyclic", "--n", "5", "--exact", "--format", "text"],
    ["charlier-roots", "--kmax", "3", "--format", "text"],
    ["verify-orthogonality", "--n", "8"],
    ["moments", "--degree", "5"],
])
def test_text_outputs(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.endswith("\n") and out.strip()


def test_every_subcommand_has_help():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert set(sub.choices) == {"gen", "strength", "radius", "bound", "report", "charlier-roots",
                                "verify-orthogonality", "moments"}
    for name, p in sub.choices.items():
        assert p.description, name


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "permdes", "moments", "--degree", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "i=1: space 2/1" in proc.stdout


def test_identical_invocations_identical_bytes(capsys):
    argv = ["report", "--family", "agl1", "--p", "5", "--exact", "--annihilation", "10"]
    outs = {run(capsys, *argv)[1] for _ in range(3)}
    assert len(outs) == 1
