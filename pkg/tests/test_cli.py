"""Command-line interface tests: parsing, checks, JSON reports, exit codes."""

import json

import pytest

from topespace import cli
from topespace.corpus import load


def run(argv, tmp_path, name="out.json"):
    """Run the CLI with a JSON report path appended; return (exit, report)."""
    path = tmp_path / name
    code = cli.main([*argv, "--json", str(path)])
    return code, json.loads(path.read_text())


def check_by_id(report, check_id):
    matches = [c for c in report["checks"] if c["id"] == check_id]
    assert len(matches) == 1
    return matches[0]


def test_describe_known_arrangement(tmp_path, capsys):
    code, report = run(["describe", "u23"], tmp_path)
    assert code == 0
    assert report["schema"] == 1
    check = check_by_id(report, "describe")
    assert check["pass"] is True
    data = check["data"]
    assert data["n"] == 3
    assert data["rank"] == 2
    assert data["covectors"] == 13
    assert data["topes"] == 6
    assert data["betti_mod2"] == [1, 3, 2]
    assert data["betti_int"] == [1, 3, 2]
    assert all(t == [] for t in data["torsion"])
    assert data["salvetti_cells"] == [6, 12, 6]
    out = capsys.readouterr().out
    assert "[PASS] describe u23" in out


def test_describe_two_lines(tmp_path):
    code, report = run(["describe", "u22"], tmp_path)
    assert code == 0
    data = check_by_id(report, "describe")["data"]
    assert data["covectors"] == 9
    assert data["topes"] == 4
    assert data["betti_mod2"] == [1, 2, 1]


def test_describe_counts_match_loaded_data(tmp_path):
    m = load("u34")
    code, report = run(["describe", "u34"], tmp_path)
    assert code == 0
    data = check_by_id(report, "describe")["data"]
    assert data["covectors"] == len(m.covectors)
    assert data["topes"] == len(m.topes)
    assert sum(data["betti_mod2"]) == len(m.topes)


def test_describe_arrangement_file(tmp_path):
    path = tmp_path / "lines.txt"
    path.write_text("3 2\n1 0\n1 1\n0 1\n")
    code, report = run(["describe", str(path)], tmp_path)
    assert code == 0
    data = check_by_id(report, "describe")["data"]
    assert data["covectors"] == 13
    assert data["topes"] == 6


def test_describe_covector_file(tmp_path):
    m = load("u23")
    path = tmp_path / "covectors.txt"
    path.write_text("\n".join(v.to_str() for v in m.covectors) + "\n")
    code, report = run(["describe", str(path)], tmp_path)
    assert code == 0
    data = check_by_id(report, "describe")["data"]
    assert data["covectors"] == 13
    assert data["topes"] == 6


def test_describe_malformed_arrangement(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n1 0\nbad row\n")
    code = cli.main(["describe", str(path)])
    assert code == 2
    err = capsys.readouterr().err
    assert "line 3" in err


def test_describe_axiom_failure(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("000\n+++\n---\n++-\n")
    code = cli.main(["describe", str(path)])
    assert code == 2
    err = capsys.readouterr().err
    assert "covector axioms fail" in err
    assert "witness" in err


def test_describe_unknown_input(capsys):
    code = cli.main(["describe", "nosucharrangement"])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_verify_single_target(tmp_path):
    code, report = run(["verify", "u22", "thmA"], tmp_path)
    assert code == 0
    check = check_by_id(report, "thmA")
    assert check["pass"] is True
    rows = check["data"]["dims"]
    assert [r["quillen"] for r in rows] == [4, 3, 1, 0]
    assert all(r["quillen"] == r["vg_mod2"] == r["kalinin"] for r in rows)


def test_verify_all_targets(tmp_path):
    code, report = run(["verify", "u23", "all"], tmp_path)
    assert code == 0
    ids = [c["id"] for c in report["checks"]]
    assert ids == ["thmA", "thmB", "thmC", "proj", "asym", "quillenZ"]
    assert all(c["pass"] for c in report["checks"])


def test_verify_quillen_ranks(tmp_path):
    code, report = run(["verify", "u22", "quillenZ"], tmp_path)
    assert code == 0
    ranks = check_by_id(report, "quillenZ")["data"]["ranks"]
    assert ranks["1"] == 3
    assert ranks["2"] == 3
    assert ranks["3"] >= 1


def test_verify_with_order(tmp_path):
    code, report = run(["verify", "u23", "thmB", "--order", "2,1,0"], tmp_path)
    assert code == 0
    assert check_by_id(report, "thmB")["pass"] is True


def test_verify_with_p(tmp_path):
    code, report = run(["verify", "u23", "proj", "--p", "1"], tmp_path)
    assert code == 0
    rows = check_by_id(report, "proj")["data"]["reports"]
    assert len(rows) == 1
    assert rows[0]["p"] == 1
    assert rows[0]["ok"] is True


def test_verify_bad_order(capsys):
    code = cli.main(["verify", "u23", "thmB", "--order", "2,2,0"])
    assert code == 2
    assert "permutation" in capsys.readouterr().err


def test_verify_failure_sets_exit_code(tmp_path, monkeypatch, capsys):
    class Forced:
        ok = False

        def to_dict(self):
            return {"reason": "forced"}

    monkeypatch.setattr(cli, "verify_theorem_A", lambda m: Forced())
    path = tmp_path / "out.json"
    code = cli.main(["verify", "u23", "thmA", "--json", str(path)])
    assert code == 1
    report = json.loads(path.read_text())
    assert check_by_id(report, "thmA")["pass"] is False
    assert "[FAIL] thmA" in capsys.readouterr().out


def test_corpus_runs_everything(tmp_path):
    code, report = run(["corpus"], tmp_path)
    assert code == 0
    targets = {(c["target"], c["id"]) for c in report["checks"]}
    assert len(targets) == 5 * 6  # six verification targets per member
    assert all(c["pass"] for c in report["checks"])


def test_corpus_parallel_matches_sequential(tmp_path):
    code1, rep1 = run(["corpus", "--jobs", "1"], tmp_path, "seq.json")
    code2, rep2 = run(["corpus", "--jobs", "2"], tmp_path, "par.json")
    assert code1 == code2 == 0

    def strip(report):
        return [
            {k: v for k, v in c.items() if k != "wall_ms"}
            for c in report["checks"]
        ]

    assert strip(rep1) == strip(rep2)


def test_reports_are_deterministic(tmp_path):
    _, rep1 = run(["verify", "u23", "all"], tmp_path, "a.json")
    _, rep2 = run(["verify", "u23", "all"], tmp_path, "b.json")

    def strip(report):
        return [
            {k: v for k, v in c.items() if k != "wall_ms"}
            for c in report["checks"]
        ]

    assert strip(rep1) == strip(rep2)
