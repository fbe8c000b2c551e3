import json
import subprocess
import sys

import pytest

from racglie.cli import dump_json, main

COMPLEXES = {
    "two": "2\n",
    "discrete3": "3\n",
    "edge_point": "3\n1 2\n",
    "path": "3\n1 2\n2 3\n",
    "boundary": "3\n1 2\n1 3\n2 3\n",
}


@pytest.fixture
def cx(tmp_path):
    paths = {}
    for name, text in COMPLEXES.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ranks_generators_basis(cx, capsys):
    assert run(capsys, "ranks", cx["path"])[:2] == (0, "r1=3 r2=1 r3=1\n")
    code, out, _ = run(capsys, "generators", cx["discrete3"])
    assert out.split() == ["c(1,2)", "c(1,3)", "c(2,3)", "c(1,3,2)", "c(2,3,1)"]
    code, out, _ = run(capsys, "basis", cx["edge_point"], "--degree", "3")
    assert out.split() == ["c(2,3,3)", "c(1,3,3)", "c(1,3,2)"]


def test_json_is_canonical(cx, capsys):
    for argv in (["ranks", cx["discrete3"]], ["basis", cx["discrete3"], "--degree", "2"],
                 ["homology", cx["boundary"], "--k", "2"],
                 ["lie-dims", cx["two"], "--max-degree", "5", "--rc2point", "--compare"],
                 ["oracle", cx["path"], "--class", "3", "--check-identities"]):
        code, out, _ = run(capsys, "--json", *argv)
        assert code == 0
        assert dump_json(json.loads(out)) == out


def test_global_flags_after_subcommand(cx, capsys):
    code, out, _ = run(capsys, "ranks", cx["path"], "--json", "--seed", "3", "--threads", "2")
    assert json.loads(out) == {"r1": 3, "r2": 1, "r3": 1}


def test_homology_report(cx, capsys):
    code, out, _ = run(capsys, "homology", cx["boundary"], "--k", "2", "--report", "--threads", "2")
    assert out.splitlines() == ["H_2(R_K) = Z", "  J={1,2,3}: Z"]
    code, out, _ = run(capsys, "--json", "homology", cx["two"], "--k", "1")
    assert json.loads(out)["total"] == {"rank": 1, "torsion": []}


def test_lie_dims_and_relations_file(cx, tmp_path, capsys):
    code, out, _ = run(capsys, "lie-dims", cx["two"], "--max-degree", "8", "--rc2point")
    assert out.strip() == "dims=2,1,1,1,1,1,1,1"
    rel = tmp_path / "rels.txt"
    rel.write_text("# cubic relation\n[1,2,1] + [1,2,2]\n")
    code, out, _ = run(capsys, "lie-dims", cx["two"], "--max-degree", "4", "--relations", str(rel))
    assert out.strip() == "dims=2,1,1,1"


def test_oracle_output(cx, capsys):
    code, out, _ = run(capsys, "--json", "oracle", cx["discrete3"], "--class", "3",
                       "--check-identities", "--check-independence")
    assert code == 0
    assert json.loads(out) == {"orders": [8, 64, 2048], "ranks": [3, 3, 5],
                               "identities_ok": True, "independence_ok": True}


def test_exit_codes(cx, tmp_path, capsys):
    assert run(capsys, "ranks", str(tmp_path / "missing.txt"))[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n1 9\n")
    assert run(capsys, "ranks", str(bad))[0] == 1
    assert run(capsys, "oracle", cx["discrete3"], "--class", "3", "--coset-limit", "50")[0] == 2
    assert run(capsys, "homology", cx["discrete3"], "--k", "1", "--subset-cap", "2")[0] == 2
    assert run(capsys, "lie-dims", cx["two"], "--max-degree", "12")[0] == 2
    assert run(capsys, "oracle", cx["discrete3"], "--class", "2", "--check-identities")[0] == 1
    code, out, _ = run(capsys, "lie-dims", cx["boundary"], "--max-degree", "6", "--hilbert",
                       "--hilbert-polynomial", "faces")
    assert code == 3 and "MISMATCH for SimplicialComplex(3, [[1, 2], [1, 3], [2, 3]])" in out
    with pytest.raises(SystemExit) as exc:
        main(["basis", cx["two"], "--degree", "4"])
    assert exc.value.code == 2  # argparse usage error


def test_verify(cx, capsys):
    code, out, _ = run(capsys, "--json", "verify", cx["edge_point"], "--seed", "5")
    report = json.loads(out)
    assert code == 0 and report["ok"]
    assert len(report["checks"]) == 10


def test_normal_form(cx, capsys):
    assert run(capsys, "normal-form", cx["path"], "3", "1", "2")[1].strip() == "2 3 1"
    assert run(capsys, "normal-form", cx["path"], "c(1,3,2)")[1].strip() == "(identity)"


def test_module_entry_point(cx):
    out = subprocess.run([sys.executable, "-m", "racglie", "ranks", cx["discrete3"]],
                         capture_output=True, text=True, check=True).stdout
    assert out == "r1=3 r2=3 r3=5\n"
