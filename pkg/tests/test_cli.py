import csv
import io
import json
import subprocess
import sys

import pytest

from bispec.cli import run
from bispec.families import family
from bispec.graph import canonical_form, complete, parse_graph
from bispec.hamiltonian import check_cycle, check_path


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_json(capsys):
    code, out, _ = call(capsys, "gen", "--family", "Q", "--n", "4", "--k", "1")
    data = json.loads(out)
    assert code == 0 and set(data) == {"m", "n", "edges"} and len(data["edges"]) == 10


def test_gen_round_trip(capsys):
    cases = [(["--family", "q", "--n", "6", "--k", "1"], family("Q", 6, 1)),
             (["--family", "LSPIDER"], family("Lspider")),
             (["--family", "gamma0", "--n", "5"], family("Gamma0", 5))]
    for argv, expected in cases:
        for fmt in ("--json", "--compact"):
            code, out, _ = call(capsys, "gen", *argv, fmt)
            assert code == 0
            assert canonical_form(parse_graph(out)) == canonical_form(expected)


def test_gen_bad_parameters(capsys):
    code, _, err = call(capsys, "gen", "--family", "Q", "--n", "4", "--k", "3")
    assert code == 2 and "range" in err


def test_spectrum_on_k33(capsys, tmp_path):
    path = tmp_path / "k33.json"
    path.write_text(json.dumps({"m": 3, "n": 3, "edges": [[i, j] for i in range(3) for j in range(3)]}))
    code, out, _ = call(capsys, "spectrum", str(path))
    data = json.loads(out)
    assert code == 0 and abs(data["rho"] - 3) < 1e-9 and abs(data["q"] - 6) < 1e-9
    assert {"rho_iterations", "q_iterations", "rho_residual", "q_residual", "reference"} <= set(data)


def test_spectrum_tolerance_sources(capsys, monkeypatch):
    assert call(capsys, "spectrum", "3:3:777", "--tol", "1e-12")[0] == 0
    assert call(capsys, "spectrum", "3:3:777", "--tol", "0")[0] == 2
    monkeypatch.setenv("SPECTRAL_TOL", "1e-8")
    assert call(capsys, "spectrum", "3:3:777")[0] == 0
    monkeypatch.setenv("SPECTRAL_TOL", "nope")
    code, _, err = call(capsys, "spectrum", "3:3:777")
    assert code == 2 and "SPECTRAL_TOL" in err


def test_bounds_csv(capsys):
    code, out, _ = call(capsys, "bounds", family("Q", 4, 1).to_compact())
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["bound", "left", "right", "satisfied", "slack"]
    assert len(rows) == 5 and all(r[3] == "true" for r in rows[1:])
    for r in rows[1:]:
        float(r[1]), float(r[2]), float(r[4])


def test_closure(capsys):
    code, out, _ = call(capsys, "closure", "3:3:365")
    data = json.loads(out)
    assert code == 0 and len(data["graph"]["edges"]) == 9
    assert all(a["degree_sum"] >= 4 for a in data["added"])
    code, out, _ = call(capsys, "closure", "3:3:365", "--compact")
    assert out.strip() == "3:3:777"
    assert call(capsys, "closure", "3:4:fff")[0] == 2


def test_hamilton_exit_codes(capsys):
    b = family("B", 4, 1)
    code, out, _ = call(capsys, "hamilton", b.to_compact(), "--path")
    assert code == 0 and check_path(b, json.loads(out)["vertices"])
    code, out, _ = call(capsys, "hamilton", b.to_compact(), "--cycle")
    assert code == 3 and json.loads(out)["exists"] is False
    code, out, _ = call(capsys, "hamilton", "4:4:ffff", "--cycle")
    assert code == 0 and check_cycle(complete(4, 4), json.loads(out)["vertices"])
    assert call(capsys, "hamilton", "4:4:fff", "--cycle")[0] == 2
    assert call(capsys, "hamilton", "4:4:ffff")[0] == 2


def test_biclique(capsys):
    code, out, _ = call(capsys, "biclique", family("B", 5, 1).to_compact())
    data = json.loads(out)
    assert code == 0 and (data["s"], data["t"]) == (5, 4)


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("2:2:33\n"))
    code, out, _ = call(capsys, "biclique", "-")
    assert code == 0 and json.loads(out)["order"] == 4


def test_enum(capsys):
    code, out, _ = call(capsys, "enum", "--m", "2", "--n", "2", "--count")
    assert code == 0 and out.strip() == "16"
    code, out, _ = call(capsys, "enum", "--m", "2", "--n", "2", "--dedup")
    assert len(out.split()) == 6
    code, out, _ = call(capsys, "enum", "--m", "3", "--n", "3", "--max-missing", "1", "--json")
    assert [len(json.loads(line)["edges"]) for line in out.splitlines()] == [9] + [8] * 9


def test_verify(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = call(capsys, "verify", "--theorem", "T2.4", "--n", "3", "--mode", "exhaustive", "--out", str(out_path))
    assert code == 0
    assert json.loads(out)["counterexamples"] == []
    report = json.loads(out_path.read_text())
    assert report["hits"] == report["confirmed"] + len(report["exceptions"]) + len(report["counterexamples"])
    code, out, _ = call(capsys, "verify", "--theorem", "T2.4", "--n", "3", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["theorem", "n", "k", "mode", "scanned", "hits", "confirmed", "exceptions",
                       "counterexamples", "seconds"]


def test_verify_counterexample_exit(capsys):
    code, _, _ = call(capsys, "verify", "--theorem", "T2.3", "--n", "3", "--k", "0")
    assert code == 1


def test_verify_out_of_range_note(capsys):
    _, _, err = call(capsys, "verify", "--theorem", "T2.1", "--n", "3", "--k", "1")
    assert "outside the stated range" in err


def test_audit(capsys):
    code, out, _ = call(capsys, "audit", "--family", "L1")
    assert code == 0 and json.loads(out)["notes"] == []


@pytest.mark.parametrize("argv", [[], ["bogus"], ["gen", "--family", "Q", "--frob"], ["spectrum"],
                                  ["verify", "--theorem", "T2.4", "--n", "3", "--mode", "nope"]])
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and "usage" in err


def test_help_exits_zero(capsys):
    assert call(capsys, "--help")[0] == 0


def test_missing_file_is_error(capsys):
    code, _, err = call(capsys, "spectrum", "/nonexistent/graph.json")
    assert code == 2 and "error" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bispec", "gen", "--family", "R", "--n", "4", "--k", "1", "--compact"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == family("R", 4, 1).to_compact()
