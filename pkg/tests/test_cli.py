import json

import pytest

from padicount import counting
from padicount.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_iso_ef(capsys):
    code, out, _ = run_cli(capsys, "count", "iso-ef", "--qp", "3", "--e", "3", "--f", "1")
    assert code == 0
    assert out.strip() == "9"


def test_count_iso_total_json(capsys):
    code, out, _ = run_cli(capsys, "count", "iso-total", "--qp", "2", "--n", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "7"
    assert payload["query"] == {"kind": "iso-total", "qp": 2, "n": 2}


def test_count_krasner(capsys):
    code, out, _ = run_cli(capsys, "count", "krasner", "--qp", "2", "--e", "2", "--f", "1")
    assert code == 0
    assert out.strip() == "6"


def test_count_cyclic_kinds(capsys):
    code, out, _ = run_cli(capsys, "count", "cyclic-ef", "--qp", "2", "--e", "2", "--f", "1")
    assert (code, out.strip()) == (0, "6")
    code, out, _ = run_cli(capsys, "count", "cyclic-total", "--qp", "2", "--d", "2")
    assert (code, out.strip()) == (0, "7")
    code, out, _ = run_cli(capsys, "count", "tame", "--qp", "5", "--e", "2", "--f", "1")
    assert (code, out.strip()) == (0, "2")


def test_count_breakdown_terms_resum(capsys):
    code, out, _ = run_cli(
        capsys, "count", "iso-ef", "--qp", "2", "--e", "2", "--f", "1", "--breakdown", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert [record["term"] for record in payload["breakdown"]] == ["1", "3", "2", "0"]
    assert sum(int(r["term"]) for r in payload["breakdown"]) == int(payload["value"]) * 1


def test_count_rejects_breakdown_for_plain_kinds(capsys):
    code, _, err = run_cli(
        capsys, "count", "krasner", "--qp", "2", "--e", "2", "--f", "1", "--breakdown"
    )
    assert code == 2
    assert "breakdown" in err


def test_json_output_roundtrips_byte_identically(capsys):
    code, out, _ = run_cli(
        capsys, "count", "iso-total", "--qp", "2", "--n", "8", "--breakdown", "--json"
    )
    assert code == 0
    assert json.dumps(json.loads(out), indent=2) == out.strip()


def test_identical_invocations_identical_bytes(capsys):
    argv = ("table", "--qp", "2", "--n-max", "6", "--format", "json")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_count_exit_codes_for_bad_inputs(capsys):
    code, _, err = run_cli(capsys, "count", "iso-ef", "--qp", "9", "--e", "2", "--f", "1")
    assert code == 2 and "prime" in err
    code, _, err = run_cli(capsys, "count", "tame", "--qp", "3", "--e", "6", "--f", "1")
    assert code == 2
    code, _, err = run_cli(capsys, "count", "iso-ef", "--qp", "3", "--e", "3", "--f", "1", "--n", "5")
    assert code == 2
    code, _, err = run_cli(capsys, "count", "iso-total", "--qp", "3")
    assert code == 2 and "--n" in err


def test_magnitude_limit_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "count", "krasner", "--qp", "2", "--e", str(1 << 25), "--f", "1"
    )
    assert code == 3
    assert "magnitude" in err


def test_profile_source(capsys, tmp_path):
    profile = {
        "p": 2,
        "e0": 1,
        "f0": 1,
        "cyclotomic": [{"i": 1, "e": 1, "f": 1}, {"i": 2, "e": 2, "f": 1}],
    }
    path = tmp_path / "q2.json"
    path.write_text(json.dumps(profile), encoding="utf-8")
    code, out, _ = run_cli(capsys, "count", "iso-ef", "--profile", str(path), "--e", "2", "--f", "1")
    assert (code, out.strip()) == (0, "6")


def test_profile_too_short_exit_code(capsys, tmp_path):
    path = tmp_path / "shallow.json"
    path.write_text(json.dumps({"p": 2, "e0": 1, "f0": 1, "cyclotomic": []}), encoding="utf-8")
    code, _, err = run_cli(capsys, "count", "iso-ef", "--profile", str(path), "--e", "2", "--f", "1")
    assert code == 2
    assert "too short" in err


def test_invalid_profile_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    bad = {"p": 3, "e0": 1, "f0": 1, "cyclotomic": [{"i": 1, "e": 5, "f": 1}]}
    path.write_text(json.dumps(bad), encoding="utf-8")
    code, _, err = run_cli(capsys, "count", "iso-ef", "--profile", str(path), "--e", "3", "--f", "1")
    assert code == 2
    assert "invalid profile" in err


def test_table_csv_degree_mode(capsys):
    code, out, _ = run_cli(capsys, "table", "--qp", "2", "--n-max", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "e,f,krasner,classes"
    assert "2,1,6,6" in lines
    assert "1,2,1,1" in lines
    total_header = lines.index("n,classes_total,classes_from_ef")
    assert "2,7,7" in lines[total_header:]


def test_table_trivial_degree(capsys):
    code, out, _ = run_cli(capsys, "table", "--qp", "5", "--n-max", "1", "--format", "csv")
    assert code == 0
    lines = [line for line in out.splitlines() if line]
    assert lines == ["e,f,krasner,classes", "1,1,1,1", "n,classes_total,classes_from_ef", "1,1,1"]


def test_table_totals_q3(capsys):
    code, out, _ = run_cli(capsys, "table", "--qp", "3", "--n-max", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    totals = {t["n"]: t for t in payload["totals"]}
    assert totals[3]["classes_total"] == "10"
    assert totals[3]["classes_from_ef"] == "10"


def test_table_rectangle_mode(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--qp", "2", "--e-max", "2", "--f-max", "2", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert "totals" not in payload
    cells = {(c["e"], c["f"]): c for c in payload["cells"]}
    assert cells[(2, 1)]["classes"] == "6"
    assert len(cells) == 4


def test_table_requires_exactly_one_range(capsys):
    code, _, err = run_cli(capsys, "table", "--qp", "2")
    assert code == 2
    code, _, err = run_cli(capsys, "table", "--qp", "2", "--n-max", "2", "--e-max", "2")
    assert code == 2
    code, _, err = run_cli(capsys, "table", "--qp", "2", "--e-max", "2")
    assert code == 2


def test_table_out_file(capsys, tmp_path):
    out_path = tmp_path / "table.csv"
    code, out, _ = run_cli(
        capsys, "table", "--qp", "2", "--n-max", "2", "--out", str(out_path)
    )
    assert code == 0
    assert out == ""
    assert "2,1,6,6" in out_path.read_text(encoding="utf-8")


def test_selfcheck_small(capsys):
    code, out, _ = run_cli(capsys, "selfcheck", "--grid", "small")
    assert code == 0
    assert "all suites pass" in out
    for suite in ("lemma", "pi-oracle", "dual-oracle", "sandwich", "golden"):
        assert suite in out


def test_selfcheck_fault_injection(capsys, monkeypatch):
    real = counting.delta_count

    def corrupted(p, m, s, i):
        value = real(p, m, s, i)
        return value + 1 if (p, m, s, i) == (2, 1, 1, 1) else value

    monkeypatch.setattr(counting, "delta_count", corrupted)
    code, out, _ = run_cli(capsys, "selfcheck", "--grid", "small")
    assert code == 1
    assert "FAILED" in out
    assert "delta" in out  # the counterexample names the corrupted row
    assert "first counterexample" in out


def test_selfcheck_table_cap(capsys):
    code, out, _ = run_cli(capsys, "selfcheck", "--grid", "small", "--max-table-order", "6")
    assert code == 0
