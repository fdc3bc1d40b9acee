"""CLI subcommands, exit codes, and output determinism."""

import json

import pytest

from nclat.cli import main
from nclat.geometry import config_from_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_config_standard(capsys):
    code, out, err = run(capsys, "config", "U", "3", "4")
    assert code == 0 and err == ""
    cfg = config_from_json(out)
    assert len(cfg.points) == 7


def test_config_from_file(tmp_path, capsys):
    path = tmp_path / "pts.json"
    path.write_text('{"points": [[0, 0], [1, 0], [0, 1]]}')
    code, out, err = run(capsys, "config", "--input", str(path))
    assert code == 0
    assert len(config_from_json(out).points) == 3


def test_config_duplicate_point_file(tmp_path, capsys):
    path = tmp_path / "dup.json"
    path.write_text('{"points": [[0, 0], [0, 0]]}')
    code, out, err = run(capsys, "config", "--input", str(path))
    assert code == 3
    assert "DuplicatePoint" in err


def test_config_missing_file(capsys):
    code, out, err = run(capsys, "config", "--input", "/no/such/file.json")
    assert code == 3


def test_config_bad_family(capsys):
    code, out, err = run(capsys, "config", "X", "3")
    assert code == 2
    assert "unknown family" in err


def test_config_needs_exactly_one_source(capsys):
    code, out, err = run(capsys, "config")
    assert code == 2


def test_lattice_dot(capsys):
    code, out, err = run(capsys, "lattice", "Q", "4", "--format", "dot")
    assert code == 0
    assert out.count("->") == 28  # 14-element lattice, 28 covers
    assert "rank = same" in out


def test_lattice_json(capsys):
    code, out, err = run(capsys, "lattice", "P", "4", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["elements"]) == 8
    assert len(obj["covers"]) == 12


def test_lattice_cap(capsys):
    code, out, err = run(capsys, "lattice", "Q", "13")
    assert code == 4
    assert "TooLarge" in err


def test_enum_cap_env_override(capsys, monkeypatch):
    monkeypatch.setenv("NCLAT_ENUM_CAP", "4")
    code, out, err = run(capsys, "lattice", "Q", "5")
    assert code == 4
    monkeypatch.setenv("NCLAT_ENUM_CAP", "not-a-number")
    code, out, err = run(capsys, "lattice", "Q", "5")
    assert code == 2


def test_check_pass_and_fail_lines(capsys):
    code, out, err = run(capsys, "check", "U", "2", "3")
    # graded and rank-symmetric hold; this lattice is not self-dual
    assert code == 1
    lines = out.splitlines()
    assert "graded: PASS" in lines[0]
    assert "rank-symmetric: PASS" in lines[1]
    assert "self-dual: FAIL" in lines[2]
    assert "lattice: PASS" in lines[3]

    code, out, err = run(capsys, "check", "U", "2", "3", "--properties", "graded,lattice")
    assert code == 0
    assert "self-dual" not in out


def test_check_fixture_witnesses(capsys):
    code, out, err = run(capsys, "check", "--fixture", "triangle-pinwheel",
                         "--properties", "graded")
    assert code == 1
    assert "graded: FAIL" in out and "witness cover" in out

    code, out, err = run(capsys, "check", "--fixture", "triangle-midpoints",
                         "--properties", "graded,rank-symmetric")
    assert code == 1
    assert "graded: PASS" in out
    assert "rank-symmetric: FAIL" in out


def test_check_unknown_property(capsys):
    code, out, err = run(capsys, "check", "Q", "4", "--properties", "sorted")
    assert code == 2


def test_scd_verified(capsys):
    code, out, err = run(capsys, "scd", "T", "4")
    assert code == 0
    obj = json.loads(out)
    assert obj["verified"] is True
    assert obj["element_count"] == 28
    covered = [tuple(map(tuple, el)) for chain in obj["chains"] for el in chain]
    assert len(covered) == len(set(covered)) == 28


def test_scd_families(capsys):
    for fam, m, n, size in (("S", "2", "2", 94), ("V", "2", "2", 33)):
        code, out, err = run(capsys, "scd", fam, m, n)
        assert code == 0
        obj = json.loads(out)
        assert obj["verified"] and obj["element_count"] == size


def test_scd_arity(capsys):
    code, out, err = run(capsys, "scd", "T", "3", "2")
    assert code == 2
    code, out, err = run(capsys, "scd", "U", "3")
    assert code == 2
    code, out, err = run(capsys, "scd", "P", "3")
    assert code == 2


def test_tables_agreement(capsys):
    code, out, err = run(capsys, "tables", "U", "4", "4")
    assert code == 0
    assert "cross-check: all 3 legs agree" in out
    assert "4,8,28,94,289,838" in out

    code, out, err = run(capsys, "tables", "V", "8", "8", "--legs", "recurrence,series")
    assert code == 0

    code, out, err = run(capsys, "tables", "T", "6", "--legs", "recurrence,closed,series,brute")
    assert code == 0
    assert "t,1,2,5,12,28,64,144" in out


def test_tables_mismatch_reported(capsys, monkeypatch):
    import nclat.cli as cli_mod

    def crooked(max_m, max_n):
        rows = [[0] * (max_n + 1) for _ in range(max_m + 1)]
        return rows

    monkeypatch.setitem(
        cli_mod.__dict__, "u_table", crooked
    )
    code, out, err = run(capsys, "tables", "U", "2", "2", "--legs", "recurrence,series")
    assert code == 1
    assert "mismatch recurrence vs series" in out


def test_tables_bad_leg(capsys):
    code, out, err = run(capsys, "tables", "U", "2", "2", "--legs", "guesswork")
    assert code == 2
    code, out, err = run(capsys, "tables", "U", "2", "2", "--legs", "closed")
    assert code == 2  # closed form only exists for T


def test_verify_paper_subset(capsys):
    code, out, err = run(capsys, "verify-paper", "--only", "8")
    assert code == 0
    assert out.startswith("PASS criterion  8")
    code, out, err = run(capsys, "verify-paper", "--only", "series-identities,9")
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_verify_paper_bad_selector(capsys):
    code, out, err = run(capsys, "verify-paper", "--only", "nonsense")
    assert code == 2


def test_stdout_deterministic(capsys):
    _, first, _ = run(capsys, "lattice", "S", "1", "1", "--format", "json")
    _, second, _ = run(capsys, "lattice", "S", "1", "1", "--format", "json")
    assert first == second
    _, a, _ = run(capsys, "scd", "U", "2", "2")
    _, b, _ = run(capsys, "scd", "U", "2", "2")
    assert a == b
