from __future__ import annotations

from pathlib import Path

import pytest

from tnw.cli import EXIT_MISMATCH, EXIT_OK, EXIT_TRUNCATED, EXIT_USAGE, main, resolve

WORDS = Path(__file__).resolve().parents[1] / "demos" / "words"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name,expected", [
    ("T:5,3,2/1,1,1", "affine E~_8"),
    ("T:4,4,2/1,1,1", "doubly-extended E7^(1,1)"),
    ("T:9,9,9/1,1,1", "infinite-mutation"),
    ("T:9,9/1,1", "affine A_{9,9}"),
    ("E_6", "finite E_6"),
])
def test_classify(capsys, name, expected):
    code, out = run(capsys, "classify", name)
    assert code == EXIT_OK and out.strip() == expected


def test_resolve_names():
    for name in ["aff:D_4", "aff:E_7", "BCaff_3", "dbl:E_6", "dbl:B_2(2,1)", "A_{2,1}", "TBC:2,2"]:
        q, _, _ = resolve(name)
        assert q.node_count > 0


def test_explore_class(capsys):
    code, out = run(capsys, "explore", "A_{2,1}")
    assert code == EXIT_OK and "classes\t2" in out


def test_explore_special_tsv(capsys, tmp_path):
    dest = tmp_path / "g.txt"
    code, out = run(capsys, "explore", "aff:D_4", "--framing", "special", "--format", "tsv", "--out", str(dest))
    assert code == EXIT_OK
    assert out.splitlines() == ["codim\tcount", "1\t16", "2\t96", "3\t244", "4\t270", "5\t108"]
    assert dest.read_text().count("vertex ") == 108


def test_explore_truncated(capsys):
    code, out = run(capsys, "explore", "T:9,9,9/1,1,1", "--budget-vertices", "20")
    assert code == EXIT_TRUNCATED and "TRUNCATED" in out


def test_usage_errors(capsys):
    assert main(["classify", "Q_9"]) == EXIT_USAGE
    assert main(["explore", "A_2", "--budget-vertices", "0"]) == EXIT_USAGE
    assert main(["bogus"]) == EXIT_USAGE
    assert main(["count", "d4aff", "--max", "3"]) == EXIT_USAGE
    capsys.readouterr()


def test_count_exit_codes(capsys):
    assert run(capsys, "count", "dn", "--max", "8")[0] == EXIT_OK
    assert run(capsys, "count", "central")[0] == EXIT_MISMATCH


@pytest.mark.parametrize("sig,fname,code", [
    ("E6^(1,1)", "e6_presentation.txt", EXIT_OK),
    ("E6^(1,1)", "e6_literal_braid.txt", EXIT_MISMATCH),
    ("E7^(1,1)", "e7_braid.txt", EXIT_OK),
    ("T:3/1", "false_word.txt", EXIT_MISMATCH),
])
def test_group(capsys, sig, fname, code):
    got, out = run(capsys, "group", sig, str(WORDS / fname))
    assert got == code
    assert all(line.endswith(("TRIVIAL", "NONTRIVIAL")) for line in out.splitlines())
