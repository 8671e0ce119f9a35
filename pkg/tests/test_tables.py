from __future__ import annotations

import pytest

from tnw.errors import UsageError
from tnw.tables import NOT_COMPUTED, TABLES, Table, build_table, cell


def test_cell_format():
    assert cell(5, 5) == "5 ="
    assert cell(5, 4) == "5 ≠ 4"
    assert cell(None, 4) == NOT_COMPUTED


@pytest.mark.parametrize("name", ["affine-groups", "d4aff", "dbl-clusters", "dbl-codim", "apq", "dn", "series"])
def test_tables_without_mismatches(name):
    t = build_table(name)
    assert t.rows and not t.mismatches


def test_printed_group_orders_disagree():
    t = build_table("dbl-groups")
    assert t.mismatches == 4


def test_central_images():
    t = build_table("central")
    assert t.mismatches == 2
    assert "r^3 aut:(1,2) ≠ r aut:(1,2)" in t.text()


def test_tsv_shape():
    t = build_table("dn", max_n=6)
    lines = t.tsv().splitlines()
    assert lines[0].split("\t") == t.header
    assert len(lines) == len(t.rows) + 1


def test_unknown_table():
    with pytest.raises(UsageError):
        build_table("nope")
    assert "apq" in TABLES and isinstance(build_table("apq", max_pq=2), Table)
