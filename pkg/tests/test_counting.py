from __future__ import annotations

from fractions import Fraction

import pytest

from tnw.counting import (E7_AFFINE_ERRATUM, SERIES_IDENTITIES, SeriesPoly, affine_cluster_count, affine_piece,
                          affine_variable_count, apq_closed, apq_recurrence, catalan, dn_closed, dn_recurrence,
                          doubly_extended_coset_count, doubly_extended_tail_counts,
                          doubly_extended_variable_count, face_table, face_totals, facet_recursion,
                          finite_cluster_count, finite_type, middle_binom, series_identity_check)
from tnw.errors import InconsistentDecompositionError, UsageError
from tnw.explorer import enumerate_exchange, face_counts
from tnw.families import TnwSignature, affine_signature, build_dynkin, build_special_framing, double_signature
from tnw.framing import frame_principal


def test_small_numbers():
    assert catalan(5) == 42
    assert middle_binom(4) == 70
    assert dn_closed(4) == 108 == dn_recurrence(4)
    assert apq_closed(4, 4) == 4900 == apq_recurrence(4, 4)


def test_apq_and_dn_agree():
    for p in range(1, 9):
        for q in range(1, 9):
            assert apq_closed(p, q) == apq_recurrence(p, q)
    for n in range(4, 13):
        assert dn_closed(n) == dn_recurrence(n)


def test_affine_counts():
    assert affine_cluster_count(affine_signature("D", 4)) == 108
    assert affine_variable_count(affine_signature("D", 4)) == 16
    assert affine_variable_count(TnwSignature((2,), (1,)), ell=2) == 6
    with pytest.raises(UsageError):
        affine_cluster_count(TnwSignature((2, 2, 2, 2), (1, 1, 1, 1)))


def test_empty_decomposition():
    with pytest.raises(InconsistentDecompositionError):
        facet_recursion([], 3)


def test_finite_type_detection():
    assert finite_type([1, 1, 1, 1], [(0, 1), (0, 2), (0, 3)]) == ("D", 4)
    assert finite_type([1, 1, 2], [(0, 1), (1, 2)]) == ("B", 3)
    assert finite_type([1, 3], [(0, 1)]) == ("G", 2)


@pytest.mark.parametrize("label,count", [("A_2", 5), ("B_3", 20), ("D_4", 50), ("G_2", 8), ("F_4", 105),
                                         ("E_6", 833)])
def test_finite_counts_by_enumeration(label, count):
    assert finite_cluster_count(label) == count
    ec = enumerate_exchange(frame_principal(build_dynkin(label)))
    assert ec.vertex_count == count


@pytest.mark.parametrize("sig", [affine_signature("C", 3), affine_signature("B", 3), affine_signature("G2"),
                                 affine_signature("F4"), affine_signature("D", 4),
                                 TnwSignature((3,), (1,)), TnwSignature((3, 2), (1, 1))])
def test_face_tables_match_enumeration(sig):
    totals = face_totals(face_table(affine_piece(sig)))
    rank = len(totals) - 1
    got = face_counts(enumerate_exchange(build_special_framing(sig)))
    assert {rank - k: int(v) for k, v in enumerate(totals[:-1])} == got


def test_d4_typed_faces():
    t = face_table(affine_piece(affine_signature("D", 4)))
    assert t[2][("A_{1,1}",)] == 8
    assert t[3][("A_1", "A_1", "A_1")] == 24
    assert t[4][("D_4",)] == 8


def test_doubly_extended_counts():
    e7 = double_signature("E7^(1,1)")
    assert doubly_extended_tail_counts(e7)[0] == [1400, 5040, 25200]
    assert doubly_extended_coset_count(e7) == Fraction(21910, 3)
    assert E7_AFFINE_ERRATUM == 252_000
    d4 = double_signature("D4^(1,1)")
    assert doubly_extended_coset_count(d4) == 72
    assert doubly_extended_variable_count(d4) == 4
    assert doubly_extended_coset_count(double_signature("E6^(1,1)")) == 1575


def test_series_poly_ops():
    x = SeriesPoly([0, 1], 10)
    one = SeriesPoly([1], 10)
    assert (one - x).inverse() * (one - x) == one
    assert ((one + x) ** 2).sqrt() == one + x
    assert SeriesPoly([Fraction(1, 2)], 3).is_integral() is False


@pytest.mark.parametrize("identity_id", sorted(SERIES_IDENTITIES))
def test_series_identities(identity_id):
    assert series_identity_check(identity_id, 30)


def test_series_order_limit():
    with pytest.raises(UsageError):
        series_identity_check("catalan-sqrt", 10_000)
