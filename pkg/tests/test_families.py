from __future__ import annotations

from fractions import Fraction

import pytest

from tnw.errors import InvalidFoldingError, InvalidSignatureError, UsageError
from tnw.explorer import class_keys
from tnw.families import (DOUBLE_CATALOG, NINF, N1, TnwSignature, affine_signature, build_dynkin,
                          build_special_framing, build_tbc, build_tnw, chi, classify, double_signature, fold,
                          normalize, parse_signature, tail_nodes)
from tnw.quiver import canonicalize, find_isomorphism, mutate


def test_rank_formula():
    for n in [(2,), (3, 2), (4, 4, 2), (2, 2, 2, 2), (6, 3, 2)]:
        sig = TnwSignature(n, (1,) * len(n))
        assert build_tnw(sig).node_count == sum(x - 1 for x in n) + 2


def test_tnw_shape():
    q = build_tnw(TnwSignature((3,), (2,)))
    assert q.arrows[NINF, N1] == 2
    assert q.weights == (1, 1, 2, 2)
    assert tail_nodes(TnwSignature((3, 2), (1, 1))) == [[2, 3], [4]]


def test_bc_tails_have_n_minus_one_nodes():
    q = build_tbc((2,))
    assert q.node_count == 3
    assert sorted(q.weights) == [1, 2, 4]
    assert build_tbc((3, 2)).node_count == 5


def test_invalid_signature():
    with pytest.raises(InvalidSignatureError):
        TnwSignature((1,), (1,))
    with pytest.raises(InvalidSignatureError):
        TnwSignature((2, 2), (1,))


def test_chi_split_invariance():
    # a weight-w tail of length n has the same chi as w weight-1 tails of length n
    for n, w in [(2, 2), (3, 2), (2, 3), (4, 2)]:
        a = TnwSignature((n, 2), (w, 1))
        b = TnwSignature((n,) * w + (2,), (1,) * (w + 1))
        assert chi(a) == chi(b)


def test_classify_examples():
    assert str(classify(TnwSignature((5, 3, 2), (1, 1, 1)))) == "affine E~_8"
    assert str(classify(TnwSignature((4, 4, 2), (1, 1, 1)))) == "doubly-extended E7^(1,1)"
    assert str(classify(TnwSignature((7, 3, 2), (1, 1, 1)))) == "infinite-mutation"
    assert str(classify(TnwSignature((2,), (1,)))) == "affine A_{2,1}"


def _signatures(max_n=12, max_m=6, max_w=4):
    pairs = [(n, w) for n in range(2, max_n + 1) for w in range(1, max_w + 1)]

    def rec(start, acc, used):
        yield acc
        if len(acc) == max_m:
            return
        for i in range(start, len(pairs)):
            n, w = pairs[i]
            u = used + Fraction(w * (n - 1), n)
            if u <= 2:
                yield from rec(i, acc + [pairs[i]], u)
    for acc in rec(0, [], Fraction(0)):
        yield TnwSignature(tuple(p[0] for p in acc), tuple(p[1] for p in acc))


def test_catalog_completeness():
    affine, double = set(), set()
    for sig in _signatures():
        lab = classify(sig)
        if lab.family == "infinite-mutation":
            continue
        assert lab.name is not None, sig
        (affine if lab.family == "affine" else double).add(lab.name)
    expected = {row[0] for row in DOUBLE_CATALOG if row[1] is not None and row[2] is not None}
    assert double == expected
    assert {"E~_6", "E~_7", "E~_8", "F~_4", "G~_2", "A_{1,1}"} <= affine


def test_bc_classify():
    assert classify(TnwSignature((3,), bc=True)).family == "affine"
    assert str(classify(TnwSignature((2, 2), bc=True))) == "doubly-extended BC2^(4,2)"


def test_special_framing_shape():
    fq = build_special_framing(TnwSignature((2,), (1,)))
    assert fq.full.mutable_count == 3 and fq.full.frozen_count == 2
    with pytest.raises(UsageError):
        build_special_framing(TnwSignature((2,), bc=True))


def test_a21_dynkin_matches_tnw_class():
    a, _ = class_keys(build_dynkin("A_{2,1}"))
    b, _ = class_keys(build_tnw(TnwSignature((2,), (1,))))
    assert a == b


def test_affine_g2_weights():
    q = build_dynkin("aff:G_2")
    assert sorted(q.weights) == [1, 1, 3]


def test_fold_pair_of_tails():
    q = build_tnw(TnwSignature((2, 2), (1, 1)))
    f = fold(q, [[0], [1], [2, 3]])
    assert find_isomorphism(f, build_tnw(TnwSignature((2,), (2,)))) is not None


def test_fold_three_tails():
    q = build_tnw(TnwSignature((2, 2, 2), (1, 1, 1)))
    f = fold(q, [[0], [1], [2, 3, 4]])
    assert find_isomorphism(f, build_tnw(TnwSignature((2,), (3,)))) is not None


def test_fold_commutes_with_group_mutation():
    q = build_tnw(TnwSignature((2, 2), (1, 1)))
    groups = [[0], [1], [2, 3]]
    for g, K in enumerate(groups):
        r = q
        for k in K:
            r = mutate(r, k)
        assert fold(r, groups) == mutate(fold(q, groups), g)


def test_fold_rejects_internal_arrows():
    q = build_dynkin("A_3")
    with pytest.raises(InvalidFoldingError):
        fold(q, [[0, 1], [2]])


def test_parse_signature():
    assert parse_signature("T:3,3,3/1,1,1") == TnwSignature((3, 3, 3), (1, 1, 1))
    assert parse_signature("TBC:2,2") == TnwSignature((2, 2), bc=True)
    with pytest.raises(InvalidSignatureError):
        parse_signature("T:3,3")
    with pytest.raises(InvalidSignatureError):
        parse_signature("X:1")


def test_catalog_signatures():
    assert affine_signature("E7") == TnwSignature((4, 3, 2), (1, 1, 1))
    assert double_signature("G2^(3,1)") == TnwSignature((3,), (3,))
    assert normalize(TnwSignature((2, 4), (1, 2))) == TnwSignature((4, 2), (2, 1))
    with pytest.raises(UsageError):
        double_signature("A1^(1,1)")


def test_canonical_node_order_is_stable():
    a = canonicalize(build_tnw(TnwSignature((3, 2), (1, 1))))
    b = canonicalize(build_tnw(TnwSignature((2, 3), (1, 1))))
    assert a.encoding == b.encoding
