from __future__ import annotations

import numpy as np
import pytest

from tnw.errors import MalformedWeightError, ParseError, UsageError
from tnw.families import TnwSignature, build_dynkin, build_tnw
from tnw.quiver import (WeightedQuiver, canonicalize, exchange_matrix, find_isomorphism, format_quiver,
                        is_isomorphism, mutate, mutate_matrix, mutate_path, parse_quiver, permute,
                        quiver_from_exchange)


def _random_quiver(rng, n, weights=None):
    e = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            e[i, j] = rng.integers(-2, 3)
            e[j, i] = -e[i, j]
    return WeightedQuiver(e, weights)


def test_a2_mutation_reverses_arrow():
    q = build_dynkin("A_2")
    assert q.arrow_list() == [(0, 1, 1)]
    assert mutate(q, 0).arrow_list() == [(1, 0, 1)]


def test_oriented_triangle_mutation():
    q = WeightedQuiver.from_arrows(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    r = mutate(q, 1)
    assert sorted(r.arrow_list()) == [(1, 0, 1), (2, 1, 1)]


def test_weighted_mutation_rule():
    # 0 -> 1 -> 2 with weights (1, 2, 1): composite count 1*1*2*2/(2*1) = 2
    q = WeightedQuiver.from_arrows(3, [(0, 1, 1), (1, 2, 1)], [1, 2, 1])
    r = mutate(q, 1)
    assert r.arrows[0, 2] == 2


def test_malformed_weight():
    q = WeightedQuiver.from_arrows(3, [(0, 1, 1), (1, 2, 1)], [2, 3, 2])
    with pytest.raises(MalformedWeightError):
        mutate(q, 1)


def test_exchange_matrix_example():
    q = WeightedQuiver.from_arrows(2, [(0, 1, 1)], [1, 2])
    m = exchange_matrix(q)
    assert m.entries.tolist() == [[0, 2], [-1, 0]]
    assert m.is_skew_symmetrizable()
    assert quiver_from_exchange(m) == q


def test_involution_and_matrix_agreement():
    rng = np.random.default_rng(7)
    for _ in range(200):
        q = _random_quiver(rng, 5)
        k = int(rng.integers(0, 5))
        assert mutate(mutate(q, k), k) == q
        assert exchange_matrix(mutate(q, k)) == mutate_matrix(exchange_matrix(q), k)


def test_frozen_node_cannot_mutate():
    q = WeightedQuiver.from_arrows(2, [(0, 1, 1)], frozen=[False, True])
    with pytest.raises(UsageError):
        mutate(q, 1)


def test_frozen_must_be_last():
    with pytest.raises(UsageError):
        WeightedQuiver.from_arrows(2, [(0, 1, 1)], frozen=[True, False])


def test_canonical_form_is_invariant():
    rng = np.random.default_rng(3)
    q = build_tnw(TnwSignature((3, 2, 2), (1, 1, 1)))
    for _ in range(20):
        p = list(rng.permutation(q.node_count))
        r = permute(q, p)
        assert canonicalize(r).encoding == canonicalize(q).encoding
        iso = find_isomorphism(q, r)
        assert iso is not None and is_isomorphism(q, r, iso)


def test_non_isomorphic():
    a = build_dynkin("A_3")
    b = WeightedQuiver.from_arrows(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    assert find_isomorphism(a, b) is None


def test_text_round_trip():
    q = WeightedQuiver.from_arrows(3, [(0, 1, 2), (2, 1, 1)], [1, 1, 2], [False, False, True])
    text = format_quiver(q, "example")
    r, comments = parse_quiver(text)
    assert r == q and comments == ["example"]


@pytest.mark.parametrize("text", [
    "quiver 2\nnode 0 weight 1\nnode 1 weight 1\narrow 0 0 1\n",
    "quiver 2\nnode 0 weight 1\nnode 1 weight 1\narrow 0 1 1\narrow 0 1 1\n",
    "quiver 2\nnode 0 weight 1\nbogus\n",
])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_quiver(text)


def test_mutate_path():
    q = build_dynkin("A_2")
    assert mutate_path(q, [0, 1, 0, 1, 0]) == permute(q, [1, 0])
