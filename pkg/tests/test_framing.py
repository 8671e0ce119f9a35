from __future__ import annotations

import itertools

import numpy as np
import pytest

from tnw.errors import UsageError
from tnw.families import TnwSignature, build_dynkin, build_tnw
from tnw.framing import (GREEN, RED, FramedQuiver, c_vectors, frame_coframe, frame_principal,
                         frozen_isomorphic, mutate_framed, node_color, verify_reddening)
from tnw.mcg import reddening_element
from tnw.quiver import WeightedQuiver, exchange_matrix, mutate, permute


def test_single_node_framing():
    fq = frame_principal(WeightedQuiver(np.zeros((1, 1), dtype=int)))
    assert fq.full.node_count == 2 and fq.full.arrow_list() == [(0, 1, 1)]


def test_principal_is_identity():
    q = build_tnw(TnwSignature((2,), (1,)))
    fq = frame_principal(q)
    assert fq.full.node_count == 2 * q.node_count
    assert np.array_equal(c_vectors(fq), np.eye(q.node_count, dtype=int))
    assert all(node_color(fq, k) == GREEN for k in range(q.node_count))
    assert fq.base == q


def test_framing_rejects_frozen():
    fq = frame_principal(build_dynkin("A_2"))
    with pytest.raises(UsageError):
        frame_principal(fq.full)


def test_one_mutation_turns_red():
    q = build_tnw(TnwSignature((3, 2), (1, 1)))
    for k in range(q.node_count):
        fq = mutate_framed(frame_principal(q), k)
        c = c_vectors(fq)
        expect = np.zeros(q.node_count, dtype=int)
        expect[k] = -1
        assert np.array_equal(c[k], expect)
        assert node_color(fq, k) == RED


def test_c_vectors_match_recomputation():
    rng = np.random.default_rng(11)
    q = build_tnw(TnwSignature((3, 3, 2), (1, 1, 1)))
    fq = frame_principal(q)
    full = fq.full
    n = q.node_count
    for _ in range(10_000):
        k = int(rng.integers(0, n))
        full = mutate(full, k)
        c = exchange_matrix(full).entries[:n, n:]
        assert np.array_equal(c_vectors(FramedQuiver(full, "principal")), c)
        assert all(np.all(r >= 0) or np.all(r <= 0) for r in c)


def test_frozen_isomorphic_pentagon():
    q = build_dynkin("A_2")
    fq = frame_principal(q)
    assert frozen_isomorphic(fq, fq) == [0, 1]
    out = mutate_framed(fq, [0, 1, 0, 1, 0])
    assert frozen_isomorphic(fq, out) is not None
    assert frozen_isomorphic(fq, mutate_framed(fq, 0)) is None


def test_frozen_isomorphic_mismatch():
    a = frame_principal(build_dynkin("A_2"))
    b = frame_principal(WeightedQuiver.from_arrows(2, [(0, 1, 1)], [1, 2]))
    with pytest.raises(UsageError):
        frozen_isomorphic(a, b)


def test_reddening_empty_path():
    assert not verify_reddening(build_dynkin("A_2"), [])


def test_reddening_of_r():
    sig = TnwSignature((2,), (1,))
    assert verify_reddening(build_tnw(sig), list(reddening_element(sig).path))


def test_reddening_exhaustive_a2():
    q = build_dynkin("A_2")
    found = [p for L in range(5) for p in itertools.product(range(2), repeat=L) if verify_reddening(q, p)]
    assert (0, 1) in found and all(len(p) >= 2 for p in found)
    assert verify_reddening(q, [0, 1])
    assert not verify_reddening(q, [1, 0])


def test_coframe_all_red():
    q = build_dynkin("A_3")
    fq = frame_coframe(q)
    assert all(node_color(fq, k) == RED for k in range(3))


def test_c_matrix_is_complete_invariant_a3():
    from tnw.explorer import enumerate_exchange
    fq = frame_principal(build_dynkin("A_3"))
    ec = enumerate_exchange(fq)
    seen = {}
    for x in ec.states:
        f = FramedQuiver(WeightedQuiver(x, fq.full.weights, fq.full.frozen), "principal")
        key = tuple(sorted(map(tuple, c_vectors(f).tolist())))
        assert key not in seen
        seen[key] = f
    assert len(seen) == 14
