from __future__ import annotations

import pytest

from tnw.counting import double_decomposition
from tnw.errors import UsageError
from tnw.explorer import (COMPLETE, TRUNCATED, Budget, classify_component, classify_subalgebra, count_faces,
                          double_edge_reachability, enumerate_exchange, enumerate_mutation_class, export_graph,
                          face_count_tsv, face_counts, modular_group_generators)
from tnw.families import (TnwSignature, build_dynkin, build_special_framing, build_tnw, double_signature,
                          tail_nodes)
from tnw.framing import frame_principal
from tnw.mcg import is_trivial


def test_budget_validation():
    with pytest.raises(UsageError):
        Budget(max_vertices=0)


def test_a21_class_graph():
    g = enumerate_mutation_class(build_dynkin("A_{2,1}"))
    assert g.status == COMPLETE
    assert len(g.classes) == 2
    assert g.diameter() == 1
    loops = [e for e in g.undirected_edges() if e[0] == e[2]]
    assert len(loops) == 2


def test_a21_generators_are_nontrivial():
    g = enumerate_mutation_class(build_dynkin("A_{2,1}"))
    gens = modular_group_generators(g)
    assert len(gens) == 2
    assert not any(is_trivial(x) for x in gens)


def test_finite_class_sizes():
    assert len(enumerate_mutation_class(build_dynkin("A_3")).classes) == 4
    assert len(enumerate_mutation_class(build_dynkin("D_4")).classes) == 6


def test_truncation():
    g = enumerate_mutation_class(build_tnw(TnwSignature((9, 9, 9), (1, 1, 1))), Budget(max_vertices=50))
    assert g.status == TRUNCATED
    ec = enumerate_exchange(frame_principal(build_dynkin("A_{2,1}")), Budget(max_vertices=30))
    assert ec.status == TRUNCATED


def test_a2_exchange():
    ec = enumerate_exchange(frame_principal(build_dynkin("A_2")))
    assert ec.vertex_count == 5 and len(ec.edges) == 5
    assert ec.variable_count() == 5
    assert face_counts(ec) == {1: 5, 2: 5}


def test_a21_special_framing_faces():
    ec = enumerate_exchange(build_special_framing(TnwSignature((2,), (1,))))
    assert ec.status == COMPLETE
    assert face_counts(ec) == {1: 4, 2: 6, 3: 4}
    assert count_faces(ec, 3) == ec.vertex_count


def test_parallel_matches_serial():
    fq = build_special_framing(TnwSignature((2, 2, 2), (1, 1, 1)))
    a = enumerate_exchange(fq)
    b = enumerate_exchange(fq, jobs=2)
    assert face_counts(a) == face_counts(b) == {1: 16, 2: 96, 3: 244, 4: 270, 5: 108}


def test_classify_component():
    assert str(classify_component(build_dynkin("E_6"))) == "finite E_6"
    assert str(classify_component(build_tnw(TnwSignature((3, 3, 2), (1, 1, 1))))) == "affine E~_6"


@pytest.mark.parametrize("name", ["D4^(1,1)", "E6^(1,1)", "B3^(1,1)", "G2^(1,1)"])
def test_tail_subalgebras_match_decomposition(name):
    sig = double_signature(name)
    q = build_tnw(sig)
    decomp = double_decomposition(sig)
    nodes = [v for tail in tail_nodes(sig) for v in tail]
    assert len(nodes) == len(decomp)
    for v, (_, pieces) in zip(nodes, decomp):
        got = sorted(lab.name for lab in classify_subalgebra(q, [v]))
        assert got == sorted(p.label for p in pieces)


def test_double_edge_reachability_d4():
    r = double_edge_reachability(build_tnw(TnwSignature((2, 2, 2, 2), (1, 1, 1, 1))))
    assert all(p is not None for p in r.values())


def test_exports():
    g = enumerate_mutation_class(build_dynkin("A_3"))
    text = export_graph(g)
    assert text.count("vertex ") == 4
    ec = enumerate_exchange(frame_principal(build_dynkin("A_2")))
    assert export_graph(ec).count("edge ") == 5
    assert face_count_tsv(ec) == "codim\tcount\n1\t5\n2\t5\n"
