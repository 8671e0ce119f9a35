from __future__ import annotations

import pytest

from tnw.errors import NoTwistError, ParseError, UsageError
from tnw.families import TnwSignature, build_dynkin, build_tnw, double_signature
from tnw.mcg import (GroupElement, WordContext, abstract_element_of_r, abstract_quotient_order, braid_relator,
                     central_element, compose, delta_exponent, equal, evaluate_word, gamma, identity, inverse,
                     is_trivial, normalizer_order, parse_words, power, reddening_element, reddening_order,
                     smith_normal_form, source_sink_and_delta, twist, verify_relation)


def test_pentagon_element():
    q = build_dynkin("A_2")
    g = GroupElement(q, [0], [1, 0])
    assert is_trivial(power(g, 5))
    assert not is_trivial(power(g, 1))


def test_invalid_sigma_rejected():
    q = build_dynkin("A_2")
    with pytest.raises(UsageError):
        GroupElement(q, [0], [0, 1])


def test_inverse_and_identity():
    sig = TnwSignature((3, 2), (1, 1))
    g = twist(sig, 0)
    assert is_trivial(compose(g, inverse(g)))
    assert equal(compose(identity(g.base), g), g)


def test_twist_power_is_gamma():
    for n, w in [((2,), (1,)), ((3,), (2,)), ((2,), (3,)), ((3, 3), (1, 2))]:
        sig = TnwSignature(n, w)
        q = build_tnw(sig)
        g = gamma(sig, q)
        for i in range(sig.m):
            t = twist(sig, i, q)
            assert is_trivial(compose(power(t, sig.n[i]), power(g, -sig.w[i])))
            assert not is_trivial(compose(power(t, sig.n[i] - 1), power(g, -sig.w[i]))) or sig.n[i] == 1


def test_no_twist_weight_four():
    with pytest.raises(NoTwistError):
        twist(TnwSignature((2,), (4,)), 0)


def test_bc_twist():
    sig = TnwSignature((3,), bc=True)
    q = build_tnw(sig)
    assert is_trivial(compose(power(twist(sig, 0, q), 3), inverse(gamma(sig, q))))


def test_twists_commute():
    sig = TnwSignature((3, 3, 2), (1, 1, 1))
    q = build_tnw(sig)
    a, b = twist(sig, 0, q), twist(sig, 2, q)
    assert verify_relation(q, [(a, 1), (b, 1), (a, -1), (b, -1)])


def test_delta_exponents():
    expect = {"D4^(1,1)": 1, "E6^(1,1)": 2, "E7^(1,1)": 3, "E8^(1,1)": 5, "B2^(2,1)": 1, "B3^(1,1)": 1,
              "F4^(1,1)": 2, "F4^(2,1)": 3, "G2^(1,1)": 1, "G2^(3,1)": 2}
    for name, e in expect.items():
        sig = double_signature(name)
        assert delta_exponent(sig) == e
        source_sink_and_delta(sig)  # returns to the same labelled quiver


def test_smith_normal_form():
    d, _ = smith_normal_form([[2, 4], [6, 8]])
    assert d == [2, 4]


def test_abstract_orders():
    assert abstract_quotient_order(TnwSignature((3, 2), (1, 1)))[0] == 6
    assert abstract_quotient_order(TnwSignature((2, 2, 2), (1, 1, 1)))[0] == 8
    assert reddening_order(double_signature("E8^(1,1)")) == 6
    assert abstract_element_of_r(double_signature("E8^(1,1)")).residues == (1, 1, 1)
    assert normalizer_order(double_signature("D4^(1,1)")) == 192


def test_words():
    sig = TnwSignature((3,), (1,))
    ctx = WordContext.for_signature(sig)
    assert is_trivial(evaluate_word("tau1^3 gamma^-1", ctx))
    assert not is_trivial(evaluate_word("tau1 gamma^-1", ctx))
    assert is_trivial(evaluate_word("(tau1 gamma)^2 (gamma tau1)^-2", ctx))
    with pytest.raises(ParseError):
        evaluate_word("tau1 (gamma", ctx)
    with pytest.raises(ParseError):
        evaluate_word("bogus", ctx)


def test_parse_words_macros_and_labels():
    sig = double_signature("E6^(1,1)")
    text = "s = aut:(2,3)\nswap: s^2\n tau1 tau2 == tau2 tau1  # commute\n"
    out = parse_words(text, WordContext.for_signature(sig))
    assert [lab for lab, _ in out] == ["swap", "line3"]
    assert all(is_trivial(g) for _, g in out)


def test_e6_braid_needs_r_delta():
    sig = double_signature("E6^(1,1)")
    ctx = WordContext.for_signature(sig)
    assert not is_trivial(evaluate_word("tau1 delta tau1 (delta tau1 delta)^-1", ctx))
    assert is_trivial(evaluate_word("tau1 (r delta) tau1 ((r delta) tau1 (r delta))^-1", ctx))


@pytest.mark.parametrize("name", ["D4^(1,1)", "E6^(1,1)", "E7^(1,1)", "E8^(1,1)", "B3^(1,1)", "G2^(1,1)"])
def test_braid_relations(name):
    sig = double_signature(name)
    for i in range(sig.m):
        assert is_trivial(braid_relator(sig, i))


def test_central_element_d4_trivial():
    sig = double_signature("D4^(1,1)")
    assert all(is_trivial(central_element(sig, i)) for i in range(4))


def test_reddening_element_is_central():
    sig = double_signature("E7^(1,1)")
    q = build_tnw(sig)
    r = reddening_element(sig)
    r = GroupElement(q, r.path, r.sigma)
    for g in [twist(sig, 0, q), source_sink_and_delta(sig, q), gamma(sig, q)]:
        assert equal(compose(r, g), compose(g, r))
