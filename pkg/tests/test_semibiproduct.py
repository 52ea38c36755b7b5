import itertools
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbptools.catalog import SEMILATTICE2, bool_mult, cyclic, klein
from sbptools.errors import NotAGroup, NotASection, NotAssociative, NotClosed, NotSurjective
from sbptools.finite_algebra import FiniteMap, are_equivalent, identity_element
from sbptools.magma_action import R_pairs, verify_action
from sbptools.semibiproduct import (Semibiproduct, alpha_beta_iso, build_group_sbp,
                                    derive_tuple, factor_system_product, group_checks,
                                    identity_sbp, monoid_formula_check,
                                    pseudo_action_R, structure_battery, to_action, to_sbp,
                                    trivial_pseudo_action, verify_sbp)

from conftest import CASE2_A_FOUND, CASE3_A_FOUND, CASE1, CASE2, CASE3, sbp_1based

CASE1_A1 = sbp_1based(CASE1["X"], CASE1["A"][0], CASE1["B"], CASE1["k"], CASE1["p"],
                      CASE1["q"], CASE1["s"])


def test_printed_case1_verifies():
    for A in CASE1["A"]:
        sb = sbp_1based(CASE1["X"], A, CASE1["B"], CASE1["k"], CASE1["p"], CASE1["q"], CASE1["s"])
        assert verify_sbp(sb).valid


def test_corrected_middles_for_cases_2_and_3():
    c = CASE2
    for q in c["q"]:
        assert verify_sbp(sbp_1based(c["X"], CASE2_A_FOUND, c["B"], c["k"], c["p"], q, c["s"])).valid
    c = CASE3
    for q, s in itertools.product(c["q"], c["s"]):
        assert verify_sbp(sbp_1based(c["X"], CASE3_A_FOUND, c["B"], c["k"], c["p"], q, s)).valid


def test_printed_case2_fails_with_checkable_witness():
    c = CASE2
    sb = sbp_1based(c["X"], c["A"], c["B"], c["k"], c["p"], c["q"][0], c["s"])
    r = verify_sbp(sb)
    assert r.failing_equation == "p-hom"
    a, b = r.witness
    assert sb.p(sb.A(a, b)) != sb.B(sb.p(a), sb.p(b))


@st.composite
def map_choices(draw):
    k = draw(st.lists(st.integers(0, 2), min_size=2, max_size=2))
    p = draw(st.lists(st.integers(0, 1), min_size=3, max_size=3))
    q = draw(st.lists(st.integers(0, 1), min_size=3, max_size=3))
    s = draw(st.lists(st.integers(0, 2), min_size=2, max_size=2))
    return k, p, q, s


@settings(max_examples=300, deadline=None)
@given(map_choices())
def test_failing_equation_witness_is_checkable(maps):
    k, p, q, s = (FiniteMap(len(v), n, tuple(v)) for v, n in zip(maps, (3, 2, 2, 3)))
    sb = Semibiproduct(CASE1_A1.X, CASE1_A1.A, CASE1_A1.B, k, p, q, s)
    r = verify_sbp(sb)
    if r.valid:
        assert all(sb.A(k(q(a)), s(p(a))) == a for a in range(3))
        return
    w = r.witness
    X, A, B = sb.X, sb.A, sb.B
    if r.failing_equation == "k-hom":
        assert k(X(*w)) != A(k(w[0]), k(w[1]))
    elif r.failing_equation == "p-hom":
        assert p(A(*w)) != B(p(w[0]), p(w[1]))
    elif r.failing_equation == "qk":
        assert q(k(w)) != w
    elif r.failing_equation == "ps":
        assert p(s(w)) != w
    else:
        assert A(k(q(w)), s(p(w))) != w


def test_derived_tuple_definitions():
    sb = CASE1_A1
    d = derive_tuple(sb)
    A, k, p, q, s = sb.A, sb.k, sb.p, sb.q, sb.s
    for x, b in itertools.product(range(2), range(2)):
        assert d.rho[x][b] == q(A(k(x), s(b)))
        assert d.phi_pre[b][x] == q(A(s(b), k(x)))
    for b, b2 in itertools.product(range(2), range(2)):
        assert d.gamma[b][b2] == q(A(s(b), s(b2)))
    assert d.h == p.after(k) and d.t == q.after(s)


def test_to_action_and_alpha_beta(order3_solutions, groups):
    for res in order3_solutions.values():
        for sb in res.solutions:
            assert verify_sbp(sb).valid
            a = to_action(sb)
            assert verify_action(a, classify=False).is_action
            assert alpha_beta_iso(sb).failure(sb) is None
    for _, sb in groups:
        assert alpha_beta_iso(sb).failure(sb) is None


def test_roundtrip_agrees_on_R(example_action):
    a = example_action
    back = to_action(to_sbp(a))
    R = R_pairs(a)
    for c1, c2 in itertools.product(R, R):
        assert back(*c1, *c2) == a(*c1, *c2)
    assert back.h == a.h and back.t == a.t and back.theta == a.theta


def test_battery_needs_associative_middle(example_action):
    with pytest.raises(NotAssociative):
        structure_battery(to_sbp(example_action))


def test_idempotent_identity_diagram():
    for A in (SEMILATTICE2, bool_mult()):
        sb = identity_sbp(A)
        assert verify_sbp(sb).valid
        assert sb.p.after(sb.k).is_identity()
        assert structure_battery(sb).passed
        r = monoid_formula_check(sb)
        assert r.semigroup_agrees
    # Z2 is not idempotent: a + a differs from a
    assert verify_sbp(identity_sbp(cyclic(2))).failing_equation == "kq+sp"


def test_formula_check_on_solutions(order3_solutions):
    for res in order3_solutions.values():
        for sb in res.solutions:
            assert monoid_formula_check(sb).semigroup_agrees


def test_group_builder_errors():
    Z4, Z2 = cyclic(4), cyclic(2)
    p = FiniteMap.of([0, 1, 0, 1], 2)
    with pytest.raises(NotAGroup):
        build_group_sbp(FiniteMap.of([0, 0], 2), FiniteMap.of([0, 1], 2), SEMILATTICE2, Z2)
    with pytest.raises(NotSurjective):
        build_group_sbp(FiniteMap.of([0, 0, 0, 0], 2), FiniteMap.of([0, 0], 4), Z4, Z2)
    with pytest.raises(NotASection):
        build_group_sbp(p, FiniteMap.of([0, 2], 4), Z4, Z2)
    with pytest.raises(NotASection):
        build_group_sbp(p, FiniteMap.of([2, 1], 4), Z4, Z2)


def test_group_sbp_shape(groups):
    for name, sb in groups:
        X, A, B = sb.X, sb.A, sb.B
        assert X.order * B.order == A.order
        eA = identity_element(A)
        for a in range(A.order):
            # k q(a) + s p(a) = a with q(a) = a - s p(a)
            assert A(sb.k(sb.q(a)), sb.s(sb.p(a))) == a
        r = group_checks(sb)
        assert r.passed
        assert are_equivalent(r.factor_product, A) is not None
        assert sb.s(identity_element(B)) == eA


def test_factor_system_product_klein():
    sb = build_group_sbp(FiniteMap.of([0, 0, 1, 1], 2), FiniteMap.of([0, 2], 4), klein(), cyclic(2))
    prod = factor_system_product(sb.X, sb.B, derive_tuple(sb))
    assert are_equivalent(prod, klein()) is not None


def test_pseudo_action_R_not_closed():
    X = B = bool_mult()
    d = trivial_pseudo_action(X, B, FiniteMap.identity(2))
    assert pseudo_action_R(X, B, d).pairs == ((0, 0), (1, 0), (1, 1))
    # gamma(1, 1) = 0 sends (1,1) + (1,1) to (0, 1), outside R
    bad = replace(d, gamma=((1, 1), (1, 0)))
    with pytest.raises(NotClosed) as info:
        pseudo_action_R(X, B, bad)
    assert info.value.witness == ((1, 1), (1, 1))
