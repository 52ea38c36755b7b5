import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbptools.catalog import _RNA_PHI_XFAST, one_based
from sbptools.errors import NotUnital
from sbptools.finite_algebra import FiniteMap
from sbptools.magma_action import (MagmaAction, R_pairs, compute_R, derived_ops,
                                   in_R, is_associative_action, is_representable,
                                   is_unitary_semidirect, representability_witness,
                                   unitary_semidirect_failure, verify_action)
from sbptools.semibiproduct import to_action

from conftest import group_sbps


def _phi_from_rows(a):
    """phi as a dict read straight off the x-fastest listing."""
    out = {}
    for i, v in enumerate(_RNA_PHI_XFAST):
        x, b, x2, b2 = i % 2, (i // 2) % 2, (i // 4) % 2, (i // 8) % 2
        out[x, b, x2, b2] = v - 1
    return out


def test_phi_layout(example_action):
    phi = _phi_from_rows(example_action)
    for key, v in phi.items():
        assert example_action(*key) == v
    assert example_action.theta == one_based([[1, 2], [1, 1]])


def test_example_derived_operations(example_action):
    ops = derived_ops(example_action)
    assert ops.xplus == ((0, 1), (1, 0))
    assert ops.xpow == ((0, 0), (1, 1))
    assert ops.bdot == ((0, 1), (0, 0))
    assert ops.btimes == ((0, 0), (0, 0))


def test_R_matches_definition(example_action):
    a = example_action
    phi = _phi_from_rows(a)
    h, t, th = a.h, a.t, a.theta
    oracle = [(x, b) for x in range(2) for b in range(2)
              if phi[x, h(x), t(b), b] == x and th(h(x), b) == b]
    assert R_pairs(a) == oracle
    assert len(oracle) == 4


def test_example_classification(example_action):
    r = verify_action(example_action)
    assert r.is_action and r.representable and not r.associative
    assert is_representable(example_action, everywhere=True)
    assert not is_associative_action(example_action)


def test_example_unitary_needs_units(example_action):
    # theta on B has no identity element
    with pytest.raises(NotUnital):
        is_unitary_semidirect(example_action)


def test_broken_hom_compat_witness(example_action):
    a = example_action
    # move phi(0, h0, 0, h0) off its required value
    bad = a.replace_phi({(0, 0, 0, 0): 1})
    r = verify_action(bad)
    assert not r.is_action
    if r.failed_condition == "hom-compat":
        x, x2 = r.witness
        assert bad.h(bad(x, bad.h(x), x2, bad.h(x2))) != bad.theta(bad.h(x), bad.h(x2))
    else:
        assert r.failed_condition in ("h-in-R", "t-in-R", "R-closure")


def _random_action(draw_values, n, m):
    th, phi, h, t = draw_values
    return MagmaAction(n, m, one_based([[v + 1 for v in th[i * m:(i + 1) * m]] for i in range(m)]),
                       tuple(phi), FiniteMap(n, m, tuple(h)), FiniteMap(m, n, tuple(t)))


@st.composite
def actions(draw):
    n, m = draw(st.integers(1, 2)), draw(st.integers(1, 2))
    th = draw(st.lists(st.integers(0, m - 1), min_size=m * m, max_size=m * m))
    phi = draw(st.lists(st.integers(0, n - 1), min_size=(n * m) ** 2, max_size=(n * m) ** 2))
    h = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    t = draw(st.lists(st.integers(0, n - 1), min_size=m, max_size=m))
    return _random_action((th, phi, h, t), n, m)


@settings(max_examples=300, deadline=None)
@given(actions())
def test_failure_witnesses_are_checkable(a):
    r = verify_action(a)
    if r.is_action:
        R = R_pairs(a)
        for c1, c2 in itertools.product(R, R):
            assert in_R(a, a(*c1, *c2), a.theta(c1[1], c2[1]))
        return
    w = r.witness
    if r.failed_condition == "hom-compat":
        x, x2 = w
        assert a.h(a(x, a.h(x), x2, a.h(x2))) != a.theta(a.h(x), a.h(x2))
    elif r.failed_condition == "h-in-R":
        assert not in_R(a, w, a.h(w))
    elif r.failed_condition == "t-in-R":
        assert not in_R(a, a.t(w), w)
    else:
        (x, b), (x2, b2) = w
        assert in_R(a, x, b) and in_R(a, x2, b2)
        assert not in_R(a, a(x, b, x2, b2), a.theta(b, b2))


@settings(max_examples=200, deadline=None)
@given(actions())
def test_associative_implies_representable_sampled(a):
    r = verify_action(a)
    if r.is_action and r.associative:
        assert r.representable
    if r.is_action and not r.representable:
        (x, b), (x2, b2) = representability_witness(a)
        assert in_R(a, x, b) and in_R(a, x2, b2)


def test_compute_R_is_a_magma_on_R(example_action):
    R = compute_R(example_action)
    assert R.op.order == len(R.pairs)
    for i, c in enumerate(R.pairs):
        assert R.index_of(c) == i


def test_unitary_semidirect_from_groups():
    results = {}
    for name, sb in group_sbps():
        a = to_action(sb)
        assert verify_action(a).is_action
        results.setdefault(name, []).append(unitary_semidirect_failure(a))
    # Z2 x Z2 with the homomorphic section s(1) = (1, 0) is a semidirect product
    assert results["Z2xZ2"][0] is None
    # Z4 has no homomorphic section: phi(0, 1, 0, 1) = q(s1 + s1) is not 0
    for w in results["Z4"]:
        assert w is not None and w[0] == "phi(0,b,0,b')=0"


def test_idempotent_diagonal_xplus_is_theta():
    from sbptools.catalog import SEMILATTICE2, idempotent_diagonal_action
    for B in (SEMILATTICE2, one_based([[1, 2], [2, 1]])):
        a = idempotent_diagonal_action(B)
        assert derived_ops(a).xplus == B.table


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_bdot_reduces_to_xplus_when_phi_ignores_B(n, m, data):
    # phi depending only on (x, x') and t constant
    inner = data.draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    th = data.draw(st.lists(st.integers(0, m - 1), min_size=m * m, max_size=m * m))
    h = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    c = data.draw(st.integers(0, n - 1))
    from sbptools.finite_algebra import FiniteMagma
    a = MagmaAction.from_function(FiniteMagma.from_flat(m, th), n,
                                  lambda x, b, x2, b2: inner[x * n + x2],
                                  FiniteMap(n, m, tuple(h)), FiniteMap.constant(m, n, c))
    ops = derived_ops(a)
    for b in range(m):
        for x in range(n):
            assert ops.bdot[b][x] == ops.xplus[c][x]
