import itertools

import pytest

from sbptools.catalog import (ORDER2_SEMIGROUPS, cyclic, klein, one_based,
                              representable_nonassociative_action, sign_map,
                              symmetric)
from sbptools.finite_algebra import FiniteMap
from sbptools.semibiproduct import Semibiproduct, build_group_sbp

M1, M2, M3, M4 = ORDER2_SEMIGROUPS


def z(values):
    return tuple(v - 1 for v in values)


def sbp_1based(X, A_rows, B, k, p, q, s):
    A = one_based(A_rows)
    na, nx, nb = A.order, X.order, B.order
    return Semibiproduct(X, A, B, FiniteMap(nx, na, z(k)), FiniteMap(na, nb, z(p)),
                         FiniteMap(na, nx, z(q)), FiniteMap(nb, na, z(s)))


# middle tables and maps as printed for the four detailed order-3 cases
A1 = [[1, 1, 1], [1, 2, 3], [1, 3, 1]]
A2 = [[1, 1, 1], [1, 2, 3], [3, 3, 3]]
CASE1 = dict(X=M1, B=M1, k=(1, 2), p=(1, 2, 1), q=(1, 2, 2), s=(3, 2), A=[A1, A2])
CASE2 = dict(X=M1, B=M3, k=(1, 2), p=(1, 1, 2), s=(2, 3), A=A1, q=[(1, 2, 1), (1, 2, 2)])
CASE3 = dict(X=M2, B=M1, k=(1, 2), p=(2, 2, 1), A=A1,
             q=[(1, 2, 1), (1, 2, 2)], s=[(3, 1), (3, 2)])
CASE4 = dict(X=M3, B=M1, k=(1, 2), p=(2, 2, 1), s=(3, 1),
             A=[[1, 2, 3], [2, 1, 3], [3, 3, 3]], q=[(1, 2, 1), (1, 2, 2)])

# the middle tables that do carry the printed maps in cases 2 and 3
CASE2_A_FOUND = [[1, 1, 3], [1, 2, 3], [3, 3, 1]]
CASE3_A_FOUND = [[1, 1, 3], [2, 2, 3], [3, 3, 3]]


def printed_cases():
    """(case, sbp) for every printed variant of the four detailed cases."""
    c = CASE1
    for A in c["A"]:
        yield 1, sbp_1based(c["X"], A, c["B"], c["k"], c["p"], c["q"], c["s"])
    c = CASE2
    for q in c["q"]:
        yield 2, sbp_1based(c["X"], c["A"], c["B"], c["k"], c["p"], q, c["s"])
    c = CASE3
    for q, s in itertools.product(c["q"], c["s"]):
        yield 3, sbp_1based(c["X"], c["A"], c["B"], c["k"], c["p"], q, s)
    c = CASE4
    for q in c["q"]:
        yield 4, sbp_1based(c["X"], c["A"], c["B"], c["k"], c["p"], q, c["s"])


def group_sbps():
    out = []
    Z4, Z2 = cyclic(4), cyclic(2)
    for s1 in (1, 3):
        out.append(("Z4", build_group_sbp(FiniteMap.of([0, 1, 0, 1], 2),
                                          FiniteMap.of([0, s1], 4), Z4, Z2)))
    # Z2 x Z2 with pairs (a, b) encoded 2a + b, p the first projection
    V = klein()
    for s1 in (2, 3):
        out.append(("Z2xZ2", build_group_sbp(FiniteMap.of([0, 0, 1, 1], 2),
                                             FiniteMap.of([0, s1], 4), V, Z2)))
    S3, elems = symmetric(3)
    sgn = sign_map(elems)
    for a in range(6):
        if sgn(a) == 1:
            out.append(("S3", build_group_sbp(sgn, FiniteMap.of([0, a], 6), S3, Z2)))
    return out


@pytest.fixture(scope="session")
def example_action():
    return representable_nonassociative_action()


@pytest.fixture(scope="session")
def groups():
    return group_sbps()


@pytest.fixture(scope="session")
def order3_solutions():
    from sbptools.enumeration import EnumSpec, enumerate_semibiproducts
    out = {}
    for i, X in enumerate(ORDER2_SEMIGROUPS):
        for j, B in enumerate(ORDER2_SEMIGROUPS):
            out[i, j] = enumerate_semibiproducts(EnumSpec(X, B, 3), workers=1)
    return out


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
