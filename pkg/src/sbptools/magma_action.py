"""Magma-actions ``(X, B, theta, phi, h, t)`` on finite carriers.

``theta`` is a magma on ``B``; ``phi`` is a 4-ary operation
``X x B x X x B -> X`` stored flat in row-major ``(x, b, x', b')`` order.
The set ``R`` of pairs fixed by ``phi`` and ``theta`` carries the
reconstructed middle operation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import AlgebraError, NotClosed, NotUnital
from .finite_algebra import (FiniteMagma, FiniteMap, identity_element,
                             nonassociative_triple)

Pair = tuple[int, int]


@dataclass(frozen=True)
class MagmaAction:
    x_order: int
    b_order: int
    theta: FiniteMagma
    phi: tuple[int, ...]
    h: FiniteMap
    t: FiniteMap

    def __post_init__(self):
        n, m = self.x_order, self.b_order
        phi = tuple(int(v) for v in self.phi)
        object.__setattr__(self, "phi", phi)
        if self.theta.order != m:
            raise AlgebraError(f"theta has order {self.theta.order}, B has {m}")
        if len(phi) != (n * m) ** 2:
            raise AlgebraError(f"phi needs {(n * m) ** 2} entries, got {len(phi)}")
        if any(not 0 <= v < n for v in phi):
            raise AlgebraError("phi takes a value outside X")
        if (self.h.dom_order, self.h.cod_order) != (n, m):
            raise AlgebraError("h must map X to B")
        if (self.t.dom_order, self.t.cod_order) != (m, n):
            raise AlgebraError("t must map B to X")

    def index(self, x: int, b: int, x2: int, b2: int) -> int:
        n, m = self.x_order, self.b_order
        return ((x * m + b) * n + x2) * m + b2

    def __call__(self, x: int, b: int, x2: int, b2: int) -> int:
        return self.phi[self.index(x, b, x2, b2)]

    @classmethod
    def from_function(cls, theta: FiniteMagma, x_order: int, fn, h: FiniteMap,
                      t: FiniteMap) -> "MagmaAction":
        m = theta.order
        phi = tuple(fn(x, b, x2, b2) for x, b, x2, b2 in
                    itertools.product(range(x_order), range(m), range(x_order), range(m)))
        return cls(x_order, m, theta, phi, h, t)

    def replace_phi(self, updates: dict) -> "MagmaAction":
        phi = list(self.phi)
        for key, v in updates.items():
            phi[self.index(*key)] = v
        return MagmaAction(self.x_order, self.b_order, self.theta, tuple(phi), self.h, self.t)


@dataclass(frozen=True)
class RMagma:
    pairs: tuple[Pair, ...]
    op: FiniteMagma
    position: dict = field(compare=False, repr=False)

    def index_of(self, pair: Pair) -> int:
        return self.position[pair]

    def add(self, p1: Pair, p2: Pair) -> Pair:
        return self.pairs[self.op(self.position[p1], self.position[p2])]


class DerivedOps(NamedTuple):
    xplus: tuple[tuple[int, ...], ...]   # X x X -> X
    xpow: tuple[tuple[int, ...], ...]    # X x B -> X
    bdot: tuple[tuple[int, ...], ...]    # B x X -> X
    btimes: tuple[tuple[int, ...], ...]  # B x B -> X


@dataclass
class ActionReport:
    is_action: bool
    failed_condition: Optional[str] = None   # hom-compat | h-in-R | t-in-R | R-closure
    witness: object = None
    representable: Optional[bool] = None
    representable_witness: object = None
    associative: Optional[bool] = None
    associative_witness: object = None


def in_R(a: MagmaAction, x: int, b: int) -> bool:
    hx = a.h(x)
    return a(x, hx, a.t(b), b) == x and a.theta(hx, b) == b


def R_pairs(a: MagmaAction) -> list[Pair]:
    return [(x, b) for x in range(a.x_order) for b in range(a.b_order) if in_R(a, x, b)]


def compute_R(a: MagmaAction) -> RMagma:
    pairs = tuple(R_pairs(a))
    pos = {p: i for i, p in enumerate(pairs)}
    rows = []
    for (x, b) in pairs:
        row = []
        for (x2, b2) in pairs:
            res = (a(x, b, x2, b2), a.theta(b, b2))
            if res not in pos:
                raise NotClosed(f"({x},{b})+({x2},{b2}) = {res} leaves R",
                                witness=((x, b), (x2, b2)))
            row.append(pos[res])
        rows.append(tuple(row))
    if not pairs:
        # R is empty only for a malformed action; an empty magma is not representable
        raise NotClosed("R is empty")
    return RMagma(pairs, FiniteMagma(tuple(rows)), pos)


def verify_action(a: MagmaAction, classify: bool = True) -> ActionReport:
    n, m = a.x_order, a.b_order
    h, t, theta = a.h, a.t, a.theta
    for x in range(n):
        for x2 in range(n):
            if h(a(x, h(x), x2, h(x2))) != theta(h(x), h(x2)):
                return ActionReport(False, "hom-compat", (x, x2))
    for x in range(n):
        if not in_R(a, x, h(x)):
            return ActionReport(False, "h-in-R", x)
    for b in range(m):
        if not in_R(a, t(b), b):
            return ActionReport(False, "t-in-R", b)
    pairs = R_pairs(a)
    members = set(pairs)
    for p1 in pairs:
        for p2 in pairs:
            res = (a(*p1, *p2), theta(p1[1], p2[1]))
            if res not in members:
                return ActionReport(False, "R-closure", (p1, p2))
    report = ActionReport(True)
    if classify:
        report.representable_witness = representability_witness(a)
        report.representable = report.representable_witness is None
        report.associative_witness = associativity_witness(a)
        report.associative = report.associative_witness is None
    return report


def derived_ops(a: MagmaAction) -> DerivedOps:
    # b.x uses (t(b), b) in the first two slots: phi's first argument lives in X.
    n, m = a.x_order, a.b_order
    h, t = a.h, a.t
    xplus = tuple(tuple(a(x, h(x), x2, h(x2)) for x2 in range(n)) for x in range(n))
    xpow = tuple(tuple(a(x, h(x), t(b), b) for b in range(m)) for x in range(n))
    bdot = tuple(tuple(a(t(b), b, x, h(x)) for x in range(n)) for b in range(m))
    btimes = tuple(tuple(a(t(b), b, t(b2), b2) for b2 in range(m)) for b in range(m))
    return DerivedOps(xplus, xpow, bdot, btimes)


def represented_value(a: MagmaAction, ops: DerivedOps, x, b, x2, b2) -> int:
    """``((x + b.x') + theta(b, h x') x b')^theta(b, b')``."""
    theta = a.theta
    inner = ops.xplus[ops.xplus[x][ops.bdot[b][x2]]][ops.btimes[theta(b, a.h(x2))][b2]]
    return ops.xpow[inner][theta(b, b2)]


def representability_witness(a: MagmaAction, everywhere: bool = False):
    """First pair ``((x, b), (x', b'))`` where phi differs from the value
    rebuilt from its four derived operations. Pairs range over ``R x R``,
    or over all of ``(X x B)^2`` with ``everywhere``."""
    ops = derived_ops(a)
    if everywhere:
        cells = [(x, b) for x in range(a.x_order) for b in range(a.b_order)]
    else:
        cells = R_pairs(a)
    for (x, b) in cells:
        for (x2, b2) in cells:
            if a(x, b, x2, b2) != represented_value(a, ops, x, b, x2, b2):
                return ((x, b), (x2, b2))
    return None


def is_representable(a: MagmaAction, everywhere: bool = False) -> bool:
    return representability_witness(a, everywhere) is None


def associativity_witness(a: MagmaAction):
    """First failing triple of R members, as pairs, or None."""
    R = compute_R(a)
    w = nonassociative_triple(R.op)
    if w is None:
        return None
    return tuple(R.pairs[i] for i in w)


def is_associative_action(a: MagmaAction) -> bool:
    return associativity_witness(a) is None


def unitary_semidirect_failure(a: MagmaAction) -> Optional[tuple]:
    """First failing unit condition of a semidirect product of unitary magmas.

    Units are the identities of ``(X, +)`` and ``(B, theta)``; raises
    NotUnital when either is missing. The morphism condition on the
    section is checked as ``phi(0, b, 0, b') = 0`` for all ``b, b'``.
    """
    ops = derived_ops(a)
    ex = identity_element(FiniteMagma(ops.xplus))
    eb = identity_element(a.theta)
    if ex is None or eb is None:
        raise NotUnital("X and B must both have identity elements")
    n, m = a.x_order, a.b_order
    for x in range(n):
        if a.h(x) != eb:
            return ("h(x)=0", x)
    for b in range(m):
        if a.t(b) != ex:
            return ("t(b)=0", b)
    for b in range(m):
        if a.theta(eb, b) != b or a.theta(b, eb) != b:
            return ("theta unital", b)
    for x in range(n):
        for b in range(m):
            if a(ex, eb, x, b) != x:
                return ("phi(0,0,x,b)=x", (x, b))
            if a(x, b, ex, eb) != x:
                return ("phi(x,b,0,0)=x", (x, b))
            if a(x, eb, ex, b) != x:
                return ("phi(x,0,0,b)=x", (x, b))
    for b in range(m):
        for b2 in range(m):
            if a(ex, b, ex, b2) != ex:
                return ("phi(0,b,0,b')=0", (b, b2))
    return None


def is_unitary_semidirect(a: MagmaAction) -> bool:
    return unitary_semidirect_failure(a) is None
