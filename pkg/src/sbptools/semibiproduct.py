"""Semibiproduct diagrams ``X -k-> A -p-> B`` with set maps ``q: A -> X``
and ``s: B -> A`` satisfying ``kq + sp = 1_A``, ``ps = 1_B``, ``qk = 1_X``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .errors import (AlgebraError, DimensionMismatch, NotAGroup, NotASection,
                     NotAssociative, NotClosed, NotSurjective)
from .finite_algebra import (FiniteMagma, FiniteMap, homomorphism_witness,
                             identity_element, inverse_of, is_associative,
                             is_group, nonassociative_triple)
from .magma_action import MagmaAction, RMagma, compute_R

Tab = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Semibiproduct:
    X: FiniteMagma
    A: FiniteMagma
    B: FiniteMagma
    k: FiniteMap
    p: FiniteMap
    q: FiniteMap
    s: FiniteMap

    def __post_init__(self):
        nx, na, nb = self.X.order, self.A.order, self.B.order
        expect = {"k": (nx, na), "p": (na, nb), "q": (na, nx), "s": (nb, na)}
        for name, dims in expect.items():
            f = getattr(self, name)
            if (f.dom_order, f.cod_order) != dims:
                raise DimensionMismatch(
                    f"{name} is {f.dom_order}->{f.cod_order}, expected {dims[0]}->{dims[1]}")

    def key(self):
        return (self.A.flat(), self.k.values, self.p.values, self.q.values, self.s.values)


@dataclass
class SbpReport:
    valid: bool
    failing_equation: Optional[str] = None   # k-hom | p-hom | qk | ps | kq+sp
    witness: object = None


def verify_sbp(sb: Semibiproduct) -> SbpReport:
    w = homomorphism_witness(sb.k, sb.X, sb.A)
    if w is not None:
        return SbpReport(False, "k-hom", w)
    w = homomorphism_witness(sb.p, sb.A, sb.B)
    if w is not None:
        return SbpReport(False, "p-hom", w)
    for x in range(sb.X.order):
        if sb.q(sb.k(x)) != x:
            return SbpReport(False, "qk", x)
    for b in range(sb.B.order):
        if sb.p(sb.s(b)) != b:
            return SbpReport(False, "ps", b)
    for a in range(sb.A.order):
        if sb.A(sb.k(sb.q(a)), sb.s(sb.p(a))) != a:
            return SbpReport(False, "kq+sp", a)
    return SbpReport(True)


def identity_sbp(A: FiniteMagma) -> Semibiproduct:
    one = FiniteMap.identity(A.order)
    return Semibiproduct(A, A, A, one, one, one, one)


@dataclass(frozen=True)
class PseudoActionData:
    h: FiniteMap
    rho: Tab        # X x B -> X
    phi_pre: Tab    # B x X -> X
    gamma: Tab      # B x B -> X
    t: Optional[FiniteMap] = None


def derive_tuple(sb: Semibiproduct) -> PseudoActionData:
    A, k, q, s = sb.A, sb.k, sb.q, sb.s
    nx, nb = sb.X.order, sb.B.order
    return PseudoActionData(
        h=sb.p.after(k),
        rho=tuple(tuple(q(A(k(x), s(b))) for b in range(nb)) for x in range(nx)),
        phi_pre=tuple(tuple(q(A(s(b), k(x))) for x in range(nx)) for b in range(nb)),
        gamma=tuple(tuple(q(A(s(b), s(b2))) for b2 in range(nb)) for b in range(nb)),
        t=q.after(s),
    )


def to_action(sb: Semibiproduct) -> MagmaAction:
    A, k, q, s = sb.A, sb.k, sb.q, sb.s

    def phi(x, b, x2, b2):
        return q(A(A(k(x), s(b)), A(k(x2), s(b2))))

    return MagmaAction.from_function(sb.B, sb.X.order, phi, sb.p.after(k), q.after(s))


def to_sbp(a: MagmaAction) -> Semibiproduct:
    R = compute_R(a)
    nr = len(R.pairs)
    k = FiniteMap(a.x_order, nr, tuple(R.index_of((x, a.h(x))) for x in range(a.x_order)))
    p = FiniteMap(nr, a.b_order, tuple(b for _, b in R.pairs))
    q = FiniteMap(nr, a.x_order, tuple(x for x, _ in R.pairs))
    s = FiniteMap(a.b_order, nr, tuple(R.index_of((a.t(b), b)) for b in range(a.b_order)))
    X = FiniteMagma(tuple(tuple(a(x, a.h(x), x2, a.h(x2)) for x2 in range(a.x_order))
                          for x in range(a.x_order)))
    return Semibiproduct(X, R.op, a.theta, k, p, q, s)


@dataclass
class AlphaBeta:
    pairs: tuple           # members of R, in index order
    alpha: FiniteMap       # R -> A
    beta: FiniteMap        # A -> R

    def failure(self, sb: Semibiproduct) -> Optional[tuple]:
        """Why ``alpha``/``beta`` fail to be mutually inverse isomorphisms of
        semibiproducts between ``to_sbp(to_action(sb))`` and ``sb``."""
        back = to_sbp(to_action(sb))
        if not self.alpha.after(self.beta).is_identity():
            return ("alpha.beta != 1_A", None)
        if not self.beta.after(self.alpha).is_identity():
            return ("beta.alpha != 1_R", None)
        w = homomorphism_witness(self.alpha, back.A, sb.A)
        if w is not None:
            return ("alpha not a homomorphism", w)
        if self.beta.after(sb.k) != back.k:
            return ("beta.k != <1,h>", None)
        if sb.p.after(self.alpha) != back.p:
            return ("p.alpha != pi_B", None)
        if sb.q.after(self.alpha) != back.q:
            return ("q.alpha != pi_X", None)
        if self.beta.after(sb.s) != back.s:
            return ("beta.s != <t,1>", None)
        return None


def alpha_beta_iso(sb: Semibiproduct) -> AlphaBeta:
    a = to_action(sb)
    R = compute_R(a)
    alpha = FiniteMap(len(R.pairs), sb.A.order,
                      tuple(sb.A(sb.k(x), sb.s(b)) for x, b in R.pairs))
    try:
        beta = FiniteMap(sb.A.order, len(R.pairs),
                         tuple(R.index_of((sb.q(x), sb.p(x))) for x in range(sb.A.order)))
    except KeyError:
        raise AlgebraError("<q,p> leaves R: not a semibiproduct") from None
    return AlphaBeta(R.pairs, alpha, beta)


# --- semigroup structure theorem -------------------------------------------

def _xsum(X: FiniteMagma, *xs: int) -> int:
    acc = xs[0]
    for x in xs[1:]:
        acc = X(acc, x)
    return acc


def semigroup_R(sb: Semibiproduct, d: Optional[PseudoActionData] = None) -> list[tuple[int, int]]:
    """Pairs with ``rho(x, b) = x`` and ``h(x) + b = b``."""
    d = d or derive_tuple(sb)
    return [(x, b) for x in range(sb.X.order) for b in range(sb.B.order)
            if d.rho[x][b] == x and sb.B(d.h(x), b) == b]


def semigroup_product(sb: Semibiproduct, d: PseudoActionData, x, b, x2, b2):
    """``(rho(x + b.x' + gamma(b + h x', b'), b + b'), b + b')``."""
    X, B = sb.X, sb.B
    bb = B(b, b2)
    inner = _xsum(X, x, d.phi_pre[b][x2], d.gamma[B(b, d.h(x2))][b2])
    return (d.rho[inner][bb], bb)


@dataclass
class BatteryReport:
    items: dict = field(default_factory=dict)   # item number -> (passed, witness)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.items.values())

    def failed_items(self) -> list[int]:
        return [i for i, (ok, _) in sorted(self.items.items()) if not ok]


def _first(gen):
    return next(iter(gen), None)


def structure_battery(sb: Semibiproduct) -> BatteryReport:
    for name in ("X", "A", "B"):
        if not is_associative(getattr(sb, name)):
            raise NotAssociative(f"{name} is not a semigroup")
    X, A, B, k, p, q, s = sb.X, sb.A, sb.B, sb.k, sb.p, sb.q, sb.s
    d = derive_tuple(sb)
    h = d.h
    nx, na, nb = X.order, A.order, B.order
    rep = BatteryReport()
    items = rep.items

    w = _first(x for x in range(nx) if h(x) != B(h(x), h(x)))
    items[1] = (w is None, w)
    w = _first(a for a in range(na) if p(a) != B(h(q(a)), p(a)))
    items[2] = (w is None, w)
    w = _first(a for a in range(na) if q(a) != d.rho[q(a)][p(a)])
    items[3] = (w is None, w)

    def rebuilt(a, a2):
        inner = _xsum(X, q(a), d.phi_pre[p(a)][q(a2)], d.gamma[B(p(a), h(q(a2)))][p(a2)])
        return A(k(inner), s(p(A(a, a2))))

    w = _first((a, a2) for a in range(na) for a2 in range(na) if A(a, a2) != rebuilt(a, a2))
    items[4] = (w is None, w)

    beta_vals = [(q(a), p(a)) for a in range(na)]
    seen = {}
    w = None
    for a, v in enumerate(beta_vals):
        if v in seen:
            w = (seen[v], a)
            break
        seen[v] = a
    items[5] = (w is None, w)

    R = semigroup_R(sb, d)
    Rset = set(R)
    diff = sorted(Rset.symmetric_difference(beta_vals))
    items[6] = (not diff, diff[0] if diff else None)

    alpha = {pair: A(k(pair[0]), s(pair[1])) for pair in R}
    ok = sorted(alpha.values()) == list(range(na))
    items[7] = (ok, None if ok else sorted(alpha.values()))

    w = _first((c, c2) for c in R for c2 in R
               if semigroup_product(sb, d, *c, *c2) not in Rset)
    items[8] = (w is None, w)

    if w is None:
        pos = {c: i for i, c in enumerate(R)}
        Rop = FiniteMagma(tuple(tuple(pos[semigroup_product(sb, d, *c, *c2)] for c2 in R)
                                for c in R))
        tri = nonassociative_triple(Rop)
        items[9] = (tri is None, tri and tuple(R[i] for i in tri))
        w = _first((c, c2) for c in R for c2 in R
                   if alpha[semigroup_product(sb, d, *c, *c2)] != A(alpha[c], alpha[c2]))
        if w is None:
            w = _first(a for a in range(na) if alpha.get(beta_vals[a]) != a)
        items[10] = (w is None and items[7][0], w)
        try:
            bottom = Semibiproduct(
                X, Rop, B,
                FiniteMap(nx, len(R), tuple(pos[(x, h(x))] for x in range(nx))),
                FiniteMap(len(R), nb, tuple(b for _, b in R)),
                FiniteMap(len(R), nx, tuple(x for x, _ in R)),
                FiniteMap(nb, len(R), tuple(pos[(d.t(b), b)] for b in range(nb))))
            r = verify_sbp(bottom)
            items[11] = (r.valid, None if r.valid else (r.failing_equation, r.witness))
        except KeyError as e:
            items[11] = (False, ("iota leaves R", e.args[0]))
    else:
        for i in (9, 10, 11):
            items[i] = (False, "R not closed")
    return rep


@dataclass
class FormulaReport:
    monoid_agrees: bool          # unmodified formula equals the h-corrected one on R x R
    semigroup_agrees: bool       # h-corrected formula equals the transported operation
    witness: object = None


def monoid_formula_check(sb: Semibiproduct) -> FormulaReport:
    X, B = sb.X, sb.B
    d = derive_tuple(sb)
    R = semigroup_R(sb, d)
    beta = {a: (sb.q(a), sb.p(a)) for a in range(sb.A.order)}

    def corrected(x, b, x2, b2):
        bb = B(b, b2)
        return (d.rho[_xsum(X, x, d.phi_pre[b][x2], d.gamma[B(b, d.h(x2))][b2])][bb], bb)

    def plain(x, b, x2, b2):
        bb = B(b, b2)
        return (d.rho[_xsum(X, x, d.phi_pre[b][x2], d.gamma[b][b2])][bb], bb)

    def transported(x, b, x2, b2):
        A, k, s = sb.A, sb.k, sb.s
        return beta[A(A(k(x), s(b)), A(k(x2), s(b2)))]

    monoid_ok = semigroup_ok = True
    witness = None
    for c in R:
        for c2 in R:
            want = transported(*c, *c2)
            if corrected(*c, *c2) != want and semigroup_ok:
                semigroup_ok = False
                witness = witness or ("corrected", c, c2)
            if plain(*c, *c2) != corrected(*c, *c2) and monoid_ok:
                monoid_ok = False
                witness = witness or ("plain", c, c2)
    return FormulaReport(monoid_ok, semigroup_ok, witness)


# --- pseudo-actions ---------------------------------------------------------

def pseudo_action_R(X: FiniteMagma, B: FiniteMagma, d: PseudoActionData) -> RMagma:
    """``R = {(x, b) : rho(x, b) = x, h(x) + b = b}`` with the h-corrected
    semigroup operation. Raises NotClosed if the operation leaves R."""
    pairs = tuple((x, b) for x in range(X.order) for b in range(B.order)
                  if d.rho[x][b] == x and B(d.h(x), b) == b)
    pos = {c: i for i, c in enumerate(pairs)}
    rows = []
    for (x, b) in pairs:
        row = []
        for (x2, b2) in pairs:
            bb = B(b, b2)
            res = (d.rho[_xsum(X, x, d.phi_pre[b][x2], d.gamma[B(b, d.h(x2))][b2])][bb], bb)
            if res not in pos:
                raise NotClosed(f"{(x, b)} + {(x2, b2)} = {res} leaves R",
                                witness=((x, b), (x2, b2)))
            row.append(pos[res])
        rows.append(tuple(row))
    return RMagma(pairs, FiniteMagma(tuple(rows)), pos)


def action_from_pseudo(X: FiniteMagma, B: FiniteMagma, d: PseudoActionData) -> MagmaAction:
    """Magma-action whose phi is the h-corrected semigroup formula on all of
    ``(X x B)^2``; ``d.t`` must be given."""
    if d.t is None:
        raise AlgebraError("pseudo-action data carries no t map")

    def phi(x, b, x2, b2):
        bb = B(b, b2)
        return d.rho[_xsum(X, x, d.phi_pre[b][x2], d.gamma[B(b, d.h(x2))][b2])][bb]

    return MagmaAction.from_function(B, X.order, phi, d.h, d.t)


def trivial_pseudo_action(X: FiniteMagma, B: FiniteMagma, h: FiniteMap,
                          t: Optional[FiniteMap] = None) -> PseudoActionData:
    """``rho(x, b) = x``, ``b.x = x`` and ``gamma`` constant at X's identity."""
    e = identity_element(X)
    if e is None:
        raise AlgebraError("X needs an identity for the trivial factor system")
    nx, nb = X.order, B.order
    return PseudoActionData(
        h=h,
        rho=tuple(tuple(x for _ in range(nb)) for x in range(nx)),
        phi_pre=tuple(tuple(range(nx)) for _ in range(nb)),
        gamma=tuple(tuple(e for _ in range(nb)) for _ in range(nb)),
        t=t,
    )


# --- groups -----------------------------------------------------------------

def group_minus(A: FiniteMagma, a: int, b: int) -> int:
    """``a - b`` meaning ``a + (-b)``."""
    return A(a, inverse_of(A, b))


def build_group_sbp(p_map: FiniteMap, s_map: FiniteMap, A: FiniteMagma,
                    B: FiniteMagma) -> Semibiproduct:
    """Semibiproduct from a surjective group homomorphism with a section.

    ``X`` is the kernel of ``p`` with elements in increasing ``A`` order and
    ``k`` the inclusion; ``q`` solves ``kq(a) = a - sp(a)``. The section must
    send the identity to the identity, otherwise ``qk`` cannot be ``1_X``.
    """
    if not is_group(A) or not is_group(B):
        raise NotAGroup("A and B must be groups")
    if (p_map.dom_order, p_map.cod_order) != (A.order, B.order):
        raise DimensionMismatch("p must map A to B")
    if (s_map.dom_order, s_map.cod_order) != (B.order, A.order):
        raise DimensionMismatch("s must map B to A")
    if homomorphism_witness(p_map, A, B) is not None:
        raise AlgebraError("p is not a homomorphism")
    if not p_map.is_surjective():
        raise NotSurjective("p is not surjective")
    if not p_map.after(s_map).is_identity():
        raise NotASection("p.s is not the identity on B")
    eA, eB = identity_element(A), identity_element(B)
    if s_map(eB) != eA:
        raise NotASection("s must send the identity of B to the identity of A")
    kernel = [a for a in range(A.order) if p_map(a) == eB]
    pos = {a: i for i, a in enumerate(kernel)}
    X = A.subtable(kernel)
    k = FiniteMap(len(kernel), A.order, tuple(kernel))
    q = FiniteMap(A.order, len(kernel),
                  tuple(pos[group_minus(A, a, s_map(p_map(a)))] for a in range(A.order)))
    return Semibiproduct(X, A, B, k, p_map, q, s_map)


@dataclass
class GroupReport:
    q_unique: bool
    h_trivial: bool
    rho_trivial: bool
    factor_product_iso: bool
    factor_product: Optional[FiniteMagma] = None
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.q_unique and self.h_trivial and self.rho_trivial and self.factor_product_iso


def factor_system_product(X: FiniteMagma, B: FiniteMagma, d: PseudoActionData) -> FiniteMagma:
    """``(x, b) + (x', b') = (x + b.x' + gamma(b, b'), b + b')`` on ``X x B``,
    pair ``(x, b)`` encoded as ``x * |B| + b``."""
    nb = B.order
    cells = list(itertools.product(range(X.order), range(nb)))
    return FiniteMagma(tuple(
        tuple(_xsum(X, x, d.phi_pre[b][x2], d.gamma[b][b2]) * nb + B(b, b2)
              for x2, b2 in cells)
        for x, b in cells))


def group_checks(sb: Semibiproduct) -> GroupReport:
    X, A, B, k, p, q, s = sb.X, sb.A, sb.B, sb.k, sb.p, sb.q, sb.s
    if not (is_group(X) and is_group(A) and is_group(B)):
        raise NotAGroup("X, A and B must be groups")
    d = derive_tuple(sb)
    eB = identity_element(B)
    witness = None

    q_unique = True
    for a in range(A.order):
        target = group_minus(A, a, s(p(a)))
        sols = [x for x in range(X.order) if k(x) == target]
        if sols != [q(a)]:
            q_unique = False
            witness = witness or ("q", a)
            break
    h_trivial = all(d.h(x) == eB for x in range(X.order))
    if not h_trivial:
        witness = witness or ("h", next(x for x in range(X.order) if d.h(x) != eB))
    rho_trivial = all(d.rho[x][b] == x for x in range(X.order) for b in range(B.order))
    if not rho_trivial:
        witness = witness or ("rho", None)

    prod = factor_system_product(X, B, d)
    nb = B.order
    alpha = FiniteMap(prod.order, A.order,
                      tuple(A(k(c // nb), s(c % nb)) for c in range(prod.order)))
    iso = alpha.is_injective() and alpha.is_surjective() and \
        homomorphism_witness(alpha, prod, A) is None
    if not iso:
        witness = witness or ("factor product", homomorphism_witness(alpha, prod, A))
    return GroupReport(q_unique, h_trivial, rho_trivial, iso, prod, witness)
