"""Exhaustive census of magma-actions on tiny carriers.

For ``|X| = |B| = 2`` there are 16 choices of ``theta``, 65536 of ``phi``
and 4 each of ``h`` and ``t``. The census walks ``(theta, h, t)`` blocks
and classifies all ``phi`` of a block at once with numpy; ``phi`` tables
are numbered by their value sequence read as a base-``|X|`` integer, most
significant digit first, so numbering agrees with lexicographic order.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import OrderTooLarge
from .finite_algebra import FiniteMagma, FiniteMap
from .magma_action import MagmaAction


@dataclass(frozen=True)
class CensusEntry:
    action: MagmaAction
    valid: bool
    representable: Optional[bool] = None
    associative: Optional[bool] = None


@dataclass
class CensusSummary:
    x_order: int
    b_order: int
    total: int = 0
    valid: int = 0
    representable: int = 0
    associative: int = 0
    representable_not_associative: int = 0
    associative_not_representable: int = 0
    roundtrip_exact: int = 0
    roundtrip_on_R: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class Block:
    theta: tuple[int, ...]
    h: tuple[int, ...]
    t: tuple[int, ...]
    phi_ids: np.ndarray            # ids of valid phi tables, ascending
    representable: np.ndarray
    associative: np.ndarray
    roundtrip_exact: np.ndarray
    roundtrip_on_R: np.ndarray


def _blocks(n: int, m: int):
    return [(th, h, t)
            for th in itertools.product(range(m), repeat=m * m)
            for h in itertools.product(range(m), repeat=n)
            for t in itertools.product(range(n), repeat=m)]


def _phi_digits(n: int, m: int) -> np.ndarray:
    length = (n * m) ** 2
    count = n ** length
    ids = np.arange(count, dtype=np.int64)
    powers = n ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return ((ids[:, None] // powers[None, :]) % n).astype(np.int8)


def phi_id(phi, n: int) -> int:
    v = 0
    for d in phi:
        v = v * n + d
    return v


def _classify_block(n, m, P, th, h, t) -> Block:
    th = np.asarray(th).reshape(m, m)
    h = np.asarray(h)
    t = np.asarray(t)
    nm = n * m

    def col(x, b, x2, b2):
        return ((x * m + b) * n + x2) * m + b2

    # hom-compat
    ok = np.ones(len(P), bool)
    for x in range(n):
        for x2 in range(n):
            ok &= h[P[:, col(x, h[x], x2, h[x2])]] == th[h[x], h[x2]]
    rows = np.nonzero(ok)[0]
    S = P[rows].astype(np.int64)

    def membership(S):
        Rm = np.zeros((len(S), nm), bool)
        for x in range(n):
            for b in range(m):
                if th[h[x], b] == b:
                    Rm[:, x * m + b] = S[:, col(x, h[x], t[b], b)] == x
        return Rm

    Rm = membership(S)
    keep = np.ones(len(S), bool)
    for x in range(n):
        keep &= Rm[:, x * m + h[x]]
    for b in range(m):
        keep &= Rm[:, t[b] * m + b]
    rows, S, Rm = rows[keep], S[keep], Rm[keep]

    # cell c = x*m + b; OP[r, c, c'] = cell of (phi(c, c'), theta(b, b'))
    cells = [(x, b) for x in range(n) for b in range(m)]
    OP = np.empty((len(S), nm, nm), np.int64)
    for ci, (x, b) in enumerate(cells):
        for cj, (x2, b2) in enumerate(cells):
            OP[:, ci, cj] = S[:, col(x, b, x2, b2)].astype(np.int64) * m + th[b, b2]
    idx = np.arange(len(S))
    closed = np.ones(len(S), bool)
    for ci in range(nm):
        for cj in range(nm):
            both = Rm[:, ci] & Rm[:, cj]
            closed &= ~both | Rm[idx, OP[:, ci, cj]]
    rows, S, Rm, OP = rows[closed], S[closed], Rm[closed], OP[closed]
    idx = np.arange(len(S))

    def phi_at(x, b, x2, b2):
        return S[idx, ((x * m + b) * n + x2) * m + b2]

    def xplus(u, v):
        return phi_at(u, h[u], v, h[v])

    def xpow(u, c):
        return phi_at(u, h[u], t[c], c)

    def bdot(c, v):
        return phi_at(t[c], c, v, h[v])

    def btimes(c, c2):
        return phi_at(t[c], c, t[c2], c2)

    rep = np.ones(len(S), bool)
    for (x, b) in cells:
        for (x2, b2) in cells:
            X = np.full(len(S), x)
            X2 = np.full(len(S), x2)
            Bv = np.full(len(S), b)
            B2 = np.full(len(S), b2)
            inner = xplus(xplus(X, bdot(Bv, X2)), btimes(np.full(len(S), th[b, h[x2]]), B2))
            rhs = xpow(inner, np.full(len(S), th[b, b2]))
            both = Rm[:, x * m + b] & Rm[:, x2 * m + b2]
            rep &= ~both | (S[:, col(x, b, x2, b2)] == rhs)

    assoc = np.ones(len(S), bool)
    for c1, c2, c3 in itertools.product(range(nm), repeat=3):
        inR = Rm[:, c1] & Rm[:, c2] & Rm[:, c3]
        left = OP[idx, OP[:, c1, c2], c3]
        right = OP[idx, c1, OP[:, c2, c3]]
        assoc &= ~inR | (left == right)

    # to_action(to_sbp(a)) has phi'(c, c') = phi(r(c), r(c')) with
    # r(x, b) = (x^b, theta(h x, b)), a retraction onto R.
    exact = np.ones(len(S), bool)
    exact_R = np.ones(len(S), bool)
    r = {}
    for (x, b) in cells:
        r[(x, b)] = (xpow(np.full(len(S), x), np.full(len(S), b)), th[h[x], b])
    for (x, b) in cells:
        for (x2, b2) in cells:
            rx, rb = r[(x, b)]
            rx2, rb2 = r[(x2, b2)]
            again = S[idx, ((rx * m + rb) * n + rx2) * m + rb2]
            same = again == S[:, col(x, b, x2, b2)]
            exact &= same
            exact_R &= ~(Rm[:, x * m + b] & Rm[:, x2 * m + b2]) | same

    return Block(tuple(int(v) for v in th.flat), tuple(int(v) for v in h),
                 tuple(int(v) for v in t), rows.astype(np.int64), rep, assoc, exact, exact_R)


def _classify_chunk(args):
    n, m, specs = args
    P = _phi_digits(n, m)
    return [_classify_block(n, m, P, *spec) for spec in specs]


@dataclass
class Census:
    x_order: int
    b_order: int
    blocks: list = field(default_factory=list)
    summary: CensusSummary = None

    def action(self, block: Block, phi_index: int) -> MagmaAction:
        n, m = self.x_order, self.b_order
        length = (n * m) ** 2
        digits = []
        v = int(phi_index)
        for _ in range(length):
            digits.append(v % n)
            v //= n
        return MagmaAction(n, m, FiniteMagma.from_flat(m, block.theta), tuple(reversed(digits)),
                           FiniteMap(n, m, block.h), FiniteMap(m, n, block.t))

    def entries(self) -> Iterator[CensusEntry]:
        """Valid actions in census order, with their flags."""
        for blk in self.blocks:
            for i, pid in enumerate(blk.phi_ids):
                yield CensusEntry(self.action(blk, pid), True,
                                  bool(blk.representable[i]), bool(blk.associative[i]))

    def flagged(self, kind: str = "representable-not-associative") -> Iterator[CensusEntry]:
        for e in self.entries():
            if kind == "representable-not-associative" and e.representable and not e.associative:
                yield e
            elif kind == "associative-not-representable" and e.associative and not e.representable:
                yield e
            elif kind == "not-representable" and not e.representable:
                yield e

    def lookup(self, a: MagmaAction) -> Optional[CensusEntry]:
        key = (a.theta.flat(), a.h.values, a.t.values)
        pid = phi_id(a.phi, self.x_order)
        for blk in self.blocks:
            if (blk.theta, blk.h, blk.t) == key:
                pos = np.searchsorted(blk.phi_ids, pid)
                if pos < len(blk.phi_ids) and blk.phi_ids[pos] == pid:
                    return CensusEntry(a, True, bool(blk.representable[pos]),
                                       bool(blk.associative[pos]))
                return CensusEntry(a, False)
        return None


def action_census(x_order: int = 2, b_order: int = 2, workers: Optional[int] = None) -> Census:
    if x_order > 2 or b_order > 2 or x_order < 1 or b_order < 1:
        raise OrderTooLarge("the action census supports carriers of order 1 or 2")
    from .enumeration import default_workers
    workers = default_workers() if workers is None else workers
    n, m = x_order, b_order
    specs = _blocks(n, m)
    if workers <= 1:
        blocks = _classify_chunk((n, m, specs))
    else:
        # contiguous chunks keep the merged order equal to the sequential one
        size = -(-len(specs) // workers)
        chunks = [specs[i:i + size] for i in range(0, len(specs), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = [b for part in pool.map(_classify_chunk, [(n, m, c) for c in chunks])
                      for b in part]
    summary = CensusSummary(n, m, total=len(specs) * n ** ((n * m) ** 2))
    for blk in blocks:
        rep, assoc = blk.representable, blk.associative
        summary.valid += len(blk.phi_ids)
        summary.representable += int(rep.sum())
        summary.associative += int(assoc.sum())
        summary.representable_not_associative += int((rep & ~assoc).sum())
        summary.associative_not_representable += int((assoc & ~rep).sum())
        summary.roundtrip_exact += int(blk.roundtrip_exact.sum())
        summary.roundtrip_on_R += int(blk.roundtrip_on_R.sum())
    return Census(n, m, blocks, summary)
