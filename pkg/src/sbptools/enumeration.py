"""Exhaustive generation of small structures and of semibiproducts with
fixed ends.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import OrderTooLarge
from .finite_algebra import (FiniteMagma, FiniteMap, canonical_form,
                             canonical_form_anti, enumerate_homomorphisms,
                             identity_element, is_group, isomorphisms)
from .semibiproduct import Semibiproduct

STRUCTURES = ("magma", "semigroup", "monoid", "group")


def default_workers() -> int:
    env = os.environ.get("SBP_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _associative_tables(n: int) -> Iterator[tuple[int, ...]]:
    """Flat row-major associative tables of order ``n`` in lex order.

    Cells are filled row-major; after each assignment only the triples whose
    four lookups include the new cell are checked.
    """
    size = n * n
    t = [-1] * size

    def ok(i, j):
        v = t[i * n + j]
        # (i j) c  vs  i (j c)
        for c in range(n):
            jc = t[j * n + c]
            if jc < 0:
                continue
            lhs, rhs = t[v * n + c], t[i * n + jc]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
        # (a i) j  vs  a (i j)
        for a in range(n):
            ai = t[a * n + i]
            if ai < 0:
                continue
            lhs, rhs = t[ai * n + j], t[a * n + v]
            if lhs >= 0 and rhs >= 0 and lhs != rhs:
                return False
        # cell used as (ab) c with ab = i, c = j
        for a in range(n):
            for b in range(n):
                if t[a * n + b] != i:
                    continue
                bc = t[b * n + j]
                if bc >= 0:
                    rhs = t[a * n + bc]
                    if rhs >= 0 and rhs != v:
                        return False
        # cell used as a (bc) with a = i, bc = j
        for b in range(n):
            for c in range(n):
                if t[b * n + c] != j:
                    continue
                ib = t[i * n + b]
                if ib >= 0:
                    lhs = t[ib * n + c]
                    if lhs >= 0 and lhs != v:
                        return False
        return True

    def rec(pos):
        if pos == size:
            yield tuple(t)
            return
        i, j = divmod(pos, n)
        for v in range(n):
            t[pos] = v
            if ok(i, j):
                yield from rec(pos + 1)
        t[pos] = -1

    yield from rec(0)


def labelled_structures(order: int, structure: str = "semigroup") -> Iterator[FiniteMagma]:
    if structure not in STRUCTURES:
        raise ValueError(f"unknown structure filter {structure!r}")
    if structure == "magma":
        if order > 3:
            raise OrderTooLarge("magma enumeration is limited to order 3")
        for flat in itertools.product(range(order), repeat=order * order):
            yield FiniteMagma.from_flat(order, flat)
        return
    if order > 4:
        raise OrderTooLarge("semigroup enumeration is limited to order 4")
    for flat in _associative_tables(order):
        m = FiniteMagma.from_flat(order, flat)
        if structure == "monoid" and identity_element(m) is None:
            continue
        if structure == "group" and not is_group(m):
            continue
        yield m


def enumerate_structures(order: int, structure: str = "semigroup",
                         dedup: str = "none") -> list[FiniteMagma]:
    """Tables of ``order`` passing ``structure``, deduplicated by ``dedup``
    (``none``, ``iso`` or ``iso-anti``), sorted by flat table."""
    tables = labelled_structures(order, structure)
    if dedup == "none":
        return sorted(tables, key=FiniteMagma.flat)
    if dedup == "iso":
        reps = {canonical_form(m).flat(): None for m in tables}
    elif dedup == "iso-anti":
        reps = {canonical_form_anti(m).flat(): None for m in tables}
    else:
        raise ValueError(f"unknown dedup mode {dedup!r}")
    return [FiniteMagma.from_flat(order, f) for f in sorted(reps)]


# --- semibiproducts with fixed ends ----------------------------------------

@dataclass(frozen=True)
class EnumSpec:
    X: FiniteMagma
    B: FiniteMagma
    middle_order: int
    dedup_mode: str = "middle-iso"      # labelled | middle-iso
    structure_filter: str = "semigroup"

    def __post_init__(self):
        if self.middle_order < 1:
            raise ValueError("middle order must be positive")
        if self.dedup_mode not in ("labelled", "middle-iso"):
            raise ValueError(f"unknown dedup mode {self.dedup_mode!r}")
        if self.structure_filter not in STRUCTURES:
            raise ValueError(f"unknown structure filter {self.structure_filter!r}")


@dataclass
class EnumResult:
    solutions: list = field(default_factory=list)
    labelled_count: int = 0

    @property
    def count(self) -> int:
        return len(self.solutions)


def _solutions_for_middle(X: FiniteMagma, B: FiniteMagma, A: FiniteMagma) -> list[Semibiproduct]:
    nx, na, nb = X.order, A.order, B.order
    out = []
    ks = [k for k in enumerate_homomorphisms(X, A) if k.is_injective()]
    if not ks:
        return out
    ps = [p for p in enumerate_homomorphisms(A, B) if p.is_surjective()]
    for k in ks:
        image = {k(x): x for x in range(nx)}
        free = [a for a in range(na) if a not in image]
        for p in ps:
            fibres = [[a for a in range(na) if p(a) == b] for b in range(nb)]
            for s_vals in itertools.product(*fibres):
                for q_free in itertools.product(range(nx), repeat=len(free)):
                    q_vals = [0] * na
                    for a, x in image.items():
                        q_vals[a] = x
                    for a, x in zip(free, q_free):
                        q_vals[a] = x
                    if all(A(k(q_vals[a]), s_vals[p(a)]) == a for a in range(na)):
                        out.append(Semibiproduct(
                            X, A, B, k, p,
                            FiniteMap(na, nx, tuple(q_vals)),
                            FiniteMap(nb, na, tuple(s_vals))))
    return out


def orbit_key(sb: Semibiproduct):
    """Minimum of ``(k, p, q, s, A)`` over all relabelings of the middle.

    Two semibiproducts with the same ends get equal keys exactly when a
    middle isomorphism with identity end maps relates them.
    """
    best = None
    na = sb.A.order
    for perm in itertools.permutations(range(na)):
        inv = [0] * na
        for a, pa in enumerate(perm):
            inv[pa] = a
        key = (tuple(perm[v] for v in sb.k.values),
               tuple(sb.p.values[inv[a]] for a in range(na)),
               tuple(sb.q.values[inv[a]] for a in range(na)),
               tuple(perm[v] for v in sb.s.values),
               sb.A.relabel(perm).flat())
        if best is None or key < best:
            best = key
    return best


def _from_key(sb: Semibiproduct, key) -> Semibiproduct:
    k, p, q, s, flat = key
    na, nx, nb = sb.A.order, sb.X.order, sb.B.order
    return Semibiproduct(sb.X, FiniteMagma.from_flat(na, flat), sb.B,
                         FiniteMap(nx, na, k), FiniteMap(na, nb, p),
                         FiniteMap(na, nx, q), FiniteMap(nb, na, s))


def _worker(args):
    X, B, order, middles = args
    out = []
    for flat in middles:
        out.extend(_solutions_for_middle(X, B, FiniteMagma.from_flat(order, flat)))
    return out


def _run_chunks(X, B, order, middles, workers):
    flats = [m.flat() for m in middles]
    if workers <= 1 or len(flats) < 2:
        return _worker((X, B, order, flats))
    chunks = [flats[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_worker, [(X, B, order, c) for c in chunks])
        return [sb for part in parts for sb in part]


def enumerate_semibiproducts(spec: EnumSpec, workers: Optional[int] = None) -> EnumResult:
    if spec.middle_order > 4:
        raise OrderTooLarge("middle objects are limited to order 4")
    workers = default_workers() if workers is None else workers
    middles = list(labelled_structures(spec.middle_order, spec.structure_filter))
    found = _run_chunks(spec.X, spec.B, spec.middle_order, middles, workers)
    result = EnumResult(labelled_count=len(found))
    if spec.dedup_mode == "labelled":
        chosen = found
    else:
        reps = {}
        for sb in found:
            reps.setdefault(orbit_key(sb), sb)
        chosen = [_from_key(sb, key) for key, sb in reps.items()]
    chosen.sort(key=lambda sb: (canonical_form(sb.A).flat(),) + sb.key()[1:] + (sb.A.flat(),))
    result.solutions = chosen
    return result


def sbp_isomorphic(sb1: Semibiproduct, sb2: Semibiproduct,
                   fix_ends: bool = True) -> Optional[tuple[FiniteMap, FiniteMap, FiniteMap]]:
    """First triple ``(f1, f2, f3)`` of magma isomorphisms, in lex order,
    commuting with all four maps of both diagrams."""
    if (sb1.X.order, sb1.A.order, sb1.B.order) != (sb2.X.order, sb2.A.order, sb2.B.order):
        return None
    nx, na, nb = sb1.X.order, sb1.A.order, sb1.B.order
    if fix_ends:
        if sb1.X != sb2.X or sb1.B != sb2.B:
            return None
        f1s, f3s = [tuple(range(nx))], [tuple(range(nb))]
    else:
        f1s = list(isomorphisms(sb1.X, sb2.X))
        f3s = list(isomorphisms(sb1.B, sb2.B))
    f2s = list(isomorphisms(sb1.A, sb2.A))
    k1, p1, q1, s1 = sb1.k.values, sb1.p.values, sb1.q.values, sb1.s.values
    k2, p2, q2, s2 = sb2.k.values, sb2.p.values, sb2.q.values, sb2.s.values
    for f1 in f1s:
        for f2 in f2s:
            if any(f2[k1[x]] != k2[f1[x]] for x in range(nx)):
                continue
            if any(q2[f2[a]] != f1[q1[a]] for a in range(na)):
                continue
            for f3 in f3s:
                if any(p2[f2[a]] != f3[p1[a]] for a in range(na)):
                    continue
                if any(f2[s1[b]] != s2[f3[b]] for b in range(nb)):
                    continue
                return (FiniteMap(nx, nx, f1), FiniteMap(na, na, f2), FiniteMap(nb, nb, f3))
    return None


def transport(sb: Semibiproduct, perm) -> Semibiproduct:
    """Relabel the middle object along ``a -> perm[a]``."""
    na = sb.A.order
    inv = [0] * na
    for a, pa in enumerate(perm):
        inv[pa] = a
    return Semibiproduct(
        sb.X, sb.A.relabel(perm), sb.B,
        FiniteMap(sb.X.order, na, tuple(perm[v] for v in sb.k.values)),
        FiniteMap(na, sb.B.order, tuple(sb.p.values[inv[a]] for a in range(na))),
        FiniteMap(na, sb.X.order, tuple(sb.q.values[inv[a]] for a in range(na))),
        FiniteMap(sb.B.order, na, tuple(perm[v] for v in sb.s.values)))
