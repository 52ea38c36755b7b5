"""Bounded checks of the cokernel-like and kernel-like universal properties
of a semigroup semibiproduct.

Test objects ``Z`` run over one representative per isomorphism class of
semigroups of order ``<= z_bound``. This is a finite fragment of a
statement quantified over all semigroups, and reports say so.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import NotUnital
from .finite_algebra import (FiniteMagma, FiniteMap, enumerate_homomorphisms,
                             identity_element, is_homomorphism)
from .semibiproduct import Semibiproduct


@dataclass
class UniversalReport:
    property: str             # cokernel-like | kernel-like
    z_bound: int
    tested_homs: int
    holds: bool
    witness: Optional[tuple] = None   # (Z, f, failure kind)
    bounded: bool = True


@lru_cache(maxsize=None)
def z_candidates(z_bound: int, monoids_only: bool = False) -> tuple[FiniteMagma, ...]:
    from .enumeration import enumerate_structures
    kind = "monoid" if monoids_only else "semigroup"
    out = []
    for n in range(1, z_bound + 1):
        out.extend(enumerate_structures(n, kind, "iso"))
    return tuple(out)


def cokernel_property(sb: Semibiproduct, z_bound: int = 3) -> UniversalReport:
    """Every hom ``f: A -> Z`` with ``f = fsp`` factors uniquely as ``fbar p``,
    and the factor is ``f s``."""
    A, B, p, s = sb.A, sb.B, sb.p, sb.s
    sp = s.after(p)
    tested = 0
    for Z in z_candidates(z_bound):
        homs_B = list(enumerate_homomorphisms(B, Z))
        for f in enumerate_homomorphisms(A, Z):
            if f.after(sp) != f:
                continue
            tested += 1
            fbar = f.after(s)
            if not is_homomorphism(fbar, B, Z) or fbar.after(p) != f:
                return UniversalReport("cokernel-like", z_bound, tested, False,
                                       (Z, f, "no-factorization"))
            factors = [g for g in homs_B if g.after(p) == f]
            if factors != [fbar]:
                return UniversalReport("cokernel-like", z_bound, tested, False,
                                       (Z, f, "non-unique"))
    return UniversalReport("cokernel-like", z_bound, tested, True)


def kernel_property(sb: Semibiproduct, z_bound: int = 3) -> UniversalReport:
    """Every hom ``f: Z -> A`` with ``pf = hqf`` factors uniquely as ``k fbar``,
    and the factor is ``q f``."""
    X, A, k, p, q = sb.X, sb.A, sb.k, sb.p, sb.q
    h = p.after(k)
    tested = 0
    for Z in z_candidates(z_bound):
        homs_X = list(enumerate_homomorphisms(Z, X))
        for f in enumerate_homomorphisms(Z, A):
            if p.after(f) != h.after(q).after(f):
                continue
            tested += 1
            fbar = q.after(f)
            if k.after(fbar) != f or not is_homomorphism(fbar, Z, X):
                return UniversalReport("kernel-like", z_bound, tested, False,
                                       (Z, f, "no-factorization"))
            factors = [g for g in homs_X if k.after(g) == f]
            if factors != [fbar]:
                return UniversalReport("kernel-like", z_bound, tested, False,
                                       (Z, f, "non-unique"))
    return UniversalReport("kernel-like", z_bound, tested, True)


def _units(sb: Semibiproduct):
    units = [identity_element(m) for m in (sb.X, sb.A, sb.B)]
    if None in units:
        raise NotUnital("X, A and B must all be monoids")
    return units


def is_pointed_monoid_case(sb: Semibiproduct) -> bool:
    eX, eA, eB = _units(sb)
    h = sb.p.after(sb.k)
    t = sb.q.after(sb.s)
    return (all(v == eB for v in h.values) and all(v == eX for v in t.values)
            and sb.q(eA) == eX and sb.s(eB) == eA)


def _monoid_homs(src: FiniteMagma, dst: FiniteMagma):
    es, ed = identity_element(src), identity_element(dst)
    return [f for f in enumerate_homomorphisms(src, dst) if f(es) == ed]


def cokernel_hypotheses_agree(sb: Semibiproduct, z_bound: int = 3) -> Optional[tuple]:
    """For monoid homs ``f: A -> Z``: ``fk = 0`` iff ``f = fsp``.

    Returns the first disagreeing ``(Z, f)`` or None."""
    _units(sb)
    sp = sb.s.after(sb.p)
    for Z in z_candidates(z_bound, monoids_only=True):
        eZ = identity_element(Z)
        for f in _monoid_homs(sb.A, Z):
            kills_k = all(v == eZ for v in f.after(sb.k).values)
            if kills_k != (f.after(sp) == f):
                return (Z, f)
    return None


def kernel_hypotheses_agree(sb: Semibiproduct, z_bound: int = 3) -> Optional[tuple]:
    """For monoid homs ``f: Z -> A``: ``pf = hqf`` iff ``pf = 0``."""
    _, _, eB = _units(sb)
    h = sb.p.after(sb.k)
    for Z in z_candidates(z_bound, monoids_only=True):
        for f in _monoid_homs(Z, sb.A):
            pf = sb.p.after(f)
            if (pf == h.after(sb.q).after(f)) != all(v == eB for v in pf.values):
                return (Z, f)
    return None


def kqf_identity_holds(sb: Semibiproduct, f: FiniteMap) -> bool:
    """``pf = hqf`` implies ``f = kqf`` for any map ``f`` into ``A``."""
    h = sb.p.after(sb.k)
    if sb.p.after(f) != h.after(sb.q).after(f):
        return True
    return sb.k.after(sb.q).after(f) == f
