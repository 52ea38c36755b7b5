"""Finite magmas as Cayley tables, maps between finite carriers, and the
predicates and relabeling machinery the rest of the package builds on.

Elements are always ``0..n-1`` internally. Conversion to the 1-based
labels used in files and reports happens in :mod:`sbptools.io`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import AlgebraError, DimensionMismatch

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteMagma:
    table: Table

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(rows)
        if n < 1:
            raise AlgebraError("a magma needs at least one element")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise AlgebraError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise AlgebraError(f"entry ({i},{j})={v} outside 0..{n - 1}")
        object.__setattr__(self, "table", rows)

    @property
    def order(self) -> int:
        return len(self.table)

    def __call__(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __repr__(self):
        return f"FiniteMagma({[list(r) for r in self.table]})"

    @classmethod
    def from_flat(cls, n: int, values: Sequence[int]) -> "FiniteMagma":
        return cls(tuple(tuple(values[i * n:(i + 1) * n]) for i in range(n)))

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def opposite(self) -> "FiniteMagma":
        return FiniteMagma(tuple(zip(*self.table)))

    def relabel(self, perm: Sequence[int]) -> "FiniteMagma":
        """Transport the operation along the bijection ``a -> perm[a]``."""
        n = self.order
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[self.table[a][b]]
        return FiniteMagma(tuple(map(tuple, new)))

    def subtable(self, elements: Sequence[int]) -> "FiniteMagma":
        """Restrict to a closed subset; element ``elements[i]`` becomes ``i``."""
        pos = {e: i for i, e in enumerate(elements)}
        try:
            return FiniteMagma(tuple(
                tuple(pos[self.table[a][b]] for b in elements) for a in elements))
        except KeyError:
            raise AlgebraError("subset is not closed under the operation") from None


@dataclass(frozen=True)
class FiniteMap:
    dom_order: int
    cod_order: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if self.dom_order < 1 or self.cod_order < 1:
            raise AlgebraError("map carriers must be non-empty")
        if len(values) != self.dom_order:
            raise AlgebraError(
                f"map has {len(values)} values for a domain of order {self.dom_order}")
        for i, v in enumerate(values):
            if not 0 <= v < self.cod_order:
                raise AlgebraError(f"value {v} at {i} outside 0..{self.cod_order - 1}")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Sequence[int], cod_order: int) -> "FiniteMap":
        return cls(len(values), cod_order, tuple(values))

    @classmethod
    def identity(cls, n: int) -> "FiniteMap":
        return cls(n, n, tuple(range(n)))

    @classmethod
    def constant(cls, dom_order: int, cod_order: int, value: int) -> "FiniteMap":
        return cls(dom_order, cod_order, (value,) * dom_order)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __repr__(self):
        return f"FiniteMap({list(self.values)} -> {self.cod_order})"

    def after(self, inner: "FiniteMap") -> "FiniteMap":
        """Composite ``self ∘ inner``."""
        if inner.cod_order != self.dom_order:
            raise DimensionMismatch("cannot compose: codomain/domain orders differ")
        return FiniteMap(inner.dom_order, self.cod_order,
                         tuple(self.values[v] for v in inner.values))

    def is_identity(self) -> bool:
        return self.dom_order == self.cod_order and self.values == tuple(range(self.dom_order))

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.cod_order))

    def is_injective(self) -> bool:
        return len(set(self.values)) == self.dom_order


@dataclass(frozen=True)
class StructureClass:
    associative: bool
    identity: Optional[int]
    commutative: bool
    group: bool

    @property
    def unital(self) -> bool:
        return self.identity is not None


def nonassociative_triple(m: FiniteMagma) -> Optional[tuple[int, int, int]]:
    """Lexicographically smallest ``(a, b, c)`` with ``(ab)c != a(bc)``."""
    t = m.table
    n = m.order
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tb = t[b]
            tab = t[ab]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return (a, b, c)
    return None


def is_associative(m: FiniteMagma) -> bool:
    return nonassociative_triple(m) is None


def identity_element(m: FiniteMagma) -> Optional[int]:
    t = m.table
    n = m.order
    for e in range(n):
        if all(t[e][a] == a and t[a][e] == a for a in range(n)):
            return e
    return None


def is_commutative(m: FiniteMagma) -> bool:
    t = m.table
    return all(t[a][b] == t[b][a] for a in range(m.order) for b in range(a))


def is_group(m: FiniteMagma) -> bool:
    # Latin square + associative + unital; inverses follow from the Latin property.
    n = m.order
    full = set(range(n))
    if any(set(row) != full for row in m.table):
        return False
    if any(set(col) != full for col in zip(*m.table)):
        return False
    return is_associative(m) and identity_element(m) is not None


def classify(m: FiniteMagma) -> StructureClass:
    return StructureClass(
        associative=is_associative(m),
        identity=identity_element(m),
        commutative=is_commutative(m),
        group=is_group(m),
    )


def inverse_of(m: FiniteMagma, a: int) -> int:
    e = identity_element(m)
    if e is None:
        raise AlgebraError("no identity element")
    for b in range(m.order):
        if m.table[a][b] == e and m.table[b][a] == e:
            return b
    raise AlgebraError(f"element {a} has no two-sided inverse")


def _check_map_dims(f: FiniteMap, src: FiniteMagma, dst: FiniteMagma):
    if f.dom_order != src.order or f.cod_order != dst.order:
        raise DimensionMismatch(
            f"map {f.dom_order}->{f.cod_order} does not fit magmas "
            f"of orders {src.order}->{dst.order}")


def homomorphism_witness(f: FiniteMap, src: FiniteMagma,
                         dst: FiniteMagma) -> Optional[tuple[int, int]]:
    """Smallest pair ``(a, b)`` with ``f(ab) != f(a)f(b)``, or None."""
    _check_map_dims(f, src, dst)
    v = f.values
    st, dt = src.table, dst.table
    for a in range(src.order):
        for b in range(src.order):
            if v[st[a][b]] != dt[v[a]][v[b]]:
                return (a, b)
    return None


def is_homomorphism(f: FiniteMap, src: FiniteMagma, dst: FiniteMagma) -> bool:
    return homomorphism_witness(f, src, dst) is None


def enumerate_maps(dom_order: int, cod_order: int) -> Iterator[FiniteMap]:
    for values in itertools.product(range(cod_order), repeat=dom_order):
        yield FiniteMap(dom_order, cod_order, values)


def enumerate_homomorphisms(src: FiniteMagma, dst: FiniteMagma) -> Iterator[FiniteMap]:
    """All homomorphisms ``src -> dst`` in lexicographic order of value tuples.

    Backtracks over the values one element at a time, checking every pair
    whose operands and product are already assigned. Yields exactly the
    maps of :func:`enumerate_maps` that pass :func:`is_homomorphism`.
    """
    n, m = src.order, dst.order
    st, dt = src.table, dst.table
    vals = [-1] * n

    def consistent(i):
        # every pair with max(a, b) == i and product already assigned
        for a in range(i + 1):
            for b in (range(i + 1) if a == i else (i,)):
                c = st[a][b]
                if c <= i and vals[c] != dt[vals[a]][vals[b]]:
                    return False
        # pairs below i whose product is i
        for a in range(i):
            for b in range(i):
                if st[a][b] == i and vals[i] != dt[vals[a]][vals[b]]:
                    return False
        return True

    def rec(i):
        if i == n:
            yield FiniteMap(n, m, tuple(vals))
            return
        for v in range(m):
            vals[i] = v
            if consistent(i):
                yield from rec(i + 1)
        vals[i] = -1

    yield from rec(0)


def permutations(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(n))


def is_isomorphism(perm: Sequence[int], m1: FiniteMagma, m2: FiniteMagma) -> bool:
    t1, t2 = m1.table, m2.table
    n = m1.order
    return all(perm[t1[a][b]] == t2[perm[a]][perm[b]] for a in range(n) for b in range(n))


def is_anti_isomorphism(perm: Sequence[int], m1: FiniteMagma, m2: FiniteMagma) -> bool:
    t1, t2 = m1.table, m2.table
    n = m1.order
    return all(perm[t1[a][b]] == t2[perm[b]][perm[a]] for a in range(n) for b in range(n))


def isomorphisms(m1: FiniteMagma, m2: FiniteMagma) -> Iterator[tuple[int, ...]]:
    if m1.order != m2.order:
        return
    for perm in permutations(m1.order):
        if is_isomorphism(perm, m1, m2):
            yield perm


def are_equivalent(m1: FiniteMagma, m2: FiniteMagma,
                   allow_anti: bool = False) -> Optional[tuple[int, ...]]:
    """A bijection that is an isomorphism ``m1 -> m2``, or with ``allow_anti``
    an anti-isomorphism when no isomorphism exists. Isomorphisms are
    preferred; within each kind the first permutation in lex order wins.
    """
    if m1.order != m2.order:
        return None
    iso = next(isomorphisms(m1, m2), None)
    if iso is not None or not allow_anti:
        return iso
    for perm in permutations(m1.order):
        if is_anti_isomorphism(perm, m1, m2):
            return perm
    return None


def canonical_form(m: FiniteMagma) -> FiniteMagma:
    """The lexicographically smallest table over all relabelings of ``m``."""
    best = None
    n = m.order
    t = m.table
    for perm in permutations(n):
        inv = [0] * n
        for a, pa in enumerate(perm):
            inv[pa] = a
        # row-major flat table of relabel(m, perm), built lazily for early exit
        cand = tuple(perm[t[inv[i]][inv[j]]] for i in range(n) for j in range(n))
        if best is None or cand < best:
            best = cand
    return FiniteMagma.from_flat(n, best)


def canonical_form_anti(m: FiniteMagma) -> FiniteMagma:
    """Class representative under isomorphism or anti-isomorphism."""
    a = canonical_form(m)
    b = canonical_form(m.opposite())
    return a if a.flat() <= b.flat() else b


def direct_product(m1: FiniteMagma, m2: FiniteMagma) -> FiniteMagma:
    """Pairs ``(a, b)`` encoded as ``a * m2.order + b``."""
    n2 = m2.order
    size = m1.order * n2
    return FiniteMagma(tuple(
        tuple(m1.table[i // n2][j // n2] * n2 + m2.table[i % n2][j % n2]
              for j in range(size))
        for i in range(size)))
