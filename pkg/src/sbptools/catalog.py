"""Small named structures used in examples, tests and the CLI."""
from __future__ import annotations

import itertools

from .finite_algebra import FiniteMagma, FiniteMap, direct_product


def one_based(rows) -> FiniteMagma:
    return FiniteMagma(tuple(tuple(v - 1 for v in row) for row in rows))


def trivial() -> FiniteMagma:
    return FiniteMagma(((0,),))


def cyclic(n: int) -> FiniteMagma:
    return FiniteMagma(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def klein() -> FiniteMagma:
    return direct_product(cyclic(2), cyclic(2))


def symmetric(n: int) -> tuple[FiniteMagma, list[tuple[int, ...]]]:
    """Symmetric group on ``n`` points with elements in lex order of their
    one-line notation; ``a * b`` is ``a ∘ b`` (apply ``b`` first)."""
    elems = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(elems)}
    table = tuple(
        tuple(pos[tuple(p[q[i]] for i in range(n))] for q in elems) for p in elems)
    return FiniteMagma(table), elems


def sign_map(elems) -> FiniteMap:
    def parity(p):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return inv % 2
    return FiniteMap.of([parity(p) for p in elems], 2)


def bool_mult() -> FiniteMagma:
    """({0, 1}, ·) with element 0 -> 0 and 1 -> 1."""
    return FiniteMagma(((0, 0), (0, 1)))


# The four order-2 semigroups up to isomorphism or anti-isomorphism,
# given with 1-based entries.
SEMILATTICE2 = one_based([[1, 1], [1, 2]])
LEFT_ZERO2 = one_based([[1, 1], [2, 2]])
CYCLIC2 = one_based([[1, 2], [2, 1]])
NULL2 = one_based([[1, 1], [1, 1]])
ORDER2_SEMIGROUPS = (SEMILATTICE2, LEFT_ZERO2, CYCLIC2, NULL2)


# phi values of a representable, non-associative action on X = B = {1, 2},
# listed with x varying fastest, then b, x', b'.
_RNA_PHI_XFAST = (1, 2, 1, 2, 2, 1, 1, 2, 1, 2, 1, 2, 2, 1, 1, 2)


def representable_nonassociative_action():
    """h = t = const 1; theta(1, 2) = 2 and theta = 1 elsewhere (1-based)."""
    from .magma_action import MagmaAction

    theta = one_based([[1, 2], [1, 1]])
    phi = [0] * 16
    for i, v in enumerate(_RNA_PHI_XFAST):
        x, b, x2, b2 = i % 2, (i // 2) % 2, (i // 4) % 2, (i // 8) % 2
        phi[((x * 2 + b) * 2 + x2) * 2 + b2] = v - 1
    return MagmaAction(2, 2, theta, tuple(phi),
                       FiniteMap.constant(2, 2, 0), FiniteMap.constant(2, 2, 0))


def idempotent_diagonal_action(B: FiniteMagma):
    """X = B, h = t = identity, phi(x, b, x', b') = theta(x, b')."""
    from .magma_action import MagmaAction

    one = FiniteMap.identity(B.order)
    return MagmaAction.from_function(B, B.order, lambda x, b, x2, b2: B(x, b2), one, one)
