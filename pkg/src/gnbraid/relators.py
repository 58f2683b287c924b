"""Relator enumerations for `G_n^3, ``G_n^3, G_{n(n-1)}^2 and relation pairs of PB_n.

All lists come out in a fixed order: relation type first, then lexicographic
on the index tuples of the letters.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, NamedTuple

from .core import (
    BraidWord,
    DoublePrimeGenerator,
    Family,
    GroupWord,
    Gn2Generator,
    PrimeGenerator,
    check_strand_count,
    double_prime_generators,
    gn2_generators,
    pair_letters,
    prime_generators,
)


class Relator(NamedTuple):
    kind: str
    word: GroupWord


def _square(x) -> tuple:
    return (x, x)


def _commutator(x, y) -> tuple:
    # [x, y] for involutions
    return (x, y, x, y)


def _quad_word(cls, i, j, k, l) -> tuple:
    return (cls(i, j, k), cls(i, j, l), cls(i, k, l), cls(j, k, l))


def prime_commute(x: PrimeGenerator, y: PrimeGenerator) -> bool:
    """Far commutativity in `G_n^3: the index sets share at most one element."""
    return len(set(x.indices) & set(y.indices)) <= 1


def double_prime_commute(x: DoublePrimeGenerator, y: DoublePrimeGenerator) -> bool:
    """Commutativity in ``G_n^3: the induced ordered pairs are disjoint."""
    return not (x.induced_pairs() & y.induced_pairs())


def gn2_commute(x: Gn2Generator, y: Gn2Generator) -> bool:
    return len({x.p, x.q, y.p, y.q}) == 4


def iter_prime_relators(n: int) -> Iterator[Relator]:
    check_strand_count(n)
    gens = prime_generators(n)
    for g in gens:
        yield Relator("square", GroupWord(Family.PRIME, n, _square(g)))
    for x, y in combinations(gens, 2):
        if prime_commute(x, y):
            yield Relator("commute", GroupWord(Family.PRIME, n, _commutator(x, y)))
    for quad in combinations(range(1, n + 1), 4):
        for i, j, k, l in permutations(quad):
            w = _quad_word(PrimeGenerator, i, j, k, l)
            yield Relator("quadruple", GroupWord(Family.PRIME, n, w + w))


def iter_double_prime_relators(n: int) -> Iterator[Relator]:
    check_strand_count(n)
    gens = double_prime_generators(n)
    for g in gens:
        yield Relator("square", GroupWord(Family.DOUBLE_PRIME, n, _square(g)))
    for x, y in combinations(gens, 2):
        if double_prime_commute(x, y):
            yield Relator("commute", GroupWord(Family.DOUBLE_PRIME, n, _commutator(x, y)))
    for quad in combinations(range(1, n + 1), 4):
        for i, j, k, l in permutations(quad):
            w = _quad_word(DoublePrimeGenerator, i, j, k, l)
            yield Relator("quadruple", GroupWord(Family.DOUBLE_PRIME, n, w + w))


def iter_gn2_relators(n: int) -> Iterator[Relator]:
    check_strand_count(n)
    gens = gn2_generators(n)
    for g in gens:
        yield Relator("square", GroupWord(Family.GN2, n, _square(g)))
    for x, y in combinations(gens, 2):
        if gn2_commute(x, y):
            yield Relator("commute", GroupWord(Family.GN2, n, _commutator(x, y)))
    for p, q, r in permutations(pair_letters(n), 3):
        w = (Gn2Generator(p, q), Gn2Generator(p, r), Gn2Generator(q, r))
        yield Relator("triangle", GroupWord(Family.GN2, n, w + w))


def relators_prime(n: int) -> list[GroupWord]:
    return [r.word for r in iter_prime_relators(n)]


def relators_double_prime(n: int) -> list[GroupWord]:
    return [r.word for r in iter_double_prime_relators(n)]


def relators_gn2(n: int) -> list[GroupWord]:
    return [r.word for r in iter_gn2_relators(n)]


class BraidRelation(NamedTuple):
    kind: str
    left: BraidWord
    right: BraidWord
    substituted: bool = False

    def __str__(self) -> str:
        flag = "  [substituted]" if self.substituted else ""
        return f"{self.left} = {self.right}{flag}"


def relators_pure_braid(n: int) -> list[BraidRelation]:
    """Defining relations of PB_n in the generators b_{ij}, i < j.

    The last family, [b_kl b_ik b_kl^-1, b_jl] = 1 for i<j<k<l, stands in for
    a printed relation whose two sides coincide; those entries carry
    ``substituted=True``.
    """
    check_strand_count(n)
    of = BraidWord.of
    out = []
    for i, j, k, l in combinations(range(1, n + 1), 4):
        out.append(BraidRelation("commute", of(n, (i, j), (k, l)), of(n, (k, l), (i, j))))
        # nested pair i<k<l<j, relabelled from the same 4-subset
        out.append(BraidRelation("commute", of(n, (i, l), (j, k)), of(n, (j, k), (i, l))))
    for i, j, k in combinations(range(1, n + 1), 3):
        left = of(n, (i, j), (i, k), (j, k))
        out.append(BraidRelation("triple", left, of(n, (i, k), (j, k), (i, j))))
        out.append(BraidRelation("triple", left, of(n, (j, k), (i, j), (i, k))))
    for i, j, k, l in combinations(range(1, n + 1), 4):
        conj = ((k, l), (i, k), (k, l, -1))
        out.append(
            BraidRelation(
                "conjugate-commute",
                of(n, *conj, (j, l)),
                of(n, (j, l), *conj),
                substituted=True,
            )
        )
    return out
