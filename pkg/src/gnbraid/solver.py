"""Minimal-length words and the word problem in G_{n(n-1)}^2.

A word is of minimal length iff nothing reachable from it by far commutativity
and the exchange move ``a_pq a_pr a_qr <-> a_qr a_pr a_pq`` contains two equal
adjacent letters.  At a fixed length the set of reachable words is finite, so
a breadth-first closure decides it.  ``reduce`` alternates closures with square
cancellations until a closure turns up no square.

Internally generators are encoded as integers in their sorted order, so tuple
comparison on encoded words is the lexicographic order on words.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

from .core import DomainError, Family, Gn2Generator, GroupWord, gn2_generators

DEFAULT_MAX_VISITED = 5_000_000
DEFAULT_MAX_LENGTH = 64

CANCEL = "cancel"
COMMUTE = "commute"
EXCHANGE_LEFT = "exchange-left"
EXCHANGE_RIGHT = "exchange-right"


@dataclass(frozen=True)
class SolverBudget:
    max_visited: int = DEFAULT_MAX_VISITED
    max_length: int = DEFAULT_MAX_LENGTH

    def __post_init__(self):
        if self.max_visited <= 0 or self.max_length <= 0:
            raise DomainError("solver budget caps must be positive")

    @classmethod
    def from_env(cls, max_visited: int | None = None, max_length: int | None = None) -> "SolverBudget":
        """Caps from arguments, else GNBRAID_BUDGET_VISITED / GNBRAID_BUDGET_LENGTH, else defaults."""
        if max_visited is None:
            max_visited = int(os.environ.get("GNBRAID_BUDGET_VISITED", DEFAULT_MAX_VISITED))
        if max_length is None:
            max_length = int(os.environ.get("GNBRAID_BUDGET_LENGTH", DEFAULT_MAX_LENGTH))
        return cls(max_visited, max_length)


class Move(NamedTuple):
    kind: str
    position: int

    def __str__(self) -> str:
        return f"{self.kind} @ {self.position}"


MoveTrace = list  # list[Move]


class Reduction(NamedTuple):
    word: GroupWord
    trace: list


class BudgetExceeded(Exception):
    """The search hit a cap; ``best`` is the shortest word reached, uncertified."""

    def __init__(self, reason: str, best: GroupWord, trace: list):
        super().__init__(reason)
        self.reason = reason
        self.best = best
        self.trace = trace
        self.certified = False


class _Alphabet:
    def __init__(self, n: int):
        self.n = n
        self.gens: list[Gn2Generator] = gn2_generators(n)
        self.index = {g: a for a, g in enumerate(self.gens)}
        letter_sets = [frozenset(g.letters) for g in self.gens]
        self.commute = [
            frozenset(b for b, t in enumerate(letter_sets) if not (s & t)) for s in letter_sets
        ]
        by_set = {s: a for a, s in enumerate(letter_sets)}
        tri = set()
        for a, s in enumerate(letter_sets):
            p, q = sorted(s)
            # a_{p,q} a_{p,r} a_{q,r} for every third letter r, with p, q in either role
            for x, y in ((p, q), (q, p)):
                for r in self._letters_other_than(x, y):
                    b = by_set[frozenset((x, r))]
                    c = by_set[frozenset((y, r))]
                    tri.add((a, b, c))
        self.triangles = frozenset(tri)

    def _letters_other_than(self, x, y):
        seen = set()
        for g in self.gens:
            for l in g.letters:
                if l != x and l != y and l not in seen:
                    seen.add(l)
                    yield l

    def encode(self, w: GroupWord) -> tuple[int, ...]:
        if w.family is not Family.GN2:
            raise DomainError(f"expected a gn2 word, got {w.family.value}")
        return tuple(self.index[g] for g in w.letters)

    def decode(self, t: Iterable[int]) -> GroupWord:
        return GroupWord(Family.GN2, self.n, tuple(self.gens[a] for a in t))


@lru_cache(maxsize=None)
def _alphabet(n: int) -> _Alphabet:
    return _Alphabet(n)


def _moves(w: tuple, alpha: _Alphabet):
    commute, triangles = alpha.commute, alpha.triangles
    L = len(w)
    for i in range(L - 1):
        x, y = w[i], w[i + 1]
        if y in commute[x]:
            yield COMMUTE, i, w[:i] + (y, x) + w[i + 2 :]
    for i in range(L - 2):
        x, y, z = w[i], w[i + 1], w[i + 2]
        if (x, y, z) in triangles:
            kind = EXCHANGE_LEFT if z < x else EXCHANGE_RIGHT
            yield kind, i, w[:i] + (z, y, x) + w[i + 3 :]


def _first_square(w: tuple) -> int | None:
    for i in range(len(w) - 1):
        if w[i] == w[i + 1]:
            return i
    return None


def _path(parents: dict, end: tuple) -> list[Move]:
    moves = []
    while parents[end] is not None:
        prev, kind, pos = parents[end]
        moves.append(Move(kind, pos))
        end = prev
    moves.reverse()
    return moves


def neighbors(w: GroupWord) -> set[GroupWord]:
    """All words one length-preserving move away from ``w``."""
    alpha = _alphabet(w.n)
    return {alpha.decode(v) for _, _, v in _moves(alpha.encode(w), alpha)}


def apply_move(w: GroupWord, move: Move) -> GroupWord:
    letters = list(w.letters)
    i = move.position
    if move.kind == CANCEL:
        if letters[i] != letters[i + 1]:
            raise DomainError(f"cannot cancel at {i}: letters differ")
        del letters[i : i + 2]
    elif move.kind == COMMUTE:
        letters[i], letters[i + 1] = letters[i + 1], letters[i]
    elif move.kind in (EXCHANGE_LEFT, EXCHANGE_RIGHT):
        letters[i : i + 3] = letters[i : i + 3][::-1]
    else:
        raise DomainError(f"unknown move kind {move.kind!r}")
    return GroupWord(w.family, w.n, tuple(letters))


def replay(w: GroupWord, trace: Iterable[Move]) -> GroupWord:
    for m in trace:
        w = apply_move(w, m)
    return w


def format_trace(trace: Iterable[Move]) -> str:
    return "\n".join(str(m) for m in trace)


class _Search:
    def __init__(self, alpha: _Alphabet, budget: SolverBudget):
        self.alpha = alpha
        self.budget = budget
        self.visited = 0

    def closure(self, start: tuple, stop_on_square: bool):
        """BFS over the fixed-length closure of ``start``.

        Returns ``(parents, hit)`` where ``hit`` is the first reached word with
        an adjacent square, or None if the closure was exhausted.
        """
        parents = {start: None}
        self._count(start)
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for kind, pos, v in _moves(w, self.alpha):
                if v in parents:
                    continue
                parents[v] = (w, kind, pos)
                self._count(v)
                if stop_on_square and _first_square(v) is not None:
                    return parents, v
                queue.append(v)
        return parents, None

    def _count(self, w: tuple):
        self.visited += 1
        if self.visited > self.budget.max_visited:
            raise _OutOfBudget(w)


class _OutOfBudget(Exception):
    def __init__(self, w):
        self.w = w


def reduce(w: GroupWord, budget: SolverBudget | None = None) -> Reduction:
    """Shortest representative of ``w`` with a replayable move trace.

    Among minimal words of the final closure the lexicographically least one is
    returned.  Adjacent squares are cancelled before any search; the length cap
    applies to the square-free word handed to a closure search.  Raises
    BudgetExceeded if a cap is hit.
    """
    budget = budget or SolverBudget()
    alpha = _alphabet(w.n)
    cur = alpha.encode(w)
    trace: list[Move] = []
    search = _Search(alpha, budget)
    while True:
        sq = _first_square(cur)
        if sq is not None:
            trace.append(Move(CANCEL, sq))
            cur = cur[:sq] + cur[sq + 2 :]
            continue
        if len(cur) > budget.max_length:
            raise BudgetExceeded(
                f"word length {len(cur)} exceeds cap {budget.max_length}", alpha.decode(cur), trace
            )
        try:
            parents, hit = search.closure(cur, stop_on_square=True)
        except _OutOfBudget:
            raise BudgetExceeded(
                f"visited more than {budget.max_visited} words", alpha.decode(cur), trace
            ) from None
        if hit is None:
            best = min(parents)
            trace.extend(_path(parents, best))
            return Reduction(alpha.decode(best), trace)
        trace.extend(_path(parents, hit))
        cur = hit


def is_minimal(w: GroupWord, budget: SolverBudget | None = None) -> bool:
    budget = budget or SolverBudget()
    alpha = _alphabet(w.n)
    cur = alpha.encode(w)
    if _first_square(cur) is not None:
        return False
    if len(cur) > budget.max_length:
        raise BudgetExceeded(f"word length {len(cur)} exceeds cap {budget.max_length}", w, [])
    try:
        _, hit = _Search(alpha, budget).closure(cur, stop_on_square=True)
    except _OutOfBudget:
        raise BudgetExceeded(f"visited more than {budget.max_visited} words", w, []) from None
    return hit is None


def equal(w1: GroupWord, w2: GroupWord, budget: SolverBudget | None = None) -> bool:
    """Decide w1 == w2 in G_N^2 by reducing w1 * w2^-1."""
    if w1.n != w2.n:
        raise DomainError("words over different strand counts")
    if odd_generators(w1) != odd_generators(w2):
        return False
    return len(reduce(w1 + w2.inverse(), budget).word) == 0


def parity_signature(w: GroupWord) -> dict[Gn2Generator, int]:
    """Occurrence count mod 2 of every generator appearing in ``w``.

    Every defining relation preserves these bits, so words whose odd parts
    differ are different group elements.
    """
    sig: dict[Gn2Generator, int] = {}
    for g in w.letters:
        sig[g] = sig.get(g, 0) ^ 1
    return dict(sorted(sig.items()))


def odd_generators(w: GroupWord) -> frozenset[Gn2Generator]:
    return frozenset(g for g, bit in parity_signature(w).items() if bit)


def closure(w: GroupWord, budget: SolverBudget | None = None) -> set[GroupWord]:
    """Every word reachable from ``w`` by length-preserving moves."""
    budget = budget or SolverBudget()
    alpha = _alphabet(w.n)
    try:
        parents, _ = _Search(alpha, budget).closure(alpha.encode(w), stop_on_square=False)
    except _OutOfBudget:
        raise BudgetExceeded(f"visited more than {budget.max_visited} words", w, []) from None
    return {alpha.decode(v) for v in parents}
