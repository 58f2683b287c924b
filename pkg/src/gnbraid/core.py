"""Generator alphabets and words for the groups `G_n^3, ``G_n^3, G_n^3 and G_N^2.

Every generator in these families is an involution, so the inverse of a word
is its reversal.  Words carry their family and strand count so that words over
different alphabets are never silently mixed.

Text grammar (whitespace separated tokens)::

    a'[i,j,k]            prime generator a'_{ijk}
    a[i,j,k]             plain generator a_{ijk}
    a''[i,j,k]           double-prime generator a''_{ijk}
    A[(u1,v1),(u2,v2)]   generator a_{p,q} of G_N^2 with p=(u1,v1), q=(u2,v2)
    x[u,v]               letter of the free product of copies of Z_2
    b[i,j]  b[i,j]^-1    pure braid generator and its inverse
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence, Union


class DomainError(ValueError):
    """Raised for index data outside the domain of an operation."""


class WordSyntaxError(ValueError):
    """A token of a word could not be parsed.

    ``position`` is the character offset of the offending token in the input
    text and ``token_index`` its index among the whitespace separated tokens.
    """

    def __init__(self, message: str, position: int, token_index: int):
        super().__init__(f"{message} (token {token_index} at column {position})")
        self.position = position
        self.token_index = token_index


def _check_distinct(*idx: int) -> None:
    if len(set(idx)) != len(idx):
        raise DomainError(f"indices must be pairwise distinct, got {idx}")
    for x in idx:
        if not isinstance(x, int) or x < 1:
            raise DomainError(f"indices must be positive integers, got {idx}")


@dataclass(frozen=True, order=True)
class PrimeGenerator:
    """a'_{ijk}: an ordered triple up to reversal, stored with i < k."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        _check_distinct(self.i, self.j, self.k)
        if self.i > self.k:
            i, k = self.k, self.i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "k", k)

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    @property
    def middle(self) -> int:
        return self.j

    def __str__(self) -> str:
        return f"a'[{self.i},{self.j},{self.k}]"


@dataclass(frozen=True, order=True)
class PlainGenerator:
    """a_{ijk} of G_n^3: a 3-element subset, stored sorted."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        _check_distinct(self.i, self.j, self.k)
        i, j, k = sorted((self.i, self.j, self.k))
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def __str__(self) -> str:
        return f"a[{self.i},{self.j},{self.k}]"


@dataclass(frozen=True, order=True)
class DoublePrimeGenerator:
    """a''_{ijk}: a fully ordered triple, no identifications."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        _check_distinct(self.i, self.j, self.k)

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    def induced_pairs(self) -> frozenset[tuple[int, int]]:
        """The ordered pairs (first, second), (first, third), (second, third)."""
        return frozenset({(self.i, self.j), (self.i, self.k), (self.j, self.k)})

    def __str__(self) -> str:
        return f"a''[{self.i},{self.j},{self.k}]"


@dataclass(frozen=True, order=True)
class PairLetter:
    """An ordered pair (u, v) of distinct strands; (u, v) != (v, u)."""

    u: int
    v: int

    def __post_init__(self):
        _check_distinct(self.u, self.v)

    @property
    def indices(self) -> tuple[int, int]:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"x[{self.u},{self.v}]"


def _pair(p) -> PairLetter:
    return p if isinstance(p, PairLetter) else PairLetter(*p)


@dataclass(frozen=True, order=True)
class Gn2Generator:
    """a_{p,q} of G_N^2 whose indices are ordered pairs; {p,q} is unordered."""

    p: PairLetter
    q: PairLetter

    def __post_init__(self):
        p, q = _pair(self.p), _pair(self.q)
        if p == q:
            raise DomainError(f"a_{{p,q}} needs p != q, got {p.indices} twice")
        if q < p:
            p, q = q, p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return self.p.indices + self.q.indices

    @property
    def letters(self) -> tuple[PairLetter, PairLetter]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"A[({self.p.u},{self.p.v}),({self.q.u},{self.q.v})]"


@dataclass(frozen=True, order=True)
class BraidLetter:
    """b_{ij}^{±1} with i < j."""

    i: int
    j: int
    exponent: int = 1

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise DomainError(f"braid letter needs 1 <= i < j, got ({self.i},{self.j})")
        if self.exponent not in (1, -1):
            raise DomainError(f"braid exponent must be +1 or -1, got {self.exponent}")

    @property
    def indices(self) -> tuple[int, int]:
        return (self.i, self.j)

    def inverse(self) -> "BraidLetter":
        return BraidLetter(self.i, self.j, -self.exponent)

    def __str__(self) -> str:
        return f"b[{self.i},{self.j}]" + ("^-1" if self.exponent == -1 else "")


class Family(enum.Enum):
    PRIME = "prime"
    PLAIN = "plain"
    DOUBLE_PRIME = "double-prime"
    GN2 = "gn2"
    Z2FREE = "z2free"


_LETTER_TYPE = {
    Family.PRIME: PrimeGenerator,
    Family.PLAIN: PlainGenerator,
    Family.DOUBLE_PRIME: DoublePrimeGenerator,
    Family.GN2: Gn2Generator,
    Family.Z2FREE: PairLetter,
}

Generator = Union[PrimeGenerator, PlainGenerator, DoublePrimeGenerator, Gn2Generator, PairLetter]


def check_strand_count(n: int) -> int:
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"strand count must be an integer >= 3, got {n!r}")
    return n


@dataclass(frozen=True)
class GroupWord:
    """A finite word over the generators of one family and one strand count."""

    family: Family
    n: int
    letters: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        check_strand_count(self.n)
        letters = tuple(self.letters)
        kind = _LETTER_TYPE[self.family]
        for g in letters:
            if not isinstance(g, kind):
                raise DomainError(f"{g!r} is not a {self.family.value} generator")
            if max(g.indices) > self.n:
                raise DomainError(f"{g} uses a strand index above n={self.n}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return GroupWord(self.family, self.n, self.letters[item])
        return self.letters[item]

    def __add__(self, other: "GroupWord") -> "GroupWord":
        if not isinstance(other, GroupWord):
            return NotImplemented
        if other.family != self.family or other.n != self.n:
            raise DomainError(
                f"cannot concatenate {self.family.value}/n={self.n} "
                f"with {other.family.value}/n={other.n}"
            )
        return GroupWord(self.family, self.n, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return invert_word(self)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.letters)


def word(family: Family | str, n: int, letters: Iterable = ()) -> GroupWord:
    return GroupWord(Family(family), n, tuple(letters))


def invert_word(w: GroupWord) -> GroupWord:
    """Inverse of a word over involutions: the reversed word."""
    return GroupWord(w.family, w.n, w.letters[::-1])


def canonicalize_prime(i: int, j: int, k: int, n: int | None = None) -> PrimeGenerator:
    if n is not None:
        check_strand_count(n)
        for x in (i, j, k):
            if not 1 <= x <= n:
                raise DomainError(f"index {x} outside 1..{n}")
    return PrimeGenerator(i, j, k)


@dataclass(frozen=True)
class BraidWord:
    """A word in the generators b_{ij}^{±1} of the pure braid group PB_n."""

    n: int
    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        check_strand_count(self.n)
        letters = tuple(self.letters)
        for b in letters:
            if not isinstance(b, BraidLetter):
                raise DomainError(f"{b!r} is not a braid letter")
            if b.j > self.n:
                raise DomainError(f"{b} uses a strand index above n={self.n}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, n: int, *gens: tuple) -> "BraidWord":
        """BraidWord.of(3, (1, 2), (2, 3, -1)) == b[1,2] b[2,3]^-1."""
        return cls(n, tuple(BraidLetter(*g) for g in gens))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[BraidLetter]:
        return iter(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.n != self.n:
            raise DomainError("braid words over different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(b.inverse() for b in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(b) for b in self.letters)


# --- alphabets -------------------------------------------------------------


def prime_generators(n: int) -> list[PrimeGenerator]:
    check_strand_count(n)
    return sorted({PrimeGenerator(*t) for t in permutations(range(1, n + 1), 3)})


def plain_generators(n: int) -> list[PlainGenerator]:
    check_strand_count(n)
    return [PlainGenerator(*t) for t in combinations(range(1, n + 1), 3)]


def double_prime_generators(n: int) -> list[DoublePrimeGenerator]:
    check_strand_count(n)
    return [DoublePrimeGenerator(*t) for t in permutations(range(1, n + 1), 3)]


def pair_letters(n: int) -> list[PairLetter]:
    check_strand_count(n)
    return [PairLetter(u, v) for u, v in permutations(range(1, n + 1), 2)]


def gn2_generators(n: int) -> list[Gn2Generator]:
    return [Gn2Generator(p, q) for p, q in combinations(pair_letters(n), 2)]


# --- parsing ---------------------------------------------------------------

_INT = r"\s*(\d+)\s*"
_TOKEN_PATTERNS = [
    ("double-prime", re.compile(rf"a''\[{_INT},{_INT},{_INT}\]")),
    ("prime", re.compile(rf"a'\[{_INT},{_INT},{_INT}\]")),
    ("plain", re.compile(rf"a\[{_INT},{_INT},{_INT}\]")),
    ("gn2", re.compile(rf"A\[\({_INT},{_INT}\),\({_INT},{_INT}\)\]")),
    ("z2free", re.compile(rf"x\[{_INT},{_INT}\]")),
    ("braid", re.compile(rf"b\[{_INT},{_INT}\](\^-1|\^1)?")),
]


def _tokens(text: str) -> Iterator[tuple[int, int, str]]:
    for idx, m in enumerate(re.finditer(r"\S+", text)):
        yield idx, m.start(), m.group()


def parse_token(tok: str, position: int = 0, token_index: int = 0):
    """Parse one token into ``(kind, generator)``."""
    for kind, pat in _TOKEN_PATTERNS:
        m = pat.fullmatch(tok)
        if m is None:
            continue
        nums = [int(g) for g in m.groups()[:4] if g is not None and g.strip().isdigit()]
        try:
            if kind == "prime":
                return kind, PrimeGenerator(*nums)
            if kind == "double-prime":
                return kind, DoublePrimeGenerator(*nums)
            if kind == "plain":
                return kind, PlainGenerator(*nums)
            if kind == "gn2":
                return kind, Gn2Generator(PairLetter(*nums[:2]), PairLetter(*nums[2:]))
            if kind == "z2free":
                return kind, PairLetter(*nums)
            exp = -1 if m.group(3) == "^-1" else 1
            return kind, BraidLetter(nums[0], nums[1], exp)
        except DomainError as exc:
            raise WordSyntaxError(f"invalid {kind} token {tok!r}: {exc}", position, token_index) from None
    raise WordSyntaxError(f"malformed token {tok!r}", position, token_index)


def _parse_all(text: str, expect: str | None, n: int | None = None):
    kinds, letters = set(), []
    for idx, pos, tok in _tokens(text):
        kind, gen = parse_token(tok, pos, idx)
        if n is not None and max(gen.indices) > n:
            raise WordSyntaxError(f"token {tok!r} uses an index above n={n}", pos, idx)
        if expect is not None and kind != expect:
            raise WordSyntaxError(f"expected a {expect} token, got {tok!r}", pos, idx)
        if kinds and kind not in kinds:
            raise WordSyntaxError(f"token {tok!r} mixes families in one word", pos, idx)
        kinds.add(kind)
        letters.append(gen)
    return (kinds.pop() if kinds else expect), letters


def _infer_n(letters: Sequence, n: int | None) -> int:
    if n is not None:
        return n
    return max([3] + [max(g.indices) for g in letters])


def parse_word(text: str, n: int | None = None, family: Family | str | None = None) -> GroupWord:
    """Parse a whitespace separated word; the family is inferred from the tokens.

    An empty text needs ``family`` to be given.  ``n`` defaults to the largest
    index present (at least 3).
    """
    fam = Family(family).value if family is not None else None
    kind, letters = _parse_all(text, fam, n)
    if kind is None:
        raise DomainError("cannot infer the family of an empty word")
    if kind == "braid":
        raise WordSyntaxError("braid tokens are not group-word letters; use parse_braid", 0, 0)
    n = _infer_n(letters, n)
    try:
        return GroupWord(Family(kind), n, tuple(letters))
    except DomainError as exc:
        raise WordSyntaxError(str(exc), 0, 0) from None


def parse_braid(text: str, n: int | None = None) -> BraidWord:
    _, letters = _parse_all(text, "braid", n)
    n = _infer_n(letters, n)
    try:
        return BraidWord(n, tuple(letters))
    except DomainError as exc:
        raise WordSyntaxError(str(exc), 0, 0) from None
