"""Maps between the groups: phi, h, the forgetful projection, the g action, f and Phi."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping

from .core import (
    BraidWord,
    DomainError,
    Family,
    GroupWord,
    Gn2Generator,
    PairLetter,
    PlainGenerator,
    PrimeGenerator,
    check_strand_count,
    pair_letters,
)
from .solver import BudgetExceeded, SolverBudget, is_minimal


def phi(w: GroupWord) -> GroupWord:
    """a'_{ijk} -> a_{ij,ik} a_{kj,ki}, letterwise."""
    _expect(w, Family.PRIME)
    out = []
    for g in w.letters:
        i, j, k = g.indices
        out.append(Gn2Generator((i, j), (i, k)))
        out.append(Gn2Generator((k, j), (k, i)))
    return GroupWord(Family.GN2, w.n, tuple(out))


def h(w: GroupWord) -> GroupWord:
    """a''_{ijk} -> a_{ij,ik}, letterwise."""
    _expect(w, Family.DOUBLE_PRIME)
    return GroupWord(
        Family.GN2, w.n, tuple(Gn2Generator((g.i, g.j), (g.i, g.k)) for g in w.letters)
    )


def project_plain(w: GroupWord) -> GroupWord:
    _expect(w, Family.PRIME)
    return GroupWord(Family.PLAIN, w.n, tuple(PlainGenerator(*g.indices) for g in w.letters))


def _expect(w: GroupWord, family: Family) -> None:
    if w.family is not family:
        raise DomainError(f"expected a {family.value} word, got {w.family.value}")


# --- free product of Z_2's and the g action ---------------------------------


def z2_reduce(w: GroupWord) -> GroupWord:
    _expect(w, Family.Z2FREE)
    return GroupWord(Family.Z2FREE, w.n, _cancel(w.letters))


def _cancel(letters) -> tuple:
    stack: list = []
    for x in letters:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class Z2Automorphism:
    """An endomorphism of the free product of Z_2's on the letters x[u,v].

    ``images`` maps every letter to a reduced word (tuple of PairLetter).
    Composition ``a.then(b)`` applies ``a`` first, then substitutes ``b``.
    """

    n: int
    images: Mapping[PairLetter, tuple]

    @classmethod
    def identity(cls, n: int) -> "Z2Automorphism":
        check_strand_count(n)
        return cls(n, {x: (x,) for x in pair_letters(n)})

    def __call__(self, x: PairLetter) -> GroupWord:
        return GroupWord(Family.Z2FREE, self.n, self.images[x])

    def apply(self, w: GroupWord) -> GroupWord:
        _expect(w, Family.Z2FREE)
        return GroupWord(Family.Z2FREE, self.n, self._substitute(w.letters))

    def _substitute(self, letters) -> tuple:
        out = []
        for x in letters:
            out.extend(self.images[x])
        return _cancel(out)

    def then(self, other: "Z2Automorphism") -> "Z2Automorphism":
        if other.n != self.n:
            raise DomainError("automorphisms over different strand counts")
        return Z2Automorphism(
            self.n, {x: other._substitute(img) for x, img in self.images.items()}
        )

    def is_identity(self) -> bool:
        return all(img == (x,) for x, img in self.images.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Z2Automorphism):
            return NotImplemented
        return self.n == other.n and dict(self.images) == dict(other.images)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.images.items()))))

    def format(self) -> str:
        return "\n".join(
            f"{x} -> {' '.join(map(str, img))}" for x, img in sorted(self.images.items())
        )


def g_elem(t: PrimeGenerator, n: int) -> Z2Automorphism:
    """x[i,j] -> x[i,k] x[i,j] x[i,k], x[k,j] -> x[k,i] x[k,j] x[k,i], rest fixed."""
    if max(t.indices) > n:
        raise DomainError(f"{t} uses a strand index above n={n}")
    i, j, k = t.indices
    images = dict(Z2Automorphism.identity(n).images)
    images[PairLetter(i, j)] = (PairLetter(i, k), PairLetter(i, j), PairLetter(i, k))
    images[PairLetter(k, j)] = (PairLetter(k, i), PairLetter(k, j), PairLetter(k, i))
    return Z2Automorphism(n, images)


def g_word(w: GroupWord) -> Z2Automorphism:
    _expect(w, Family.PRIME)
    acc = Z2Automorphism.identity(w.n)
    for t in w.letters:
        acc = acc.then(g_elem(t, w.n))
    return acc


# --- f on generators of PB_n ------------------------------------------------


class FConvention(enum.Enum):
    STATEMENT = "statement"  # central factor c'_{j,i}^2
    PROOF = "proof"  # central factor c'_{i,j}^2
    GEOMETRIC = "geometric"  # traced from the standard dynamics


def c_prime(i: int, j: int, n: int) -> GroupWord:
    """c'_{i,j} = prod_{k=j+1..n} a'_{j,i,k} * prod_{k=1..j-1} a'_{j,i,k}, k not in {i, j}."""
    check_strand_count(n)
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"c'_{{i,j}} needs distinct i, j in 1..{n}, got ({i},{j})")
    ks = [k for k in range(j + 1, n + 1)] + [k for k in range(1, j)]
    return GroupWord(Family.PRIME, n, tuple(PrimeGenerator(j, i, k) for k in ks if k != i))


def f_generator(i: int, j: int, n: int, conv: FConvention | str = FConvention.STATEMENT) -> GroupWord:
    """The displayed algebraic image of b_{ij}:

    c'_{i,i+1}^-1 ... c'_{i,j-1}^-1 * center^2 * c'_{i,j-1} ... c'_{i,i+1}
    """
    conv = FConvention(conv)
    check_strand_count(n)
    if not (1 <= i < j <= n):
        raise DomainError(f"f(b_ij) needs 1 <= i < j <= {n}, got ({i},{j})")
    if conv is FConvention.GEOMETRIC:
        raise DomainError("the geometric image comes from the dynamics tracer")
    center = c_prime(j, i, n) if conv is FConvention.STATEMENT else c_prime(i, j, n)
    right = GroupWord(Family.PRIME, n)
    for m in range(j - 1, i, -1):
        right = right + c_prime(i, m, n)
    return right.inverse() + center + center + right


def Phi(
    braid: BraidWord,
    source: FConvention | str = FConvention.GEOMETRIC,
    generator_image: Callable[[int, int, int], GroupWord] | None = None,
) -> GroupWord:
    """phi(f(braid)) with f taken letterwise from ``source``.

    For the geometric source ``generator_image(n, i, j)`` supplies f(b_ij);
    by default it is traced from the standard generator trajectories.
    """
    return phi(f_braid(braid, source, generator_image))


def f_braid(
    braid: BraidWord,
    source: FConvention | str = FConvention.GEOMETRIC,
    generator_image: Callable[[int, int, int], GroupWord] | None = None,
) -> GroupWord:
    source = FConvention(source)
    n = braid.n
    if source is FConvention.GEOMETRIC:
        if generator_image is None:
            from .dynamics import traced_generator_word

            generator_image = traced_generator_word
        image = generator_image
    else:
        def image(n_, i, j):
            return f_generator(i, j, n_, source)

    out = GroupWord(Family.PRIME, n)
    for b in braid.letters:
        g = image(n, b.i, b.j)
        out = out + (g if b.exponent == 1 else g.inverse())
    return out


# --- sufficient minimality condition ----------------------------------------


@dataclass(frozen=True)
class MinimalityCertificate:
    minimal: bool
    budget_exceeded: bool = False

    def __str__(self) -> str:
        if self.minimal:
            return "Minimal"
        return "Unknown (budget exceeded)" if self.budget_exceeded else "Unknown"


def minimality_certificate(w: GroupWord, budget: SolverBudget | None = None) -> MinimalityCertificate:
    """Minimal when phi(w) is minimal in G_N^2; otherwise nothing is claimed."""
    try:
        return MinimalityCertificate(is_minimal(phi(w), budget))
    except BudgetExceeded:
        return MinimalityCertificate(False, budget_exceeded=True)
