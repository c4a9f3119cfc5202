"""Braid words in the Artin generators and exact combinatorics on them.

A braid on ``n`` strands is a word in the generators sigma_1 .. sigma_{n-1},
stored as a tuple of nonzero integers: the letter ``k`` with ``1 <= |k| <= n-1``
means ``sigma_{|k|}`` raised to ``sign(k)``.  Products read left to right, so
``a * b`` means "do ``a`` first"; the permutation of a word is composed in the
same direction.

Everything here is exact and immutable.  Words are kept freely reduced (no
adjacent ``k, -k`` pair); no braid-relation rewriting happens in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import MalformedInputError

Letters = tuple[int, ...]


def reduce_letters(letters: Iterable[int]) -> Letters:
    """Freely reduce a letter sequence by cancelling adjacent inverse pairs."""
    out: list[int] = []
    for k in letters:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """A freely reduced word in the Artin generators of B_n."""

    n: int
    letters: Letters = ()

    def __post_init__(self):
        if self.n < 2:
            raise MalformedInputError(f"strand count must be >= 2, got {self.n}")
        for k in self.letters:
            if not isinstance(k, int) or k == 0 or abs(k) > self.n - 1:
                raise MalformedInputError(
                    f"letter {k!r} out of range for B_{self.n} (need 1 <= |k| <= {self.n - 1})"
                )
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return multiply(self, other)

    def __invert__(self) -> "BraidWord":
        return invert(self)

    def __pow__(self, e: int) -> "BraidWord":
        if e < 0:
            return invert(self) ** (-e)
        out = BraidWord(self.n)
        for _ in range(e):
            out = multiply(out, self)
        return out

    def is_identity_word(self) -> bool:
        return not self.letters

    def is_positive_word(self) -> bool:
        """True when every letter is a positive generator (no inverses)."""
        return all(k > 0 for k in self.letters)

    def __str__(self) -> str:
        return format_braid(self)


def braid(n: int, letters: Iterable[int] = ()) -> BraidWord:
    return BraidWord(n, tuple(letters))


def sigma(n: int, i: int, power: int = 1) -> BraidWord:
    """The generator sigma_i of B_n raised to an integer power."""
    if not 1 <= i <= n - 1:
        raise MalformedInputError(f"generator index {i} out of range for B_{n}")
    k = i if power >= 0 else -i
    return BraidWord(n, (k,) * abs(power))


def free_reduce_braid(w: BraidWord) -> BraidWord:
    """Free reduction; idempotent, and a no-op on BraidWord values (they
    reduce on construction), kept as the explicit named operation."""
    return BraidWord(w.n, reduce_letters(w.letters))


def multiply(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.n != b.n:
        raise MalformedInputError(f"strand counts differ: {a.n} vs {b.n}")
    return BraidWord(a.n, a.letters + b.letters)


def invert(a: BraidWord) -> BraidWord:
    return BraidWord(a.n, tuple(-k for k in reversed(a.letters)))


def conjugate(b: BraidWord, h: BraidWord) -> BraidWord:
    """h^-1 * b * h, freely reduced."""
    return multiply(multiply(invert(h), b), h)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple of images of 1..n."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise MalformedInputError(f"images {self.images} are not a bijection of 1..{self.n}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(n, tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Composition in word order: apply self first, then other."""
        if self.n != other.n:
            raise MalformedInputError("permutation sizes differ")
        return Permutation(self.n, tuple(other.images[self.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(self.n, tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))


def permutation_of(w: BraidWord) -> Permutation:
    """Image of the word in the symmetric group, sigma_i -> (i, i+1),
    composed left to right along the word: strand label to final position."""
    at = list(range(1, w.n + 1))  # at[p] = label currently in position p+1
    for k in w.letters:
        i = abs(k)
        # positions i, i+1 swap regardless of the crossing sign
        at[i - 1], at[i] = at[i], at[i - 1]
    images = [0] * w.n
    for p, label in enumerate(at):
        images[label - 1] = p + 1
    return Permutation(w.n, tuple(images))


def linking_number(w: BraidWord, i: int, j: int) -> int:
    """Signed count of crossings between the strands starting at positions i < j.

    Invariant under free reduction and braid-relation rewriting, which makes it
    the exponent reader inside abelian blocks of the form <sigma_i : i in S>.
    """
    if not (1 <= i < j <= w.n):
        raise MalformedInputError(f"strand pair ({i}, {j}) out of range for B_{w.n}")
    # at[p] = label of the strand currently in position p+1
    at = list(range(1, w.n + 1))
    total = 0
    pair = {i, j}
    for k in w.letters:
        p = abs(k)
        a, b = at[p - 1], at[p]
        if {a, b} == pair:
            total += 1 if k > 0 else -1
        at[p - 1], at[p] = b, a
    return total


# letter ranking used for length-then-lexicographic enumeration and witnesses:
# 1 < -1 < 2 < -2 < ...
def letter_rank(k: int) -> int:
    return 2 * (abs(k) - 1) + (0 if k > 0 else 1)


def word_sort_key(w: BraidWord) -> tuple:
    return (len(w.letters), tuple(letter_rank(k) for k in w.letters))


@dataclass(frozen=True)
class BallSpec:
    """All freely reduced words of length <= max_length in B_n.

    Words, not group elements: no deduplication by braid equality is done.
    """

    n: int
    max_length: int = 0

    def __post_init__(self):
        if self.max_length < 0:
            raise MalformedInputError("max_length must be >= 0")

    def alphabet(self) -> list[int]:
        letters = []
        for i in range(1, self.n):
            letters.extend((i, -i))
        return letters

    def words(self) -> Iterator[BraidWord]:
        """Fresh cursor over the ball in length-then-lexicographic order."""
        return enumerate_ball(self)

    def __iter__(self) -> Iterator[BraidWord]:
        return self.words()

    def count(self) -> int:
        g = 2 * (self.n - 1)
        total = 1
        for ell in range(1, self.max_length + 1):
            total += g * (g - 1) ** (ell - 1)
        return total


def enumerate_ball(spec: BallSpec) -> Iterator[BraidWord]:
    """Yield every freely reduced word of length <= max_length exactly once,
    in length-then-lexicographic order (letters ranked 1 < -1 < 2 < -2 < ...)."""
    alphabet = spec.alphabet()
    yield BraidWord(spec.n)
    frontier: list[Letters] = [()]
    for _ in range(spec.max_length):
        new_frontier: list[Letters] = []
        for prefix in frontier:
            last = prefix[-1] if prefix else 0
            for k in alphabet:
                if k == -last:
                    continue
                new_frontier.append(prefix + (k,))
        for letters in new_frontier:
            yield BraidWord(spec.n, letters)
        frontier = new_frontier


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse the whitespace-separated integer syntax, e.g. "1 -2 1"."""
    text = text.strip()
    if not text:
        return BraidWord(n)
    try:
        letters = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise MalformedInputError(f"cannot parse braid word {text!r}: {exc}") from None
    return BraidWord(n, letters)


def format_braid(w: BraidWord) -> str:
    return " ".join(str(k) for k in w.letters)


def random_word(rng, n: int, length: int) -> BraidWord:
    """A uniformly random freely reduced word of exactly the given length."""
    alphabet = [k for i in range(1, n) for k in (i, -i)]
    letters: list[int] = []
    for _ in range(length):
        choices = [k for k in alphabet if not letters or k != -letters[-1]]
        letters.append(rng.choice(choices))
    return BraidWord(n, tuple(letters))
