"""Reduced words in the free group on puncture loops, finite and infinite.

F_n is generated by the loops x_1 .. x_n; a letter ``k`` with ``1 <= |k| <= n``
means ``x_{|k|}`` raised to ``sign(k)``.  Finite words are always freely
reduced.  Infinite words come in three flavours:

* eventually periodic:  head . period . period . ...
* Sturmian over two positive letters, cut by an exact quadratic irrational
  slope (all arithmetic in integers, no floats anywhere);
* custom: any coherent prefix supplier (longer requests extend shorter ones).

Infinite words over positive letters are reduced for free; custom suppliers
are trusted but spot-checked for coherence where they are consumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Iterable, Union

from .errors import MalformedInputError

FreeLetters = tuple[int, ...]


def reduce_free(letters: Iterable[int]) -> FreeLetters:
    out: list[int] = []
    for k in letters:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in F_n."""

    n: int
    letters: FreeLetters = ()

    def __post_init__(self):
        if self.n < 1:
            raise MalformedInputError(f"rank must be >= 1, got {self.n}")
        for k in self.letters:
            if not isinstance(k, int) or k == 0 or abs(k) > self.n:
                raise MalformedInputError(f"letter {k!r} out of range for F_{self.n}")
        object.__setattr__(self, "letters", reduce_free(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.n != other.n:
            raise MalformedInputError("ranks differ")
        return FreeWord(self.n, self.letters + other.letters)

    def __invert__(self) -> "FreeWord":
        return FreeWord(self.n, tuple(-k for k in reversed(self.letters)))

    def prefix(self, length: int) -> FreeLetters:
        return self.letters[:length]

    def __str__(self) -> str:
        return " ".join(str(k) for k in self.letters)


def free_word(n: int, letters: Iterable[int] = ()) -> FreeWord:
    return FreeWord(n, tuple(letters))


def parse_free_word(text: str, n: int) -> FreeWord:
    text = text.strip()
    if not text:
        return FreeWord(n)
    try:
        letters = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise MalformedInputError(f"cannot parse free word {text!r}: {exc}") from None
    return FreeWord(n, letters)


@dataclass(frozen=True)
class QuadraticIrrational:
    """The number (p + sqrt(d)) / q with integer p, q > 0 and non-square d > 0."""

    d: int
    p: int
    q: int

    def __post_init__(self):
        if self.d <= 0 or isqrt(self.d) ** 2 == self.d:
            raise MalformedInputError(f"d must be a positive non-square, got {self.d}")
        if self.q <= 0:
            raise MalformedInputError("q must be positive")

    def floor_times(self, k: int) -> int:
        """floor(k * (p + sqrt(d)) / q), exactly, for k >= 0."""
        if k < 0:
            raise MalformedInputError("floor_times needs k >= 0")
        if k == 0:
            return 0
        # floor((k p + sqrt(k^2 d)) / q): start from the isqrt estimate and
        # correct by the defining inequalities s q - k p <= sqrt(k^2 d) < ...
        m = k * k * self.d
        s = (k * self.p + isqrt(m)) // self.q
        while _le_sqrt(self.q * (s + 1) - k * self.p, m):
            s += 1
        while not _le_sqrt(self.q * s - k * self.p, m):
            s -= 1
        return s

    def __float__(self) -> float:  # display only
        return (self.p + self.d ** 0.5) / self.q


def _le_sqrt(a: int, m: int) -> bool:
    """a <= sqrt(m) for integers, m >= 0."""
    if a <= 0:
        return True
    return a * a <= m


@dataclass(frozen=True)
class EventuallyPeriodic:
    """head . period^omega; concatenations must stay reduced."""

    head: FreeWord
    period: FreeWord

    def __post_init__(self):
        if len(self.period) == 0:
            raise MalformedInputError("period must be nonempty")
        if self.head.n != self.period.n:
            raise MalformedInputError("head and period rank differ")
        probe = self.head.letters + self.period.letters + self.period.letters
        if reduce_free(probe) != probe:
            raise MalformedInputError("head.period.period is not freely reduced")

    @property
    def n(self) -> int:
        return self.period.n

    def prefix(self, length: int) -> FreeLetters:
        out = list(self.head.letters)
        while len(out) < length:
            out.extend(self.period.letters)
        return tuple(out[:length])


@dataclass(frozen=True)
class Sturmian:
    """The Sturmian word over two positive letters cut by an irrational slope.

    Position k carries letter_b when floor((k+1) slope) - floor(k slope) = 1,
    letter_a otherwise; the slope must lie in (0, 1) for both to occur.
    """

    n: int
    slope: QuadraticIrrational
    letter_a: int
    letter_b: int

    def __post_init__(self):
        if self.letter_a <= 0 or self.letter_b <= 0:
            raise MalformedInputError("Sturmian letters must be positive generators")
        if self.letter_a == self.letter_b:
            raise MalformedInputError("Sturmian letters must differ")
        if max(self.letter_a, self.letter_b) > self.n:
            raise MalformedInputError("Sturmian letters out of range")

    def prefix(self, length: int) -> FreeLetters:
        out = []
        prev = 0
        for k in range(length):
            cur = self.slope.floor_times(k + 1)
            out.append(self.letter_b if cur - prev == 1 else self.letter_a)
            prev = cur
        return tuple(out)


@dataclass(frozen=True)
class Custom:
    """An arbitrary coherent prefix supplier: supplier(m) extends supplier(k) for k <= m."""

    n: int
    supplier: Callable[[int], FreeLetters]
    label: str = "custom"

    def prefix(self, length: int) -> FreeLetters:
        out = self.supplier(length)
        if len(out) < length:
            raise MalformedInputError(
                f"custom supplier returned {len(out)} letters for request {length}"
            )
        return tuple(out[:length])


InfiniteWord = Union[EventuallyPeriodic, Sturmian, Custom]
Ray = Union[FreeWord, EventuallyPeriodic, Sturmian, Custom]


def is_infinite(word: Ray) -> bool:
    return not isinstance(word, FreeWord)


def ray_prefix(word: Ray, length: int) -> FreeLetters:
    """First ``length`` letters, or the whole word if finite and shorter."""
    if isinstance(word, FreeWord):
        return word.letters[:length]
    return word.prefix(length)


def parse_infinite_word(text: str, n: int) -> InfiniteWord:
    """Parse "head | period" or "sturmian d a b p q"."""
    text = text.strip()
    if text.startswith("sturmian"):
        parts = text.split()
        if len(parts) != 6:
            raise MalformedInputError(f"expected 'sturmian d a b p q', got {text!r}")
        d, a, b, p, q = (int(tok) for tok in parts[1:])
        return Sturmian(n, QuadraticIrrational(d, p, q), a, b)
    if "|" in text:
        head_text, period_text = text.split("|", 1)
        return EventuallyPeriodic(parse_free_word(head_text, n), parse_free_word(period_text, n))
    raise MalformedInputError(f"cannot parse infinite word {text!r}")


def format_infinite_word(word: InfiniteWord) -> str:
    if isinstance(word, EventuallyPeriodic):
        return f"{word.head} | {word.period}"
    if isinstance(word, Sturmian):
        s = word.slope
        return f"sturmian {s.d} {word.letter_a} {word.letter_b} {s.p} {s.q}"
    raise MalformedInputError(f"custom stream {word.label!r} has no text form")
