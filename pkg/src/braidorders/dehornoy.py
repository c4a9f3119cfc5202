"""The Dehornoy ordering of B_n, decided by handle reduction.

A sigma_i-handle is a subword  sigma_i^e v sigma_i^{-e}  (e = +-1) whose
interior v contains only letters of index > i.  Reducing it removes the two
wrapper letters and rewrites each interior sigma_{i+1}^d as
sigma_{i+1}^{-e} sigma_i^d sigma_{i+1}^{e}; letters of index >= i+2 commute
with sigma_i and pass through unchanged.  Repeated reduction terminates and
leaves a word in which the lowest occurring index appears with a single sign.

Convention: a braid is Dehornoy-positive when that lowest index occurs only
positively.  The sign is constant on braid elements, which makes this the
independent cross-check oracle for every other ordering in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braids import BraidWord, invert, multiply, reduce_letters
from .errors import BudgetExceededError

NEGATIVE, ZERO, POSITIVE = -1, 0, 1

DEFAULT_BUDGET = 1_000_000


def _find_handle(letters: list[int]) -> tuple[int, int] | None:
    """Position pair (p, t) of the handle whose closing letter is leftmost.

    Scanning for the earliest closing position guarantees the interior is
    itself handle-free, so interior sigma_{i+1} letters all carry one sign.
    """
    for t, k in enumerate(letters):
        i = abs(k)
        for p in range(t - 1, -1, -1):
            ip = abs(letters[p])
            if ip > i:
                continue
            if ip < i:
                break
            if letters[p] == -k:
                return p, t
            break
    return None


def _reduce_handle(letters: list[int], p: int, t: int) -> list[int]:
    opener = letters[p]
    i = abs(opener)
    e = 1 if opener > 0 else -1
    replacement: list[int] = []
    for k in letters[p + 1 : t]:
        if abs(k) == i + 1:
            d = 1 if k > 0 else -1
            replacement.extend((-e * (i + 1), d * i, e * (i + 1)))
        else:
            replacement.append(k)
    return list(reduce_letters(letters[:p] + replacement + letters[t + 1 :]))


@dataclass(frozen=True)
class HandleFreeWord:
    """A handle-free representative of a braid, plus its lowest index."""

    word: BraidWord
    main_index: int | None

    @property
    def main_sign(self) -> int:
        if self.main_index is None:
            return ZERO
        signs = {1 if k > 0 else -1 for k in self.word.letters if abs(k) == self.main_index}
        assert len(signs) == 1, "handle-free word has mixed signs on its main index"
        return signs.pop()


def handle_reduce(w: BraidWord, budget: int = DEFAULT_BUDGET) -> HandleFreeWord:
    """Reduce handles until none remain; the result represents the same braid.

    Raises BudgetExceededError (carrying the partial word) if more than
    ``budget`` reduction steps are needed.
    """
    letters = list(w.letters)
    steps = 0
    while True:
        found = _find_handle(letters)
        if found is None:
            break
        steps += 1
        if steps > budget:
            raise BudgetExceededError(
                f"handle reduction exceeded {budget} steps on a word of length {len(w)}",
                BraidWord(w.n, tuple(letters)),
            )
        letters = _reduce_handle(letters, *found)
    word = BraidWord(w.n, tuple(letters))
    main = min((abs(k) for k in letters), default=None)
    return HandleFreeWord(word, main)


def dehornoy_sign(w: BraidWord, budget: int = DEFAULT_BUDGET) -> int:
    """-1, 0 or +1; zero exactly on trivial braids."""
    return handle_reduce(w, budget).main_sign


def dehornoy_cmp(a: BraidWord, b: BraidWord, budget: int = DEFAULT_BUDGET) -> int:
    """-1 when a < b, 0 when equal, +1 when a > b; a < b iff a^-1 b is positive."""
    return -dehornoy_sign(multiply(invert(a), b), budget)


def is_trivial_braid(w: BraidWord, budget: int = DEFAULT_BUDGET) -> bool:
    return dehornoy_sign(w, budget) == ZERO
