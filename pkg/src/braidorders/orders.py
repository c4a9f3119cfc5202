"""Sign oracles for left-orderings and the combinators that build new ones.

An order oracle is anything with a strand count ``n`` and a ``sign`` method
mapping a braid word to -1 / 0 / +1 (zero exactly on trivial braids).  The
oracles here: handle reduction, ray orders, conjugates of an oracle, and
convex extensions that re-order the abelian soul block by an exact ordering
of Z^k while leaving everything outside untouched.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

from .braids import BraidWord, conjugate, invert, linking_number, multiply, permutation_of
from .dehornoy import DEFAULT_BUDGET, dehornoy_sign, is_trivial_braid
from .errors import MalformedInputError
from .nt import NTOrder, nt_sign


@runtime_checkable
class OrderOracle(Protocol):
    n: int

    def sign(self, b: BraidWord) -> int: ...

    def describe(self) -> str: ...


def order_cmp(oracle: OrderOracle, a: BraidWord, b: BraidWord) -> int:
    """-1 when a < b under the oracle's ordering, by left invariance."""
    return -oracle.sign(multiply(invert(a), b))


@dataclass(frozen=True)
class DehornoyOrder:
    """The handle-reduction ordering as an oracle."""

    n: int
    budget: int = DEFAULT_BUDGET

    def sign(self, b: BraidWord) -> int:
        return dehornoy_sign(b, self.budget)

    def describe(self) -> str:
        return "dehornoy"


@dataclass(frozen=True)
class ConjugatedOrder:
    """sign(b) = base.sign(h^-1 b h); nesting composes contravariantly."""

    base: OrderOracle
    h: BraidWord

    def __post_init__(self):
        if self.h.n != self.base.n:
            raise MalformedInputError("conjugator strand count differs from base")

    @property
    def n(self) -> int:
        return self.base.n

    def sign(self, b: BraidWord) -> int:
        return self.base.sign(conjugate(b, self.h))

    def describe(self) -> str:
        return f"conj:{self.base.describe()}:{self.h}"


def conjugate_order(base: OrderOracle, h: BraidWord) -> ConjugatedOrder:
    return ConjugatedOrder(base, h)


# --- exact orderings of Z^k --------------------------------------------------


@dataclass(frozen=True)
class ZkLex:
    """Lexicographic: sign of the first nonzero signed coordinate, in the
    given axis priority order (axes are vector positions)."""

    k: int
    axes: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.axes) != list(range(self.k)):
            raise MalformedInputError("axes must be a permutation of 0..k-1")
        if len(self.signs) != self.k or any(s not in (-1, 1) for s in self.signs):
            raise MalformedInputError("signs must be +-1 per axis")

    @staticmethod
    def standard(k: int) -> "ZkLex":
        return ZkLex(k, tuple(range(k)), (1,) * k)


@dataclass(frozen=True)
class ZkIntegerSlope:
    """sign of sum(w_i v_i) with a lexicographic tie break on zero."""

    k: int
    weights: tuple[int, ...]
    tie_break: ZkLex

    def __post_init__(self):
        if len(self.weights) != self.k or self.tie_break.k != self.k:
            raise MalformedInputError("weight/tie-break dimension mismatch")


@dataclass(frozen=True)
class ZkQuadraticSlope:
    """sign of sum((a_i + b_i sqrt(d)) v_i), exactly, in integer arithmetic."""

    k: int
    d: int
    weights: tuple[tuple[int, int], ...]

    def __post_init__(self):
        from math import isqrt

        if self.d <= 0 or isqrt(self.d) ** 2 == self.d:
            raise MalformedInputError("d must be a positive non-square")
        if len(self.weights) != self.k:
            raise MalformedInputError("weight dimension mismatch")


ZkOrderSpec = ZkLex | ZkIntegerSlope | ZkQuadraticSlope


def zk_sign(spec: ZkOrderSpec, v: Sequence[int]) -> int:
    if len(v) != spec.k:
        raise MalformedInputError(f"vector has {len(v)} coordinates, expected {spec.k}")
    if isinstance(spec, ZkLex):
        for axis, s in zip(spec.axes, spec.signs):
            if v[axis] != 0:
                return s * (1 if v[axis] > 0 else -1)
        return 0
    if isinstance(spec, ZkIntegerSlope):
        total = sum(w * x for w, x in zip(spec.weights, v))
        if total != 0:
            return 1 if total > 0 else -1
        return zk_sign(spec.tie_break, v)
    # quadratic slope: A + B sqrt(d) with exact sign bookkeeping
    a_part = sum(a * x for (a, _), x in zip(spec.weights, v))
    b_part = sum(b * x for (_, b), x in zip(spec.weights, v))
    if b_part == 0:
        return 0 if a_part == 0 else (1 if a_part > 0 else -1)
    if a_part == 0:
        return 1 if b_part > 0 else -1
    if a_part > 0 and b_part > 0:
        return 1
    if a_part < 0 and b_part < 0:
        return -1
    # opposite signs: compare a_part^2 against d b_part^2 on the positive side
    if a_part > 0:
        return 1 if a_part * a_part > spec.d * b_part * b_part else -1
    return 1 if spec.d * b_part * b_part > a_part * a_part else -1


# --- soul membership ----------------------------------------------------------


def zk_membership(
    b: BraidWord, soul: Sequence[int], budget: int = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """Exponent vector of b in <sigma_i : i in soul>, or None when outside.

    The permutation must move nothing outside the soul's transposition pairs,
    candidate exponents are read off linking numbers, and the candidate word
    is verified against b by an exact triviality check.
    """
    soul_sorted = sorted(set(soul))
    for i, j in itertools.combinations(soul_sorted, 2):
        if abs(i - j) < 2:
            raise MalformedInputError(f"soul generators {i}, {j} are adjacent")
    perm = permutation_of(b)
    pair_points = {p for i in soul_sorted for p in (i, i + 1)}
    for p in range(1, b.n + 1):
        image = perm(p)
        if p in pair_points:
            i = p if p in soul_sorted else p - 1
            if image not in (i, i + 1):
                return None
        elif image != p:
            return None
    exponents = tuple(linking_number(b, i, i + 1) for i in soul_sorted)
    candidate_letters: list[int] = []
    for i, e in zip(soul_sorted, exponents):
        candidate_letters.extend([i if e > 0 else -i] * abs(e))
    candidate = BraidWord(b.n, tuple(candidate_letters))
    if not is_trivial_braid(multiply(b, invert(candidate)), budget):
        return None
    return exponents


@dataclass(frozen=True)
class ConvexExtensionOrder:
    """Re-order the soul block by a Z^k ordering; defer to the base outside."""

    base: NTOrder
    soul_order: ZkOrderSpec

    def __post_init__(self):
        soul = sorted(self.base.spec.soul_generators)
        if not soul:
            raise MalformedInputError("convex extension needs a base with nonempty soul")
        if self.base.spec.type_tag != "finite":
            raise MalformedInputError("convex extension needs a finite-type base")
        if self.soul_order.k != len(soul):
            raise MalformedInputError("soul order rank differs from soul rank")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def soul(self) -> tuple[int, ...]:
        return tuple(sorted(self.base.spec.soul_generators))

    def sign(self, b: BraidWord) -> int:
        v = zk_membership(b, self.soul)
        if v is not None:
            return zk_sign(self.soul_order, v)
        return nt_sign(self.base, b)

    def describe(self) -> str:
        return f"ext:{self.base.describe()}:{self.soul_order!r}"


def convex_extension_sign(extension: ConvexExtensionOrder, b: BraidWord) -> int:
    return extension.sign(b)


def soul_lex_of_base(base: NTOrder) -> ZkLex:
    """The base order's own restriction to its soul, as a lex spec.

    Axis priority follows divergence depth: the generator that leaves the ray
    earliest dominates.  Every axis is positively oriented because positive
    half-twists are positive in every ray order.
    """
    from .nt import divergence_depth

    soul = sorted(base.spec.soul_generators)
    depths = {
        i: divergence_depth(
            BraidWord(base.n, (i,)), base.spec, base.convention, base.depth_cap
        ).depth
        for i in soul
    }
    order = sorted(range(len(soul)), key=lambda pos: depths[soul[pos]])
    return ZkLex(len(soul), tuple(order), (1,) * len(soul))
