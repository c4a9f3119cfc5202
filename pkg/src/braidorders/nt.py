"""Orderings of B_n induced by the action on a ray, and their convex structure.

A GeodesicSpec names a ray (finite word or infinite stream) together with its
separating structure: the prefix depths at which the ray has cut one more pair
of punctures apart, and the generators of its maximal abelian convex subgroup
(the soul).  The induced ordering compares a braid's image of the ray against
the ray itself by boundary angle; convex subgroup membership is divergence
depth against the separating depths.

The equivalence of depth membership with the geometric stabilizers is an
assumption validated on the catalog: membership tables, nesting, closure and
convexity are all checked by tests and by convex_chain_report.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Literal, Sequence

from .artin import _letter_template, artin_map_of, image_ray
from .braids import BallSpec, BraidWord, invert, multiply
from .errors import (
    MalformedInputError,
    SearchFailureError,
    SoulValidationError,
    UndecidedComparisonError,
)
from .freewords import (
    FreeWord,
    Ray,
    format_infinite_word,
    is_infinite,
    parse_free_word,
    parse_infinite_word,
)
from .planar import (
    DEFAULT_DEPTH_CAP,
    EQUAL,
    GREATER,
    LESS,
    GermConvention,
    common_prefix_length,
    planar_cmp,
)

TypeTag = Literal["finite", "infinite", "full_infinite"]


@dataclass(frozen=True)
class GeodesicSpec:
    """A named ray plus separating depths, soul generators and type tag."""

    name: str
    n: int
    word: Ray
    separating_depths: tuple[int, ...] = ()
    soul_generators: frozenset[int] = frozenset()
    type_tag: TypeTag = "finite"

    def __post_init__(self):
        object.__setattr__(self, "soul_generators", frozenset(self.soul_generators))
        object.__setattr__(self, "separating_depths", tuple(self.separating_depths))
        depths = self.separating_depths
        if any(d <= 0 for d in depths) or list(depths) != sorted(set(depths)):
            raise MalformedInputError("separating depths must be strictly increasing positives")
        for i, j in itertools.combinations(sorted(self.soul_generators), 2):
            if abs(i - j) < 2:
                raise MalformedInputError(f"soul generators {i}, {j} are adjacent")
        for i in self.soul_generators:
            if not 1 <= i <= self.n - 1:
                raise MalformedInputError(f"soul generator {i} out of range")

    @property
    def m(self) -> int:
        return len(self.separating_depths)

    def validate(self) -> None:
        """Structural invariants for catalog-grade specs."""
        if self.type_tag == "finite":
            if not isinstance(self.word, FreeWord):
                raise MalformedInputError(f"{self.name}: finite type needs a finite word")
            if self.m != self.n - 1:
                raise MalformedInputError(f"{self.name}: finite type needs n-1 separating depths")
            if self.separating_depths and self.separating_depths[-1] > len(self.word):
                raise MalformedInputError(f"{self.name}: separating depth beyond word length")
            if not self.soul_generators:
                raise MalformedInputError(f"{self.name}: finite type has a nonempty soul")
        else:
            if isinstance(self.word, FreeWord):
                raise MalformedInputError(f"{self.name}: infinite type needs a stream")
            if self.soul_generators:
                raise MalformedInputError(f"{self.name}: infinite type has a trivial soul")
            if self.type_tag == "full_infinite" and self.m != 0:
                raise MalformedInputError(f"{self.name}: full infinite type has no depths")
            if self.type_tag == "infinite" and not 0 < self.m < self.n - 1:
                raise MalformedInputError(f"{self.name}: mixed type needs 0 < m < n-1")


@dataclass(frozen=True)
class NTOrder:
    """The left-ordering induced by a spec, as a sign oracle on braid words."""

    spec: GeodesicSpec
    convention: GermConvention
    depth_cap: int = DEFAULT_DEPTH_CAP

    def __post_init__(self):
        if self.convention.n != self.spec.n:
            raise MalformedInputError("convention rank must match the spec strand count")

    @property
    def n(self) -> int:
        return self.spec.n

    def sign(self, b: BraidWord) -> int:
        return nt_sign(self, b)

    def cmp(self, a: BraidWord, b: BraidWord) -> int:
        return nt_cmp(self, a, b)

    def describe(self) -> str:
        return f"nt:{self.spec.name}"


def braid_image_of_word(b: BraidWord, letters: tuple[int, ...], mirrored: bool) -> tuple[int, ...]:
    """Image of a finite free word under the braid map, folded right to left.

    Same result as apply_map(artin_map_of(b), .) but only transports the one
    word, which is what the finite-type sign evaluation needs.
    """
    for letter in reversed(b.letters):
        template = _letter_template(letter, mirrored)
        out: list[int] = []
        for k in letters:
            img = template.get(abs(k))
            if img is None:
                seq: Sequence[int] = (k,)
            elif k > 0:
                seq = img
            else:
                seq = tuple(-m for m in reversed(img))
            for m in seq:
                if out and out[-1] == -m:
                    out.pop()
                else:
                    out.append(m)
        letters = tuple(out)
    return letters


def acted_ray(b: BraidWord, spec: GeodesicSpec, convention: GermConvention) -> Ray:
    """The image of the spec's ray under the braid."""
    if isinstance(spec.word, FreeWord):
        return FreeWord(
            spec.n, braid_image_of_word(b, spec.word.letters, convention.artin_mirrored)
        )
    m = artin_map_of(b, convention.artin_mirrored)
    return image_ray(m, spec.word)


def act_on_geodesic(b: BraidWord, spec: GeodesicSpec, convention: GermConvention) -> GeodesicSpec:
    """The spec for the image ray; only the name is recomputed."""
    if b.n != spec.n:
        raise MalformedInputError("strand counts differ")
    word = acted_ray(b, spec, convention)
    name = f"({b}).{spec.name}" if b.letters else spec.name
    return replace(spec, name=name, word=word)


def nt_sign(order: NTOrder, b: BraidWord) -> int:
    """-1 / 0 / +1: positive iff the braid moves the ray to a larger angle."""
    if b.n != order.n:
        raise MalformedInputError("strand counts differ")
    if not b.letters:
        return 0
    image = acted_ray(b, order.spec, order.convention)
    verdict = planar_cmp(order.spec.word, image, order.convention, order.depth_cap)
    return -verdict


def nt_cmp(order: NTOrder, a: BraidWord, b: BraidWord) -> int:
    """-1 when a < b, 0 when equal, +1 when a > b, via left invariance."""
    return -nt_sign(order, multiply(invert(a), b))


@dataclass(frozen=True)
class DivergenceReport:
    depth: int
    verdict: Literal["less", "equal", "greater", "undecided"]


def divergence_depth(
    b: BraidWord, spec: GeodesicSpec, convention: GermConvention, depth_cap: int = DEFAULT_DEPTH_CAP
) -> DivergenceReport:
    """Longest common prefix of the ray and its image, with the angle verdict."""
    image = acted_ray(b, spec, convention)
    depth, decided = common_prefix_length(spec.word, image, depth_cap)
    if not decided:
        return DivergenceReport(depth, "undecided")
    try:
        verdict = planar_cmp(spec.word, image, convention, depth_cap)
    except UndecidedComparisonError:
        return DivergenceReport(depth, "undecided")
    names = {LESS: "less", EQUAL: "equal", GREATER: "greater"}
    return DivergenceReport(depth, names[verdict])


def in_convex_subgroup(
    b: BraidWord,
    spec: GeodesicSpec,
    i: int,
    convention: GermConvention,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> bool:
    """Membership in the i-th convex level: divergence depth >= i-th depth."""
    if not 1 <= i <= spec.m:
        raise MalformedInputError(f"level {i} out of range (spec has {spec.m})")
    report = divergence_depth(b, spec, convention, depth_cap)
    if report.verdict == "undecided" and report.depth < spec.separating_depths[i - 1]:
        raise UndecidedComparisonError(depth_cap)
    return report.depth >= spec.separating_depths[i - 1]


@dataclass(frozen=True)
class ChainLevel:
    index: int
    depth: int
    generator_pattern: tuple[int, ...]
    members_in_ball: int
    checked: int
    violations: int


@dataclass(frozen=True)
class ChainReport:
    spec_name: str
    ambient_pattern: tuple[int, ...]
    levels: tuple[ChainLevel, ...]
    undecided_skipped: int

    @property
    def total_violations(self) -> int:
        return sum(lv.violations for lv in self.levels)

    def patterns(self) -> list[tuple[int, ...]]:
        """Distinct nonempty membership patterns, innermost first, ambient last."""
        seen: list[tuple[int, ...]] = []
        for lv in sorted(self.levels, key=lambda lv: lv.index, reverse=True):
            if lv.generator_pattern and lv.generator_pattern not in seen:
                seen.append(lv.generator_pattern)
        if self.ambient_pattern not in seen:
            seen.append(self.ambient_pattern)
        return seen


def convex_chain_report(
    spec: GeodesicSpec,
    sample: BallSpec,
    convention: GermConvention,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> ChainReport:
    """Membership patterns per level plus an exhaustive ball convexity check.

    For each level, every ball word outside the level must not lie strictly
    between the level's order-minimum and order-maximum within the ball;
    expected violation count is zero.
    """
    if spec.m < 1:
        raise MalformedInputError(f"{spec.name}: chain report needs at least one depth")
    if sample.n != spec.n:
        raise MalformedInputError("ball strand count differs from spec")
    order = NTOrder(spec, convention, depth_cap)
    undecided = 0

    words = list(sample.words())
    depths: dict[BraidWord, int] = {}
    for w in words:
        report = divergence_depth(w, spec, convention, depth_cap)
        if report.verdict == "undecided":
            undecided += 1
        depths[w] = report.depth

    gen_depths = {}
    for j in range(1, spec.n):
        gen_depths[j] = min(
            divergence_depth(BraidWord(spec.n, (j,)), spec, convention, depth_cap).depth,
            divergence_depth(BraidWord(spec.n, (-j,)), spec, convention, depth_cap).depth,
        )

    levels = []
    for i, d in enumerate(spec.separating_depths, start=1):
        pattern = [j for j in range(1, spec.n) if gen_depths[j] >= d]
        members = [w for w in words if depths[w] >= d]
        outside = [w for w in words if depths[w] < d]
        violations = 0
        checked = 0
        if members:
            lo = hi = members[0]
            for w in members[1:]:
                if order.cmp(w, lo) == LESS:
                    lo = w
                if order.cmp(w, hi) == GREATER:
                    hi = w
            for g in outside:
                checked += 1
                try:
                    if order.cmp(lo, g) == LESS and order.cmp(g, hi) == LESS:
                        violations += 1
                except UndecidedComparisonError:
                    undecided += 1
        levels.append(
            ChainLevel(i, d, tuple(pattern), len(members), checked, violations)
        )
    ambient = tuple(range(1, spec.n))
    return ChainReport(spec.name, ambient, tuple(levels), undecided)


def soul_of(
    spec: GeodesicSpec,
    convention: GermConvention | None = None,
    validate: bool = False,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> frozenset[int]:
    """The soul generators; with validate=True they are recomputed from the
    chain as the outermost level whose nonempty pattern is pairwise
    non-adjacent, and checked against the stored value."""
    if not validate:
        return spec.soul_generators
    if convention is None:
        raise MalformedInputError("validation needs the germ convention")
    gen_depths = {
        j: min(
            divergence_depth(BraidWord(spec.n, (j,)), spec, convention, depth_cap).depth,
            divergence_depth(BraidWord(spec.n, (-j,)), spec, convention, depth_cap).depth,
        )
        for j in range(1, spec.n)
    }
    recomputed: frozenset[int] = frozenset()
    for d in spec.separating_depths:
        pattern = [j for j in range(1, spec.n) if gen_depths[j] >= d]
        if pattern and all(
            abs(a - b) >= 2 for a, b in itertools.combinations(pattern, 2)
        ):
            recomputed = frozenset(pattern)
            break
    if recomputed != spec.soul_generators:
        raise SoulValidationError(
            f"{spec.name}: recomputed soul {sorted(recomputed)} != stored {sorted(spec.soul_generators)}"
        )
    return spec.soul_generators


@dataclass(frozen=True)
class ConradWitness:
    """Positive f, g with f g^k < g for every k up to the verified bound."""

    f: BraidWord
    g: BraidWord
    k_verified: int


def conrad_witness_search(
    order,
    k_max: int,
    ball: BallSpec,
    priority_pairs: Sequence[tuple[BraidWord, BraidWord]] = (),
) -> ConradWitness:
    """First pair (priority candidates, then ball order) violating the Conrad
    property up to k_max.  Raises SearchFailureError when none exists."""

    def is_witness(f: BraidWord, g: BraidWord) -> bool:
        if order.sign(f) <= 0 or order.sign(g) <= 0:
            return False
        gk = BraidWord(ball.n)
        for _ in range(k_max + 1):
            # f g^k < g  <=>  (f g^k)^-1 g  positive
            if order.sign(multiply(invert(multiply(f, gk)), g)) <= 0:
                return False
            gk = multiply(gk, g)
        return True

    for f, g in priority_pairs:
        if is_witness(f, g):
            return ConradWitness(f, g, k_max)
    words = list(ball.words())
    for f in words:
        for g in words:
            if is_witness(f, g):
                return ConradWitness(f, g, k_max)
    raise SearchFailureError(
        f"no Conradian-failure witness in ball L={ball.max_length} with k_max={k_max}"
    )


@dataclass(frozen=True)
class TotalityReport:
    spec_name: str
    ball: BallSpec
    tie_words: tuple[BraidWord, ...]
    records: tuple[tuple[int, BraidWord], ...]
    max_depth: int
    depth_target: int

    @property
    def degenerate(self) -> bool:
        return bool(self.tie_words)

    @property
    def covered(self) -> bool:
        return self.max_depth >= self.depth_target


def totality_probe(
    spec: GeodesicSpec,
    ball: BallSpec,
    depth_target: int,
    convention: GermConvention,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    conjugator_ball: BallSpec | None = None,
) -> TotalityReport:
    """Empirical totality of an infinite-type spec.

    (a) every nontrivial ball word must diverge from the ray before the cap
    (words that do not are reported as ties / degeneracy);
    (b) small elements: a deterministic candidate family (ball words, powers,
    and conjugated generators) is scanned for braids of ever larger
    divergence depth, up to depth_target.
    """
    if not is_infinite(spec.word):
        raise MalformedInputError(f"{spec.name}: totality probe needs an infinite-type spec")
    ties: list[BraidWord] = []
    records: list[tuple[int, BraidWord]] = []
    best = -1

    def consider(w: BraidWord, tie_eligible: bool) -> None:
        nonlocal best
        if not w.letters:
            return
        depth, decided = common_prefix_length(
            spec.word, acted_ray(w, spec, convention), depth_cap
        )
        if not decided:
            if tie_eligible:
                ties.append(w)
            return
        if depth > best:
            best = depth
            records.append((depth, w))

    for w in ball.words():
        consider(w, tie_eligible=True)

    if best < depth_target:
        conj_ball = conjugator_ball or ball
        for g in conj_ball.words():
            if best >= depth_target:
                break
            for i in range(1, spec.n):
                for e in (1, -1, 2, -2):
                    w = multiply(multiply(g, BraidWord(spec.n, (i,) * abs(e) if e > 0 else (-i,) * abs(e))), invert(g))
                    consider(w, tie_eligible=False)

    return TotalityReport(
        spec.name, ball, tuple(ties), tuple(records), best, depth_target
    )


# --- spec file round trip ---------------------------------------------------


def format_geodesic_spec(spec: GeodesicSpec) -> str:
    if isinstance(spec.word, FreeWord):
        word_text = str(spec.word)
    else:
        word_text = format_infinite_word(spec.word)
    lines = [
        f"name={spec.name}",
        f"n={spec.n}",
        f"type={spec.type_tag}",
        f"word={word_text}",
        f"depths={' '.join(str(d) for d in spec.separating_depths)}",
        f"soul={' '.join(str(i) for i in sorted(spec.soul_generators))}",
    ]
    return "\n".join(lines) + "\n"


def parse_geodesic_spec(text: str) -> GeodesicSpec:
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise MalformedInputError(f"bad spec line {line!r}")
        key, value = line.split("=", 1)
        fields[key.strip()] = value.strip()
    try:
        name = fields["name"]
        n = int(fields["n"])
        type_tag = fields["type"]
    except KeyError as exc:
        raise MalformedInputError(f"spec file missing field {exc}") from None
    if type_tag not in ("finite", "infinite", "full_infinite"):
        raise MalformedInputError(f"unknown type {type_tag!r}")
    word_text = fields.get("word", "")
    word: Ray
    if type_tag == "finite":
        word = parse_free_word(word_text, n)
    else:
        word = parse_infinite_word(word_text, n)
    depths = tuple(int(tok) for tok in fields.get("depths", "").split())
    soul = frozenset(int(tok) for tok in fields.get("soul", "").split())
    spec = GeodesicSpec(name, n, word, depths, soul, type_tag)  # type: ignore[arg-type]
    spec.validate()
    return spec
