"""Space-of-orderings experiments: agreement metrics and convergence scans.

Reports are plain dataclasses with JSON-lines and CSV emitters; every scan is
deterministic given its inputs, and undecided sign evaluations are counted
and surfaced rather than coerced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .braids import BallSpec, BraidWord
from .errors import MalformedInputError, SearchFailureError, UndecidedComparisonError
from .nt import GeodesicSpec, NTOrder
from .orders import (
    ConjugatedOrder,
    ConvexExtensionOrder,
    OrderOracle,
    ZkIntegerSlope,
    order_cmp,
    soul_lex_of_base,
    zk_membership,
    zk_sign,
)

SCHEMA = "braidorders.report.v1"


@dataclass(frozen=True)
class AgreementReport:
    """Largest ball radius on which two oracles' signs coincide."""

    radius: int
    max_length: int
    witness: BraidWord | None
    witness_signs: tuple[int, int] | None
    undecided_count: int

    @property
    def full_agreement(self) -> bool:
        return self.witness is None


def _sign_pair(o1: OrderOracle, o2: OrderOracle, w: BraidWord):
    try:
        return o1.sign(w), o2.sign(w)
    except UndecidedComparisonError:
        return None


def agreement_radius(
    o1: OrderOracle, o2: OrderOracle, ball: BallSpec, workers: int = 1
) -> AgreementReport:
    """Compare signs on every word of the ball (words, not elements).

    The radius is the largest L with no disagreement among words of length
    <= L; the witness is the first disagreement in enumeration order, which
    is the length-lex smallest one.  Evaluation may fan out over workers;
    the result never depends on the worker count.
    """
    if o1.n != o2.n or ball.n != o1.n:
        raise MalformedInputError("strand counts differ")
    undecided = 0
    witness = None
    witness_signs = None
    radius = ball.max_length

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        from itertools import islice

        words_iter = ball.words()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            done = False
            while not done:
                chunk = list(islice(words_iter, 512))
                if not chunk:
                    break
                for w, pair in zip(chunk, pool.map(lambda x: _sign_pair(o1, o2, x), chunk)):
                    if pair is None:
                        undecided += 1
                        continue
                    if pair[0] != pair[1]:
                        witness, witness_signs = w, pair
                        radius = len(w) - 1
                        done = True
                        break
        return AgreementReport(radius, ball.max_length, witness, witness_signs, undecided)

    for w in ball.words():
        pair = _sign_pair(o1, o2, w)
        if pair is None:
            undecided += 1
            continue
        if pair[0] != pair[1]:
            witness = w
            witness_signs = pair
            radius = len(w) - 1
            break
    return AgreementReport(radius, ball.max_length, witness, witness_signs, undecided)


def order_distance(o1: OrderOracle, o2: OrderOracle, ball: BallSpec) -> Fraction:
    """2^-radius; exact when a disagreement witness exists in the ball.

    Without a witness the result is 0, a ball-limited lower bound: the true
    distance is then at most 2^-max_length but may be positive.
    """
    report = agreement_radius(o1, o2, ball)
    if report.full_agreement:
        return Fraction(0)
    return Fraction(1, 2 ** report.radius)


def find_disagreement(
    o1: OrderOracle, o2: OrderOracle, candidates: Iterable[BraidWord]
) -> tuple[BraidWord, int, int] | None:
    """First candidate on which the oracles' signs differ."""
    for w in candidates:
        try:
            s1, s2 = o1.sign(w), o2.sign(w)
        except UndecidedComparisonError:
            continue
        if s1 != s2:
            return w, s1, s2
    return None


@dataclass(frozen=True)
class ConjugateRow:
    j: int
    conjugator: BraidWord
    radius: int
    witness: BraidWord | None
    witness_signs: tuple[int, int] | None
    undecided_count: int


@dataclass(frozen=True)
class ConjugatesReport:
    spec_name: str
    ball: BallSpec
    rows: tuple[ConjugateRow, ...]

    @property
    def radii(self) -> tuple[int, ...]:
        return tuple(r.radius for r in self.rows)

    @property
    def reaches_bound(self) -> bool:
        return any(r.radius >= self.ball.max_length for r in self.rows)

    @property
    def all_distinct(self) -> bool:
        return all(r.witness is not None for r in self.rows)

    def to_json_lines(self) -> str:
        return report_json_lines(
            "conjugates",
            self.spec_name,
            [
                {
                    "j": r.j,
                    "conjugator": str(r.conjugator),
                    "radius": r.radius,
                    "witness": None if r.witness is None else str(r.witness),
                    "witness_signs": r.witness_signs,
                    "undecided_count": r.undecided_count,
                }
                for r in self.rows
            ],
        )

    def to_csv_rows(self) -> list[list]:
        return csv_table(
            [
                [r.j, r.radius, "" if r.witness is None else str(r.witness), r.undecided_count]
                for r in self.rows
            ]
        )


def _witness_candidates(
    s: int, u: BraidWord, j: int, extra_range: int = 6
) -> list[BraidWord]:
    """Deterministic distinctness candidates for the conjugator s^-j u:
    the words s^-(j+c) u s^(j+c-1), which sit just past the agreement ball."""
    out = []
    for c in range(1, extra_range + 1):
        letters = (-s,) * (j + c) + u.letters + (s,) * (j + c - 1)
        out.append(BraidWord(u.n, letters))
    return out


def converge_conjugates_experiment(
    spec: GeodesicSpec,
    pattern: tuple[int, BraidWord] | None,
    j_range: Sequence[int],
    ball: BallSpec,
    convention,
    depth_cap: int | None = None,
    conjugators: Sequence[BraidWord] | None = None,
) -> ConjugatesReport:
    """Agreement of the order with its conjugates by s^-j u along j.

    Per j: the agreement radius on the ball, plus a distinctness witness
    (ball disagreement if one exists, else the canonical just-past-the-ball
    candidates).  An explicit conjugator list replaces the pattern, which is
    how trivial-soul specs run the experiment (their h_j come from a
    small-element search instead of a soul generator).
    """
    if (pattern is None) == (conjugators is None):
        raise MalformedInputError("give exactly one of pattern or conjugators")
    kwargs = {} if depth_cap is None else {"depth_cap": depth_cap}
    base = NTOrder(spec, convention, **kwargs)

    if conjugators is not None:
        hs = list(conjugators)
        js = list(j_range)[: len(hs)] or list(range(1, len(hs) + 1))
        pairs = list(zip(js, hs))
        s = u = None
    else:
        s, u = pattern
        if not 1 <= s <= spec.n - 1:
            raise MalformedInputError(f"soul generator {s} out of range")
        pairs = [(j, BraidWord(spec.n, (-s,) * j + u.letters)) for j in j_range]

    rows = []
    for j, h in pairs:
        conj = ConjugatedOrder(base, h)
        rep = agreement_radius(conj, base, ball)
        witness, signs = rep.witness, rep.witness_signs
        if witness is None and s is not None:
            found = find_disagreement(conj, base, _witness_candidates(s, u, j))
            if found is not None:
                witness, s1, s2 = found
                signs = (s1, s2)
        rows.append(ConjugateRow(j, h, rep.radius, witness, signs, rep.undecided_count))
    return ConjugatesReport(spec.name, ball, tuple(rows))


@dataclass(frozen=True)
class ExtensionRow:
    M: int
    weights: tuple[int, ...]
    radius: int
    witness: BraidWord | None
    witness_signs: tuple[int, int] | None
    soul_witness_vector: tuple[int, ...] | None
    undecided_count: int


@dataclass(frozen=True)
class ExtensionsReport:
    spec_name: str
    ball: BallSpec
    rows: tuple[ExtensionRow, ...]

    @property
    def radii(self) -> tuple[int, ...]:
        return tuple(r.radius for r in self.rows)

    @property
    def radii_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.radii, self.radii[1:]))

    @property
    def all_distinct(self) -> bool:
        return all(r.witness is not None for r in self.rows)

    def to_json_lines(self) -> str:
        return report_json_lines(
            "extensions",
            self.spec_name,
            [
                {
                    "M": r.M,
                    "weights": list(r.weights),
                    "radius": r.radius,
                    "witness": None if r.witness is None else str(r.witness),
                    "witness_signs": r.witness_signs,
                    "soul_witness_vector": None
                    if r.soul_witness_vector is None
                    else list(r.soul_witness_vector),
                    "undecided_count": r.undecided_count,
                }
                for r in self.rows
            ],
        )

    def to_csv_rows(self) -> list[list]:
        return csv_table(
            [
                [r.M, r.radius, "" if r.witness is None else str(r.witness), r.undecided_count]
                for r in self.rows
            ]
        )


def _soul_witness(
    extension: ConvexExtensionOrder, base: NTOrder, weights: tuple[int, ...]
) -> tuple[BraidWord, tuple[int, ...]] | None:
    """A soul element on which slope and base lex priority disagree: an axis
    against a large multiple of a lower-priority axis."""
    soul = extension.soul
    lex = soul_lex_of_base(base)
    k = len(soul)
    for hi_pos in range(k):
        for lo_pos in range(k):
            if lex.axes.index(hi_pos) >= lex.axes.index(lo_pos):
                continue
            # lex says +1 for e_hi - t e_lo with any t; slope flips at large t
            t = weights[hi_pos] // max(1, weights[lo_pos]) + 1
            v = [0] * k
            v[hi_pos] = 1
            v[lo_pos] = -t
            if zk_sign(extension.soul_order, v) != zk_sign(lex, v):
                letters = (soul[hi_pos],) + (-soul[lo_pos],) * t
                return BraidWord(base.n, letters), tuple(v)
    return None


def converge_extensions_experiment(
    spec: GeodesicSpec,
    m_range: Sequence[int],
    ball: BallSpec,
    convention,
    depth_cap: int | None = None,
) -> ExtensionsReport:
    """Convex extensions by integer-slope soul orders approximating the base.

    Soul weights (M^(k-1), ..., M, 1) follow the base's own lex priority, so
    growing M forces agreement on ever larger balls while staying distinct.
    Needs soul rank k >= 2 (rank one has no slope family; conjugates apply).
    """
    soul = sorted(spec.soul_generators)
    k = len(soul)
    if spec.type_tag != "finite" or k < 2:
        raise MalformedInputError("extension experiment needs finite type with soul rank >= 2")
    kwargs = {} if depth_cap is None else {"depth_cap": depth_cap}
    base = NTOrder(spec, convention, **kwargs)
    lex = soul_lex_of_base(base)
    rows = []
    for M in m_range:
        if M < 2:
            raise MalformedInputError("slope parameter M must be >= 2")
        weights = [0] * k
        for rank, pos in enumerate(lex.axes):
            weights[pos] = M ** (k - 1 - rank)
        slope = ZkIntegerSlope(k, tuple(weights), lex)
        extension = ConvexExtensionOrder(base, slope)
        rep = agreement_radius(extension, base, ball)
        witness, signs, vector = rep.witness, rep.witness_signs, None
        if witness is not None:
            vector = zk_membership(witness, soul)
        else:
            found = _soul_witness(extension, base, tuple(weights))
            if found is not None:
                witness, vector = found
                signs = (extension.sign(witness), base.sign(witness))
        rows.append(
            ExtensionRow(M, tuple(weights), rep.radius, witness, signs, vector, rep.undecided_count)
        )
    return ExtensionsReport(spec.name, ball, tuple(rows))


@dataclass(frozen=True)
class ProbeRow:
    probe: BraidWord
    base_sign: int
    signs: tuple[int, ...]
    stabilized: bool
    stable_sign: int | None

    @property
    def differs(self) -> bool:
        return self.stabilized and self.stable_sign != self.base_sign


@dataclass(frozen=True)
class LimitProbeReport:
    """Signs of probe braids under a sequence of conjugates.

    Stabilization is a labeled heuristic (tail agreement with no late flip);
    the report never claims anything about the true limit order beyond the
    computed window, hence inconclusive_by_design.
    """

    spec_name: str
    conjugator_pattern: str
    n_range: tuple[int, ...]
    rows: tuple[ProbeRow, ...]
    inconclusive_by_design: bool = True

    @property
    def differing_probes(self) -> tuple[ProbeRow, ...]:
        return tuple(r for r in self.rows if r.differs)

    @property
    def window_too_short(self) -> bool:
        return len(self.n_range) < 2

    def to_json_lines(self) -> str:
        return report_json_lines(
            "limit_probe",
            self.spec_name,
            [
                {
                    "probe": str(r.probe),
                    "base_sign": r.base_sign,
                    "signs": list(r.signs),
                    "stabilized": r.stabilized,
                    "stable_sign": r.stable_sign,
                    "differs": r.differs,
                }
                for r in self.rows
            ],
            extra={
                "conjugator_pattern": self.conjugator_pattern,
                "N_range": list(self.n_range),
                "inconclusive_by_design": self.inconclusive_by_design,
            },
        )


def _stabilized(signs: Sequence[int]) -> tuple[bool, int | None]:
    """Last two values agree and no flip occurs after the midpoint."""
    if len(signs) < 2:
        return False, None
    if signs[-1] != signs[-2]:
        return False, None
    mid = len(signs) // 2
    tail = signs[mid:]
    if any(a != b for a, b in zip(tail, tail[1:])):
        return False, None
    return True, signs[-1]


def limit_probe_experiment(
    spec: GeodesicSpec,
    pattern: tuple[int, int],
    n_range: Sequence[int],
    probe_ball: BallSpec,
    convention,
    extra_probes: Sequence[BraidWord] = (),
    depth_cap: int | None = None,
) -> LimitProbeReport:
    """Conjugate by s^-N u for N in range and watch which probe signs settle.

    pattern = (s, u) as generator indices (conjugator word sigma_s^-N sigma_u).
    """
    s, u = pattern
    kwargs = {} if depth_cap is None else {"depth_cap": depth_cap}
    base = NTOrder(spec, convention, **kwargs)
    soul = sorted(spec.soul_generators)
    probes: list[BraidWord] = []
    seen = set()
    for i in soul:
        for j in soul:
            if i != j:
                probes.append(BraidWord(spec.n, (i, -j)))
    probes.extend(extra_probes)
    probes.extend(w for w in probe_ball.words() if w.letters)
    unique_probes = []
    for p in probes:
        if p.letters not in seen:
            seen.add(p.letters)
            unique_probes.append(p)

    rows = []
    for probe in unique_probes:
        base_sign = base.sign(probe)
        signs = []
        for N in n_range:
            h = BraidWord(spec.n, (-s,) * N + (u,))
            signs.append(ConjugatedOrder(base, h).sign(probe))
        stab, stable = _stabilized(signs)
        rows.append(ProbeRow(probe, base_sign, tuple(signs), stab, stable))
    return LimitProbeReport(
        spec.name, f"{-s}^N {u}", tuple(n_range), tuple(rows)
    )


def small_positive_search(
    order: OrderOracle, soul: Sequence[int], ball: BallSpec
) -> BraidWord:
    """Order-minimal positive braid outside <soul> among the ball's positives."""
    best: BraidWord | None = None
    for w in ball.words():
        if not w.letters:
            continue
        try:
            if order.sign(w) <= 0:
                continue
            if soul and zk_membership(w, soul) is not None:
                continue
            if not soul and not w.letters:
                continue
            if best is None or order_cmp(order, w, best) < 0:
                best = w
        except UndecidedComparisonError:
            continue
    if best is None:
        raise SearchFailureError(
            f"no positive element outside the soul in ball L={ball.max_length}"
        )
    return best


# --- report emission ----------------------------------------------------------


def report_json_lines(kind: str, name: str, rows: list[dict], extra: dict | None = None) -> str:
    lines = []
    for row in rows:
        record = {"schema": SCHEMA, "kind": kind, "name": name}
        if extra:
            record.update(extra)
        record.update(row)
        lines.append(json.dumps(record, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def csv_table(rows: list[list]) -> list[list]:
    return [["j_or_M_or_N", "radius", "witness_word", "undecided_count"]] + rows
