"""Angle comparison of rays through the planar cover of the punctured disk.

A finite word in F_n is read as a path class from the boundary basepoint to a
fixed endpoint just east of it; an infinite word is a ray.  Lifting to the
universal cover, every vertex sees the same counterclockwise cyclic order of
2n+1 germs: the terminal exit T plus both directions of every loop.  Two
distinct rays diverge at a vertex, and their next germs, compared in the
cyclic order cut at the arrival germ (at the basepoint: cut at the boundary
west position), decide which ray exits at the larger boundary angle.

The orientation of the whole picture is not an a priori choice here: the three
flags of GermConvention are frozen by calibrating against handle reduction
(see calibration in the catalog module).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UndecidedComparisonError
from .freewords import FreeWord, Ray, ray_prefix

LESS, EQUAL, GREATER = -1, 0, 1

TERMINAL = 0  # germ label for "exit to the boundary endpoint"

DEFAULT_DEPTH_CAP = 512


@dataclass(frozen=True)
class GermConvention:
    """Cyclic germ order at every cover vertex plus orientation flags.

    The counterclockwise cycle starts at the terminal germ; with
    ``germ_order_reversed`` the petal fan is enumerated from x_1 up instead of
    from x_n down.  ``artin_mirrored`` swaps the substitution rules of a
    generator and its inverse; ``angle_flipped`` inverts every verdict.
    """

    n: int
    germ_order_reversed: bool = False
    artin_mirrored: bool = False
    angle_flipped: bool = False

    def cycle(self) -> tuple[int, ...]:
        germs: list[int] = [TERMINAL]
        indices = range(1, self.n + 1) if self.germ_order_reversed else range(self.n, 0, -1)
        for i in indices:
            germs.extend((i, -i))
        return tuple(germs)

    def positions(self) -> dict[int, int]:
        return {g: p for p, g in enumerate(self.cycle())}


def _next_germ(word: Ray, prefix_len: int, probe: tuple[int, ...]) -> int | None:
    """Germ taken by the word after its first prefix_len letters.

    TERMINAL for a finite word that ends there, None when the probe window is
    too short to know (infinite words only).
    """
    if isinstance(word, FreeWord):
        if prefix_len >= len(word.letters):
            return TERMINAL
        return word.letters[prefix_len]
    if prefix_len < len(probe):
        return probe[prefix_len]
    return None


def planar_cmp(
    u: Ray,
    v: Ray,
    conv: GermConvention,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> int:
    """LESS / EQUAL / GREATER by boundary angle; greater means larger angle.

    Raises UndecidedComparisonError(depth_cap) when two streams agree beyond
    the cap; two finite words always separate, so the cap never binds them.
    """
    pos = conv.positions()
    size = len(conv.cycle())
    both_finite = isinstance(u, FreeWord) and isinstance(v, FreeWord)

    window = 32
    while True:
        pu = ray_prefix(u, window)
        pv = ray_prefix(v, window)
        limit = min(len(pu), len(pv))
        d = 0
        while d < limit and pu[d] == pv[d]:
            d += 1
        gu = _next_germ(u, d, pu)
        gv = _next_germ(v, d, pv)
        if d >= depth_cap and not both_finite:
            raise UndecidedComparisonError(depth_cap)
        if (d == limit and d == window) or gu is None or gv is None:
            # agreement may continue beyond the probe window: widen it
            window = max(window * 2, d + 2)
            if not both_finite:
                window = min(window, max(depth_cap + 1, 2))
            continue
        if gu == gv == TERMINAL:
            return EQUAL
        assert gu != gv, "divergence scan stopped on equal letters"
        if d == 0:
            # at the basepoint the cycle is cut at the boundary west germ,
            # which sits just before TERMINAL: positions read as listed
            pu_pos, pv_pos = pos[gu], pos[gv]
        else:
            arrival = -pu[d - 1]
            a = pos[arrival]
            pu_pos = (pos[gu] - a) % size
            pv_pos = (pos[gv] - a) % size
        verdict = LESS if pu_pos < pv_pos else GREATER
        return -verdict if conv.angle_flipped else verdict


def common_prefix_length(u: Ray, v: Ray, depth_cap: int = DEFAULT_DEPTH_CAP) -> tuple[int, bool]:
    """(length of the longest common prefix, decided?).

    decided is False when the words agree all the way to the cap.
    """
    window = 32
    while True:
        pu = ray_prefix(u, window)
        pv = ray_prefix(v, window)
        limit = min(len(pu), len(pv))
        d = 0
        while d < limit and pu[d] == pv[d]:
            d += 1
        if d >= depth_cap:
            return depth_cap, False
        if d < limit:
            return d, True
        # one probe ran out: finite word exhausted, or window too small
        u_done = isinstance(u, FreeWord) and d >= len(u.letters)
        v_done = isinstance(v, FreeWord) and d >= len(v.letters)
        if (u_done or len(pu) > d) and (v_done or len(pv) > d):
            return d, True
        window = min(window * 2, depth_cap + 1)
