#!/usr/bin/env python3
"""Orders from the braid action on a ray through the punctured disk.

A geodesic from the boundary basepoint is encoded as a reduced word in the
puncture loops x_1 .. x_n.  A braid acts by substitution on the loops; the
order compares the moved ray against the original by the angle at which they
leave the basepoint (first-divergence germ comparison in the planar cover).

The orientation conventions are not guessed: calibrate_conventions searches
the finite flag space until the ray order reproduces handle reduction on an
entire ball, and the catalog freezes the result.
"""

from braidorders import (
    BallSpec,
    BraidWord,
    DehornoyOrder,
    act_on_geodesic,
    agreement_radius,
    apply_map,
    artin_map_of,
    calibrate_conventions,
    catalog,
    catalog_order,
    frozen_convention,
)

# --- the substitution action ---------------------------------------------------

m = artin_map_of(BraidWord(3, (1,)))
for j, img in enumerate(m.images, start=1):
    print(f"sigma1: x{j} -> {img}")

# braid relation holds on the nose as map equality
assert artin_map_of(BraidWord(3, (1, 2, 1))) == artin_map_of(BraidWord(3, (2, 1, 2)))
print("map(s1 s2 s1) == map(s2 s1 s2)")

# --- calibration ---------------------------------------------------------------

result = calibrate_conventions(3, 4)
conv = result.convention
print(
    f"calibrated: word [{result.word}], fan reversed={conv.germ_order_reversed},"
    f" mirrored={conv.artin_mirrored}, flipped={conv.angle_flipped}"
    f" ({len(result.matches)} equivalent matches)"
)

# --- the frozen ray order vs handle reduction -----------------------------------

order = catalog_order("dehornoy_3")
report = agreement_radius(DehornoyOrder(3), order, BallSpec(3, 6))
print(f"agreement with handle reduction on ball L=6: radius {report.radius}, witness {report.witness}")

# --- watching a ray move ---------------------------------------------------------

spec = catalog()["dehornoy_3"]
for j in (1, 3, 5):
    beta = BraidWord(3, (-2,) * j + (1,))
    moved = act_on_geodesic(beta, spec, frozen_convention(3))
    print(f"(s2^-{j} s1).ray = {moved.word}   (winds {j}x around the far punctures)")
