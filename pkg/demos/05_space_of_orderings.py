#!/usr/bin/env python3
"""Walking the space of orderings: agreement balls and convergence scans.

Two orderings are close when their signs agree on a large ball.  Conjugating
a ray order by s^-j u drags it back toward itself as j grows; re-ordering a
rank-k soul by integer slopes does the same for k >= 2.  The limit probe
watches where the conjugates of the rank-3 example actually head: toward a
permuted chain, not the original ordering.
"""

from braidorders import (
    BallSpec,
    BraidWord,
    DehornoyOrder,
    catalog,
    catalog_order,
    converge_conjugates_experiment,
    converge_extensions_experiment,
    frozen_convention,
    limit_probe_experiment,
    order_distance,
    small_positive_search,
    totality_probe,
)

specs = catalog()

# --- distances shrink along the conjugate sequence --------------------------------

base = DehornoyOrder(3)
from braidorders import ConjugatedOrder

for j in (1, 3, 5, 7):
    conj = ConjugatedOrder(base, BraidWord(3, (-2,) * j + (1,)))
    d = order_distance(base, conj, BallSpec(3, 6))
    print(f"dist(order, conjugate by s2^-{j} s1) <= {d}")

# the natural conjugators sit just above the soul
small = small_positive_search(base, [2], BallSpec(3, 3))
print(f"smallest positive outside <s2> in ball L=3: [{small}]")

# --- conjugate convergence records --------------------------------------------------

report = converge_conjugates_experiment(
    specs["dehornoy_3"], (2, BraidWord(3, (1,))), range(1, 9), BallSpec(3, 6), frozen_convention(3)
)
print("conjugates of dehornoy_3:")
for row in report.rows:
    print(f"  j={row.j}: radius {row.radius}, distinctness witness [{row.witness}]")

# --- extension families for rank >= 2 souls -----------------------------------------

ext = converge_extensions_experiment(
    specs["b6_cx"], range(2, 8), BallSpec(6, 3), frozen_convention(6)
)
print("slope extensions of b6_cx (soul rank 3):")
for row in ext.rows:
    print(f"  M={row.M}: weights {row.weights}, radius {row.radius}, soul witness {row.soul_witness_vector}")

# --- where do conjugates of b6_cx converge? -----------------------------------------

probe = limit_probe_experiment(
    specs["b6_cx"], (3, 4), range(1, 13), BallSpec(6, 2), frozen_convention(6)
)
print("limit probe, conjugating b6_cx by s3^-N s4 (evidence only, inconclusive by design):")
for row in probe.differing_probes[:4]:
    trail = "".join("+" if s > 0 else "-" for s in row.signs)
    print(f"  probe [{row.probe}]: base {row.base_sign:+d}, conjugate signs {trail} -> settles at {row.stable_sign:+d}")

# --- infinite type: nothing fixes the ray, small elements go arbitrarily deep --------

rep = totality_probe(specs["sturmian_3"], BallSpec(3, 5), 20, frozen_convention(3))
print(
    f"sturmian_3 totality: ties {len(rep.tie_words)}, deepest small element [{rep.records[-1][1]}]"
    f" at depth {rep.max_depth}"
)
