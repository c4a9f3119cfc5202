#!/usr/bin/env python3
"""Convex subgroup chains read off divergence depths.

A braid lies in the i-th convex level of a ray order when its action fixes
the ray's word past the i-th separating depth.  For the catalog entries the
levels form the full chain of proper convex subgroups: nested generator
patterns, closed under products and inverses, with no sampled convexity
violations.
"""

from braidorders import (
    BallSpec,
    BraidWord,
    catalog,
    convex_chain_report,
    divergence_depth,
    frozen_convention,
    soul_of,
)
from braidorders.catalog import search_chain_words

specs = catalog()

# --- generator divergence depths -------------------------------------------------

for name in ("dehornoy_4", "b4_b", "b4_c", "b6_cx"):
    spec = specs[name]
    conv = frozen_convention(spec.n)
    deaths = {
        j: divergence_depth(BraidWord(spec.n, (j,)), spec, conv).depth
        for j in range(1, spec.n)
    }
    print(f"{name}: word [{spec.word}]  depths {spec.separating_depths}  generator deaths {deaths}")

# --- chain reports ---------------------------------------------------------------

for name in ("dehornoy_4", "b4_a", "b4_b", "b4_c", "b6_cx"):
    spec = specs[name]
    conv = frozen_convention(spec.n)
    report = convex_chain_report(spec, BallSpec(spec.n, 3), conv)
    chain = " > ".join(
        "{" + ",".join(f"s{j}" for j in lv.generator_pattern) + "}" for lv in report.levels
    )
    print(f"{name}: levels {chain}  violations {report.total_violations}")
    print(f"   soul (validated): {sorted(soul_of(spec, conv, validate=True))}")

# --- the search that produced the committed words ---------------------------------

hits = search_chain_words(4, death_order=(2, 3, 1), lengths=(4,))
print(f"search for B4 words with death order s2 < s3 < s1: {len(hits)} hits at length 4")
for letters, depths in hits:
    print("   word", letters, "depths", depths)
