import itertools

import pytest

from braidorders import (
    BallSpec,
    BraidWord,
    FreeWord,
    MalformedInputError,
    SoulValidationError,
    act_on_geodesic,
    catalog_order,
    conrad_witness_search,
    convex_chain_report,
    dehornoy_sign,
    divergence_depth,
    format_geodesic_spec,
    frozen_convention,
    in_convex_subgroup,
    invert,
    multiply,
    nt_cmp,
    nt_sign,
    parse_geodesic_spec,
    random_word,
    soul_of,
    totality_probe,
)
from braidorders.catalog import search_chain_words
from braidorders.nt import GeodesicSpec


def test_catalog_contents_and_validation(specs):
    names = {
        "dehornoy_3", "dehornoy_4", "dehornoy_5", "dehornoy_6",
        "b4_a", "b4_b", "b4_c", "b6_cx", "mixed_4",
        "sturmian_3", "sturmian_4", "sturmian_5", "sturmian_6",
    }
    assert names <= set(specs)
    for spec in specs.values():
        spec.validate()
    assert specs["dehornoy_3"].separating_depths == (1, 2)
    assert specs["b6_cx"].soul_generators == frozenset({1, 3, 5})
    assert specs["sturmian_4"].separating_depths == ()
    assert specs["mixed_4"].type_tag == "infinite"


def test_spec_invariant_enforcement():
    with pytest.raises(MalformedInputError):
        GeodesicSpec("bad", 4, FreeWord(4, (1,)), (1, 1), frozenset(), "finite")
    with pytest.raises(MalformedInputError):
        GeodesicSpec("bad", 4, FreeWord(4, (1,)), (1,), frozenset({1, 2}), "finite")
    spec = GeodesicSpec("bad", 4, FreeWord(4, (-1, -2)), (1, 2), frozenset({3}), "finite")
    with pytest.raises(MalformedInputError):
        spec.validate()  # finite type needs n-1 depths


def test_generator_signs_positive_everywhere(specs):
    for name in ("dehornoy_3", "dehornoy_4", "dehornoy_5", "dehornoy_6", "b4_b", "b4_c", "b6_cx"):
        order = catalog_order(name)
        for i in range(1, order.n):
            assert order.sign(BraidWord(order.n, (i,))) == 1
            assert order.sign(BraidWord(order.n, (-i,))) == -1


def test_example_inequality_on_both_b4_classes():
    for name in ("b4_b", "b4_c"):
        order = catalog_order(name)
        for k in range(0, 31):
            w = BraidWord(4, (3, 2) + (-3,) * (k + 1))
            assert order.sign(w) == 1


def test_nt_matches_handle_reduction_small_ball():
    order = catalog_order("dehornoy_3")
    for w in BallSpec(3, 4).words():
        assert order.sign(w) == dehornoy_sign(w)


@pytest.mark.parametrize("n,L", [(3, 7), (4, 5)])
def test_nt_matches_handle_reduction_extended(n, L):
    # beyond the acceptance bound: thousands more words, still letter-exact
    order = catalog_order(f"dehornoy_{n}")
    for w in BallSpec(n, L).words():
        assert order.sign(w) == dehornoy_sign(w)


def test_calibration_twin_gives_identical_oracle(specs):
    # mirroring the substitution rules and flipping every verdict cancel out
    from braidorders import GermConvention, NTOrder

    spec = specs["dehornoy_3"]
    twin = NTOrder(spec, GermConvention(3, True, True, False))
    frozen = catalog_order("dehornoy_3")
    for w in BallSpec(3, 5).words():
        assert twin.sign(w) == frozen.sign(w)


def test_nt_cmp_left_invariance(rng):
    order = catalog_order("dehornoy_4")
    for _ in range(200):
        a = random_word(rng, 4, rng.randrange(0, 6))
        b = random_word(rng, 4, rng.randrange(0, 6))
        g = random_word(rng, 4, rng.randrange(0, 6))
        assert nt_cmp(order, a, b) == nt_cmp(order, multiply(g, a), multiply(g, b))


def test_nt_cmp_left_invariance_exhaustive_small():
    order = catalog_order("dehornoy_3")
    words = list(BallSpec(3, 2).words())
    for a in words:
        for b in words:
            base = nt_cmp(order, a, b)
            for g in words:
                assert nt_cmp(order, multiply(g, a), multiply(g, b)) == base


def test_act_on_geodesic_inverse_round_trip(rng, specs, conv4):
    spec = specs["dehornoy_4"]
    for _ in range(100):
        beta = random_word(rng, 4, rng.randrange(0, 6))
        there = act_on_geodesic(beta, spec, conv4)
        back = act_on_geodesic(invert(beta), there, conv4)
        assert back.word == spec.word


def test_act_on_geodesic_spiral_blocks(specs, conv3):
    # conjugator family sigma2^-j sigma1: the moved ray winds around the two
    # far punctures j times, visible as a j-letter alternating turn block
    # followed by its mirror (frozen from computation)
    spec = specs["dehornoy_3"]
    for j in range(3, 7):
        beta = BraidWord(3, (-2,) * j + (1,))
        letters = act_on_geodesic(beta, spec, conv3).word.letters
        turn = tuple(-3 if t % 2 == 0 else -2 for t in range(j))
        assert letters[0] == 1
        assert letters[1 : 1 + j] == turn
        mirror = tuple(-letters[1 + j + t] for t in range(j - 1))
        assert mirror == turn[: j - 1][::-1] == tuple(reversed(turn[: j - 1]))
        assert letters[-2:] == (-1, -1)
        assert len(letters) == 2 * j + 2


def test_moved_ray_order_is_conjugated_order(rng, specs, conv4):
    # the order of the moved ray h.gamma agrees with the base order of
    # h^-1 b h: the two notions of conjugate ordering coincide
    from braidorders import NTOrder, conjugate

    spec = specs["dehornoy_4"]
    base = NTOrder(spec, conv4)
    for _ in range(200):
        h = random_word(rng, 4, rng.randrange(0, 5))
        beta = random_word(rng, 4, rng.randrange(0, 5))
        moved = NTOrder(act_on_geodesic(h, spec, conv4), conv4)
        assert moved.sign(beta) == base.sign(conjugate(beta, h))


def test_divergence_depth_examples(specs):
    for n in (3, 4, 5):
        spec = specs[f"dehornoy_{n}"]
        conv = frozen_convention(n)
        full = divergence_depth(BraidWord(n), spec, conv)
        assert full.verdict == "equal" and full.depth == len(spec.word.letters)
        # the top generator survives every separation but the last
        top = divergence_depth(BraidWord(n, (n - 1,)), spec, conv)
        assert top.depth >= spec.separating_depths[n - 3]
        assert top.depth < spec.separating_depths[n - 2]
        first = divergence_depth(BraidWord(n, (1,)), spec, conv)
        assert first.depth < spec.separating_depths[0]


def test_convex_membership_table(specs):
    # sigma_j sits in level i exactly when j > i, with both signs agreeing
    for n in (3, 4, 5):
        spec = specs[f"dehornoy_{n}"]
        conv = frozen_convention(n)
        for i in range(1, n):
            for j in range(1, n):
                expected = j > i
                assert in_convex_subgroup(BraidWord(n, (j,)), spec, i, conv) == expected
                assert in_convex_subgroup(BraidWord(n, (-j,)), spec, i, conv) == expected
    with pytest.raises(MalformedInputError):
        in_convex_subgroup(BraidWord(3), specs["dehornoy_3"], 5, frozen_convention(3))


def test_convex_membership_closure(rng, specs, conv4):
    spec = specs["dehornoy_4"]
    members = [w for w in BallSpec(4, 4).words() if in_convex_subgroup(w, spec, 1, conv4)]
    for _ in range(500):
        a, b = rng.choice(members), rng.choice(members)
        assert in_convex_subgroup(multiply(a, b), spec, 1, conv4)
        assert in_convex_subgroup(invert(a), spec, 1, conv4)


def test_chain_nesting_monotone(specs, conv4):
    spec = specs["dehornoy_4"]
    for w in BallSpec(4, 4).words():
        member = [in_convex_subgroup(w, spec, i, conv4) for i in (1, 2, 3)]
        for deep, shallow in ((2, 1), (1, 0)):
            if member[deep]:
                assert member[shallow]


def test_chain_report_patterns(specs, conv4):
    report = convex_chain_report(specs["dehornoy_4"], BallSpec(4, 4), conv4)
    assert [lv.generator_pattern for lv in report.levels] == [(2, 3), (3,), ()]
    assert report.total_violations == 0
    # distinct nonempty patterns plus the ambient generators, nested
    assert report.patterns() == [(3,), (2, 3), (1, 2, 3)]
    with pytest.raises(MalformedInputError):
        convex_chain_report(specs["sturmian_3"], BallSpec(3, 2), frozen_convention(3))


def test_three_b4_classes_distinct(specs, conv4):
    reports = {
        name: tuple(
            lv.generator_pattern
            for lv in convex_chain_report(specs[name], BallSpec(4, 3), conv4).levels
        )
        for name in ("b4_a", "b4_b", "b4_c")
    }
    assert len(set(reports.values())) == 3
    assert reports["b4_a"] == ((2, 3), (3,), ())
    assert reports["b4_b"] == ((1, 3), (3,), ())
    assert reports["b4_c"] == ((1, 3), (1,), ())


def test_soul_validation_on_catalog(specs):
    for name, expected in [
        ("dehornoy_3", {2}),
        ("dehornoy_4", {3}),
        ("dehornoy_5", {4}),
        ("dehornoy_6", {5}),
        ("b4_b", {1, 3}),
        ("b4_c", {1, 3}),
        ("b6_cx", {1, 3, 5}),
        ("sturmian_3", set()),
    ]:
        spec = specs[name]
        conv = frozen_convention(spec.n)
        assert soul_of(spec, conv, validate=True) == frozenset(expected)


def test_soul_validation_mismatch_raises(specs, conv3):
    broken = GeodesicSpec(
        "broken", 3, specs["dehornoy_3"].word, (1, 2), frozenset({1}), "finite"
    )
    with pytest.raises(SoulValidationError):
        soul_of(broken, conv3, validate=True)


def test_conrad_witness_canonical_pairs(specs):
    order = catalog_order("dehornoy_3")
    f, g = BraidWord(3, (-2, 1)), BraidWord(3, (1,))
    witness = conrad_witness_search(order, 20, BallSpec(3, 2), priority_pairs=[(f, g)])
    assert (witness.f, witness.g) == (f, g)
    order4 = catalog_order("b4_b")
    f4, g4 = BraidWord(4, (-3, 2)), BraidWord(4, (2,))
    witness4 = conrad_witness_search(order4, 20, BallSpec(4, 2), priority_pairs=[(f4, g4)])
    assert (witness4.f, witness4.g) == (f4, g4)


def test_conrad_search_without_hints_finds_witness():
    order = catalog_order("dehornoy_3")
    witness = conrad_witness_search(order, 10, BallSpec(3, 2))
    assert order.sign(witness.f) == 1 and order.sign(witness.g) == 1
    gk = BraidWord(3)
    for _ in range(11):
        assert order.sign(multiply(invert(multiply(witness.f, gk)), witness.g)) > 0
        gk = multiply(gk, witness.g)


def test_conrad_search_failure_reported():
    from braidorders import SearchFailureError

    order = catalog_order("dehornoy_3")
    with pytest.raises(SearchFailureError):
        conrad_witness_search(order, 5, BallSpec(3, 0))


def test_soul_elements_satisfy_conrad_property(rng):
    # restricted to the abelian soul the property holds at k = 1 already
    order = catalog_order("b6_cx")
    soul = sorted(order.spec.soul_generators)
    for _ in range(200):
        f = BraidWord(6, tuple(rng.choice([(i,)] * 3 + [(-i,)])[0] for i in soul for _ in range(rng.randrange(0, 3))))
        g = BraidWord(6, tuple(i for i in soul for _ in range(rng.randrange(1, 3))))
        if order.sign(f) <= 0 or order.sign(g) <= 0:
            continue
        assert order.sign(multiply(invert(g), multiply(f, g))) > 0  # f g > g


@pytest.mark.parametrize(
    "name,cases",
    [("dehornoy_3", 500), ("b4_b", 500), ("b4_c", 500), ("b6_cx", 500),
     ("sturmian_3", 200), ("mixed_4", 200)],
)
def test_subword_property_all_catalog_orders(rng, name, cases):
    # inserting a positive half-twist anywhere strictly increases the braid
    order = catalog_order(name)
    n = order.n
    for _ in range(cases):
        w = random_word(rng, n, rng.randrange(0, 6))
        pos = rng.randrange(0, len(w.letters) + 1)
        i = rng.randrange(1, n)
        bigger = BraidWord(n, w.letters[:pos] + (i,) + w.letters[pos:])
        assert nt_cmp(order, w, bigger) == -1


def test_totality_probe_sturmian(specs, conv3):
    report = totality_probe(specs["sturmian_3"], BallSpec(3, 5), 20, conv3)
    assert not report.degenerate
    assert report.covered
    depths = [d for d, _ in report.records]
    assert depths == sorted(depths)


@pytest.mark.parametrize("name,ball_l", [("sturmian_4", 2), ("sturmian_5", 2), ("mixed_4", 3)])
def test_block_streams_have_no_small_stabilizers(specs, name, ball_l):
    # regression: block tails must not assemble braid-invariant loop
    # products (the boundary loop, or an aligned x_i x_{i+1})
    spec = specs[name]
    conv = frozen_convention(spec.n)
    report = totality_probe(spec, BallSpec(spec.n, ball_l), 4, conv)
    assert not report.degenerate, report.tie_words


def test_totality_probe_periodic_control(conv3):
    from braidorders import EventuallyPeriodic

    control = GeodesicSpec(
        "control", 3,
        EventuallyPeriodic(FreeWord(3, (1,)), FreeWord(3, (2, 1))),
        (), frozenset(), "full_infinite",
    )
    report = totality_probe(control, BallSpec(3, 3), 5, conv3)
    assert report.degenerate
    assert BraidWord(3, (1,)) in report.tie_words


def test_totality_probe_rejects_finite(specs, conv3):
    with pytest.raises(MalformedInputError):
        totality_probe(specs["dehornoy_3"], BallSpec(3, 2), 5, conv3)


def test_spec_file_round_trip(specs):
    for name in ("dehornoy_3", "b6_cx", "sturmian_3", "mixed_4"):
        spec = specs[name]
        try:
            text = format_geodesic_spec(spec)
        except MalformedInputError:
            continue  # custom streams have no text form
        parsed = parse_geodesic_spec(text)
        assert parsed.name == spec.name
        assert parsed.separating_depths == spec.separating_depths
        assert parsed.soul_generators == spec.soul_generators
        if isinstance(spec.word, FreeWord):
            assert parsed.word == spec.word


def test_search_chain_words_reproduces_committed_entries():
    hits_c = search_chain_words(4, death_order=(2, 3, 1), lengths=(4,))
    assert hits_c[0] == ((-2, -1, -3, -1), (2, 3, 4))
    hits_b = search_chain_words(4, death_order=(2, 1, 3), lengths=(4,))
    assert hits_b[0] == ((3, 4, -1, -3), (2, 3, 4))
