import math
import random

import pytest

from braidorders import (
    ArtinMap,
    BraidWord,
    Custom,
    EventuallyPeriodic,
    FreeWord,
    MalformedInputError,
    QuadraticIrrational,
    StreamGrowthError,
    Sturmian,
    apply_map,
    artin_map_of,
    cancellation_bound_of,
    compose,
    invert,
    multiply,
    parse_free_word,
    parse_infinite_word,
    random_word,
    stream_prefix_image,
)
from braidorders.freewords import format_infinite_word, ray_prefix


def random_free_word(rng, n, length):
    letters = []
    for _ in range(length):
        choices = [k for i in range(1, n + 1) for k in (i, -i) if not letters or k != -letters[-1]]
        letters.append(rng.choice(choices))
    return FreeWord(n, tuple(letters))


def test_free_word_reduction_and_inverse():
    assert FreeWord(3, (1, -1, 2)).letters == (2,)
    w = FreeWord(3, (1, -2, 3))
    assert (~w).letters == (-3, 2, -1)
    assert (w * ~w).letters == ()
    with pytest.raises(MalformedInputError):
        FreeWord(3, (4,))


def test_quadratic_irrational_exact_floor():
    qi = QuadraticIrrational(7, 3, 11)
    value = (3 + math.sqrt(7)) / 11
    for k in range(500):
        assert qi.floor_times(k) == math.floor(k * value)
    with pytest.raises(MalformedInputError):
        QuadraticIrrational(9, 1, 2)


def test_sturmian_prefix_coherent_and_balanced():
    st = Sturmian(3, QuadraticIrrational(7, 3, 11), 1, 2)
    p50 = st.prefix(50)
    p200 = st.prefix(200)
    assert p200[:50] == p50
    assert set(p200) == {1, 2}
    # letter frequencies track the slope
    share = p200.count(2) / 200
    assert abs(share - float(st.slope)) < 0.05


def test_eventually_periodic_prefix_and_validation():
    ep = EventuallyPeriodic(FreeWord(3, (1,)), FreeWord(3, (2, 1)))
    assert ep.prefix(5) == (1, 2, 1, 2, 1)
    with pytest.raises(MalformedInputError):
        EventuallyPeriodic(FreeWord(3, (1,)), FreeWord(3))
    with pytest.raises(MalformedInputError):
        EventuallyPeriodic(FreeWord(3, (1,)), FreeWord(3, (-1, 2)))


def test_infinite_word_text_round_trip():
    ep = parse_infinite_word("1 | 2 1", 3)
    assert isinstance(ep, EventuallyPeriodic)
    assert format_infinite_word(ep) == "1 | 2 1"
    st = parse_infinite_word("sturmian 7 1 2 3 11", 3)
    assert isinstance(st, Sturmian)
    assert format_infinite_word(st) == "sturmian 7 1 2 3 11"
    assert parse_free_word("1 -2", 3).letters == (1, -2)


def test_artin_identity_and_inverse_composition():
    assert artin_map_of(BraidWord(3)) == ArtinMap.identity(3)
    assert artin_map_of(BraidWord(3, (1, -1))) == ArtinMap.identity(3)
    m = artin_map_of(BraidWord(3, (1,)))
    mi = artin_map_of(BraidWord(3, (-1,)))
    assert compose(m, mi) == ArtinMap.identity(3)
    assert apply_map(m, FreeWord(3, (1,))).letters == (1, 2, -1)


def test_artin_braid_relations():
    for n in range(3, 7):
        for i in range(1, n - 1):
            lhs = artin_map_of(BraidWord(n, (i, i + 1, i)))
            rhs = artin_map_of(BraidWord(n, (i + 1, i, i + 1)))
            assert lhs == rhs
        for i in range(1, n):
            for j in range(i + 2, n):
                assert artin_map_of(BraidWord(n, (i, j))) == artin_map_of(BraidWord(n, (j, i)))


def test_artin_left_action_law(rng):
    for _ in range(200):
        a = random_word(rng, 4, rng.randrange(0, 6))
        b = random_word(rng, 4, rng.randrange(0, 6))
        assert artin_map_of(multiply(a, b)) == compose(artin_map_of(a), artin_map_of(b))


def test_apply_map_morphism_and_inverse(rng):
    for _ in range(100):
        bw = random_word(rng, 4, rng.randrange(0, 7))
        u = random_free_word(rng, 4, rng.randrange(0, 9))
        v = random_free_word(rng, 4, rng.randrange(0, 9))
        m = artin_map_of(bw)
        assert apply_map(m, u * v) == apply_map(m, u) * apply_map(m, v)
        assert apply_map(artin_map_of(invert(bw)), apply_map(m, u)) == u


def test_cancellation_bound_recursion():
    cb0 = cancellation_bound_of(BraidWord(3))
    assert (cb0.norm, cb0.bound) == (1, 0)
    cb1 = cancellation_bound_of(BraidWord(3, (1,)))
    assert cb1.norm == 3 and cb1.bound <= 3
    cb2 = cancellation_bound_of(BraidWord(3, (1, 2)))
    assert cb2.bound <= 12


def test_single_letter_maps_cancel_at_most_three():
    # base case of the folded certificate, checked exhaustively on short
    # junctions: observed worst cancellation is 1, bound is 3
    def all_reduced(n, L):
        alphabet = [k for i in range(1, n + 1) for k in (i, -i)]
        frontier = [()]
        out = [()]
        for _ in range(L):
            new = []
            for p in frontier:
                for k in alphabet:
                    if p and k == -p[-1]:
                        continue
                    new.append(p + (k,))
            out.extend(new)
            frontier = new
        return out

    words = [w for w in all_reduced(3, 3) if w]
    for s in (1, -1, 2, -2):
        for mirrored in (False, True):
            m = artin_map_of(BraidWord(3, (s,)), mirrored)
            images = {w: m.apply_letters(w) for w in words}
            for u in words:
                for v in words:
                    if u[-1] == -v[0]:
                        continue
                    joint = m.apply_letters(u + v)
                    cancelled = (len(images[u]) + len(images[v]) - len(joint)) // 2
                    assert cancelled <= 3


def test_cancellation_bound_sound_on_junctions(rng):
    # reduce(m(u)m(v)) must keep all but `bound` letters of each side
    for _ in range(200):
        bw = random_word(rng, 3, rng.randrange(0, 5))
        m = artin_map_of(bw)
        u = random_free_word(rng, 3, rng.randrange(1, 8))
        v = random_free_word(rng, 3, rng.randrange(1, 8))
        if (u * v).letters != u.letters + v.letters:
            continue
        left = apply_map(m, u)
        joint = apply_map(m, u * v)
        keep = len(left) - m.bound
        if keep > 0:
            assert joint.letters[:keep] == left.letters[:keep]


def test_stream_prefix_image_coherence(rng):
    ep = EventuallyPeriodic(FreeWord(3, ()), FreeWord(3, (1, 2)))
    st = Sturmian(3, QuadraticIrrational(7, 3, 11), 1, 2)
    for stream in (ep, st):
        for _ in range(50):
            bw = random_word(rng, 3, rng.randrange(0, 5))
            m = artin_map_of(bw)
            a = stream_prefix_image(m, stream, 10)
            b = stream_prefix_image(m, stream, 25)
            assert b[: len(a)] == a
            assert len(a) >= 10 and len(b) >= 25
    # identity map on (x1 x2)^omega
    m = artin_map_of(BraidWord(3))
    assert stream_prefix_image(m, ep, 6)[:6] == (1, 2, 1, 2, 1, 2)
    assert stream_prefix_image(m, ep, 0) == ()


def test_custom_supplier_checked():
    bad = Custom(3, lambda length: (1,) * (length // 2), label="bad")
    with pytest.raises(MalformedInputError):
        ray_prefix(bad, 10)


def test_growth_failure_on_too_short_finite_word():
    m = artin_map_of(BraidWord(3))
    with pytest.raises(StreamGrowthError):
        stream_prefix_image(m, FreeWord(3, (1,)), 5)
