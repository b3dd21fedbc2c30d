"""Normal forms, multiplication, conjugation, balls and lengths per family."""

import random

import pytest
from hypothesis import given, strategies as st

from twistlab import _kernels
from twistlab.errors import BudgetExceededError, FamilyMismatchError, SpecError
from twistlab.groups import (
    ball,
    commuting_ball,
    compose,
    conjugate,
    conjugacy_class_partial,
    get_group,
    invert,
    resolve_subgroup,
)

F2 = get_group({"family": "free", "rank": 2})
Z = get_group({"family": "free", "rank": 1})
SZ = get_group({"family": "sum_z"})
SZ2 = get_group({"family": "sum_z2"})
W = get_group({"family": "wreath", "base": "Z"})
L = get_group({"family": "wreath", "base": "Z2"})
AN = get_group({"family": "zn_semidirect", "A": [[2, 1], [1, 1]]})
SAN = get_group({"family": "sanov"})
BS = get_group({"family": "bs_nn", "n": 2})
FZ = get_group({"family": "free_times_z"})
ALL = [F2, Z, SZ, SZ2, W, L, AN, SAN, BS, FZ]


def test_sum_z_compose():
    e1 = SZ.basis_element(1)
    assert compose(e1, e1) == SZ.element(((1, 2),))


def test_semidirect_matrix_compose():
    t = AN.pair((0, 0), 1)
    x = AN.pair((1, 0), 0)
    assert compose(t, x) == AN.pair((2, 1), 1)


def test_bs_relation_forces_reduction():
    assert BS.word("a b b A") == BS.b_power(2)
    # sliding the central power: a b^2 a equals b^2 a^2
    assert BS.word("a b b a") == compose(BS.b_power(2), BS.word("a a"))


def test_invert_examples():
    assert invert(SZ.identity()) == SZ.identity()
    g = SZ.element(((0, 1), (3, 2)))
    assert invert(g) == SZ.element(((0, -1), (3, -2)))
    x = W.pair(W.base_group().element_from_json({"2": 5, "-1": -3}), 4)
    assert compose(x, invert(x)) == W.identity()
    assert compose(invert(x), x) == W.identity()


def test_conjugate_examples():
    g = BS.word("a b")
    assert conjugate(g, BS.identity()) == BS.identity()
    h = BS.word("b a")
    assert conjugate(BS.identity(), h) == h
    # shift moves the lamp position by one
    t = W.element(((), 1))
    e0 = W.element((((0, 1),), 0))
    assert conjugate(t, e0) == W.element((((1, 1),), 0))
    # matrix action on the translation lattice
    v1 = SAN.pair((0, 0), (1,))
    x = SAN.pair((0, 1), ())
    assert conjugate(v1, x) == SAN.pair((2, 1), ())


def test_ball_sizes_free_group():
    assert len(ball(F2, 0)) == 1
    assert len(ball(F2, 1)) == 5
    assert len(ball(F2, 2)) == 17
    for r in range(5):
        assert len(ball(F2, r)) == 2 * 3**r - 1


def test_ball_rank_one():
    b = ball(Z, 3)
    assert len(b) == 7
    assert {g.data for g in b} == {tuple([1] * k) if k >= 0 else tuple([-1] * -k) for k in range(-3, 4)}


def test_ball_budget_error():
    F2._ball_cache.clear()
    with pytest.raises(BudgetExceededError):
        ball(F2, 8, node_budget=100)
    F2._ball_cache.clear()


def test_ball_monotone_everywhere():
    for G in ALL:
        radii = [0, 1, 2]
        balls = [set(ball(G, r)) for r in radii]
        for small, big in zip(balls, balls[1:]):
            assert small <= big


def test_conjugacy_class_partial_examples():
    g = SZ.element(((2, 3),))
    assert conjugacy_class_partial(g, 4) == (g,)
    cls = conjugacy_class_partial(F2.word("a"), 1)
    assert set(cls) == {F2.word("a"), F2.word("b a B"), F2.word("B a b")}
    assert conjugacy_class_partial(BS.b_power(2), 3) == (BS.b_power(2),)


def test_commuting_ball_examples():
    assert commuting_ball(SZ2.basis_element(0), 2) == ball(SZ2, 2)
    cb = commuting_ball(F2.word("a"), 2)
    assert set(cb) == {F2.identity(), F2.word("a"), F2.word("A"), F2.word("a a"), F2.word("A A")}
    # central element commutes with the whole ball
    assert set(commuting_ball(BS.b_power(2), 1)) == set(ball(BS, 1))


def test_family_mismatch():
    with pytest.raises(FamilyMismatchError):
        compose(F2.word("a"), Z.word("a"))


def test_normal_form_idempotence_and_group_laws():
    rng = random.Random(7)
    for G in ALL:
        pool = list(ball(G, 2))
        for _ in range(30):
            g, h, k = (rng.choice(pool) for _ in range(3))
            assert compose(compose(g, h), k) == compose(g, compose(h, k))
            assert compose(g, invert(g)) == G.identity()
            assert conjugate(compose(g, h), k) == conjugate(g, conjugate(h, k))
            # re-normalization is the identity map
            assert G.element(g.data) == g


def test_britton_invariant():
    rng = random.Random(1)
    for _ in range(200):
        letters = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(0, 12))]
        flat = []
        for x in letters:
            flat.append(abs(x))
            flat.append(1 if x > 0 else -1)
        c, w = _kernels.bs_normalize(tuple(flat), 2)
        # no interior b-exponent is a multiple of 2, hence no pinch subword
        for i in range(0, len(w), 2):
            if w[i] == 2:
                assert w[i + 1] % 2 != 0
        # alternating syllables with nonzero exponents
        for i in range(0, len(w) - 2, 2):
            assert w[i] != w[i + 2]
        for i in range(0, len(w), 2):
            assert w[i + 1] != 0


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=30))
def test_free_reduction_is_idempotent_and_sound(letters):
    red = _kernels.free_reduce(tuple(letters))
    assert _kernels.free_reduce(red) == red
    # no adjacent cancelling pair survives
    assert all(red[i] != -red[i + 1] for i in range(len(red) - 1))


@given(
    st.lists(st.sampled_from([1, -1, 2, -2]), max_size=15),
    st.lists(st.sampled_from([1, -1, 2, -2]), max_size=15),
)
def test_free_mul_matches_reduce(a, b):
    ra = _kernels.free_reduce(tuple(a))
    rb = _kernels.free_reduce(tuple(b))
    assert _kernels.free_mul(ra, rb) == _kernels.free_reduce(tuple(a) + tuple(b))


def test_wreath_lengths():
    # lamp at the origin then step right: a t has length 2
    g = compose(W.element((((0, 1),), 0)), W.element(((), 1)))
    assert W.length(g) == 2
    # lamp at +1 requires walking there and back or staying: t a t^-1
    h = W.element((((1, 1),), 0))
    assert W.length(h) == 3


def test_finite_wreath_order():
    FW = get_group({"family": "wreath", "base": "Z2", "acting": 3})
    assert len(ball(FW, FW._finite_diameter())) == 24


def test_element_json_roundtrip():
    cases = [
        (SZ, {"0": 1, "3": -2}),
        (SZ2, [0, 2]),
        (F2, "a b B a"),
        (BS, "b b a b A"),
        (W, {"x": {"1": 2}, "k": -1}),
        (AN, {"v": [1, -2], "k": 3}),
        (SAN, {"v": [2, 1], "w": "a B"}),
        (FZ, {"w": "a b", "k": -2}),
    ]
    for G, obj in cases:
        g = G.element_from_json(obj)
        assert G.element_from_json(G.element_to_json(g)) == g


def test_bad_specs_rejected():
    with pytest.raises(SpecError):
        get_group({"family": "nope"})
    with pytest.raises(SpecError):
        get_group({"family": "zn_semidirect", "A": [[2, 0], [0, 2]]})  # det 4
    with pytest.raises(SpecError):
        get_group({"family": "bs_nn", "n": 1})
    with pytest.raises(SpecError):
        resolve_subgroup(F2, "center")


def test_subgroup_embeddings():
    sub = resolve_subgroup(BS, "center")
    two = sub.inner.element((2,))
    assert sub.embed(two) == BS.b_power(4)
    assert sub.contains(BS.b_power(4))
    assert not sub.contains(BS.word("a"))
    base = resolve_subgroup(W, "base")
    assert {g.data[1] for g in base.ball(2)} == {0}
