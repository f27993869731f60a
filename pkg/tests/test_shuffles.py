"""Shuffle calculus, with the lattice-path walk as an independent oracle."""

from itertools import product as iproduct
from math import comb

import pytest

from golodlab.shuffles import (
    Shuffle, classify, enumerate_hat_shuffles, enumerate_shuffles, epsilon_k,
    flip_alpha, flip_beta, ladder_lambda, ladder_nu, sgn,
)


def brute_shuffles(p, q):
    """Independent enumeration: filter all integer sequences."""
    out = []
    for mid in iproduct(range(p + 1), repeat=q):
        s = (0,) + mid + (p,)
        if all(s[i] <= s[i + 1] for i in range(len(s) - 1)):
            out.append(s)
    return sorted(set(out))


def walk_classify(s):
    """Classify path vertices by their incoming/outgoing moves."""
    moves = []
    e = s.entries
    for k in range(s.q + 1):
        moves.extend("R" * (e[k + 1] - e[k]))
        if k < s.q:
            moves.append("U")
    assert len(moves) == s.p + s.q
    right, up, cdown, cup = set(), set(), set(), set()
    for i in range(s.p + s.q + 1):
        pred = moves[i - 1] if i > 0 else None
        succ = moves[i] if i < len(moves) else None
        pair = (pred, succ)
        if pair == (None, None):  # the empty path: a single vertex, no move
            up.add(i)
        elif pair in (("R", "R"), (None, "R"), ("R", None)):
            right.add(i)
        elif pair in (("U", "U"), (None, "U"), ("U", None)):
            up.add(i)
        elif pair == ("R", "U"):
            cdown.add(i)
        else:
            cup.add(i)
    return right, up, cdown, cup


def test_enumeration_matches_brute_force():
    for p in range(0, 6):
        for q in range(0, 5):
            lib = sorted(s.entries for s in enumerate_shuffles(p, q))
            assert lib == brute_shuffles(p, q)


def test_counting_binomial():
    for p in range(0, 11):
        for q in range(0, 11 - p):
            assert len(enumerate_shuffles(p, q)) == comb(p + q, q)


def test_s21_explicit():
    assert sorted(s.entries for s in enumerate_shuffles(2, 1)) == [
        (0, 0, 2), (0, 1, 2), (0, 2, 2)]


def test_sp0_singleton():
    for p in range(0, 6):
        assert [s.entries for s in enumerate_shuffles(p, 0)] == [(0, p)]


def test_fixture_classification():
    s = Shuffle(6, 3, (0, 2, 3, 3, 6))
    c = classify(s)
    assert c.right == frozenset({0, 1, 7, 8, 9})
    assert c.up == frozenset({5})
    assert c.corner_down == frozenset({2, 4})
    assert c.corner_up == frozenset({3, 6})


def test_horizontal_shuffle_all_right():
    for p in range(1, 6):
        c = classify(Shuffle(p, 0, (0, p)))
        assert c.right == frozenset(range(p + 1))
        assert not (c.up | c.corner_down | c.corner_up)


def test_classification_disjoint_cover_and_walk_oracle():
    for p in range(0, 8):
        for q in range(0, 8 - p):
            for s in enumerate_shuffles(p, q):
                c = classify(s)
                pieces = [c.right, c.up, c.corner_down, c.corner_up]
                union = set().union(*pieces)
                assert union == set(range(p + q + 1))
                assert sum(len(x) for x in pieces) == p + q + 1
                assert (set(c.right), set(c.up), set(c.corner_down), set(c.corner_up)) \
                    == walk_classify(s)


def test_sgn_values():
    assert sgn(Shuffle(3, 2, (0, 0, 0, 3))) == 1
    assert sgn(Shuffle(6, 3, (0, 2, 3, 3, 6))) == 1  # (-1)^(2+3+3)
    assert sgn(Shuffle(2, 1, (0, 1, 2))) == -1


def test_flip_fixture():
    s = Shuffle(6, 3, (0, 2, 3, 3, 6))
    assert flip_alpha(s, 2).entries == (0, 1, 3, 3, 6)
    assert flip_beta(s, 3).entries == (0, 3, 3, 3, 6)
    with pytest.raises(ValueError):
        flip_alpha(s, 3)
    with pytest.raises(ValueError):
        flip_beta(s, 2)


def test_flips_invert_each_other():
    for p in range(0, 8):
        for q in range(0, 8 - p):
            for s in enumerate_shuffles(p, q):
                c = classify(s)
                for i in c.corner_down:
                    t = flip_alpha(s, i)
                    assert i in classify(t).corner_up
                    assert flip_beta(t, i) == s
                for j in c.corner_up:
                    t = flip_beta(s, j)
                    assert j in classify(t).corner_down
                    assert flip_alpha(t, j) == s


def test_flip_is_global_bijection():
    # the per-shuffle corner counts differ, but the flip matches the two
    # corner families bijectively over the whole shuffle set
    for p in range(0, 7):
        for q in range(0, 7 - p):
            shuffles = enumerate_shuffles(p, q)
            down = [(i, s.entries) for s in shuffles for i in sorted(classify(s).corner_down)]
            up = {(i, s.entries) for s in shuffles for i in classify(s).corner_up}
            image = {(i, flip_alpha(s, i).entries)
                     for s in shuffles for i in classify(s).corner_down}
            assert len(image) == len(down)
            assert image == up


def test_ladders_are_injective_and_signed():
    for p in range(1, 8):
        for q in range(0, 8 - p):
            seen = set()
            for k in range(q + 1):
                for s in enumerate_shuffles(p - 1, q):
                    t = ladder_lambda(s, k)
                    assert t.p == p and t.q == q
                    assert sgn(t) == (-1) ** (q - k) * sgn(s)
                    seen.add((k, t.entries))
            assert len(seen) == (q + 1) * comb(p - 1 + q, q)
    for p in range(0, 8):
        for q in range(1, 8 - p):
            for k in range(q + 1):
                for t in enumerate_shuffles(p, q - 1):
                    u = ladder_nu(t, k)
                    assert u.q == q
                    assert u.entries[k + 1] == t.entries[k]
                    assert sgn(u) == (-1) ** t.entries[k] * sgn(t)


def test_hat_shuffles():
    assert [s.entries for s in enumerate_hat_shuffles(3, 1)] == [
        (0, 0, 3), (0, 1, 3), (0, 2, 3)]
    for n in range(1, 6):
        assert [s.entries for s in enumerate_hat_shuffles(n, n)] == [
            (0,) + tuple(range(n + 1))]
    assert enumerate_hat_shuffles(1, 2) == []
    for q in range(3, 6):
        assert enumerate_hat_shuffles(2, q) == []


def test_epsilon_k():
    assert epsilon_k(1) == 0
    assert epsilon_k(2) == 0
    assert epsilon_k(3) == 1
    assert epsilon_k(4) == 1
    assert epsilon_k(5) == 0
    assert epsilon_k(0) == 1


def test_invalid_shuffles_rejected():
    with pytest.raises(ValueError):
        Shuffle(3, 1, (0, 2, 1))
    with pytest.raises(ValueError):
        Shuffle(3, 1, (1, 2, 3))
    with pytest.raises(ValueError):
        Shuffle(3, 1, (0, 1, 2, 3))
