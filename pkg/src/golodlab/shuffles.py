"""(p,q)-shuffles: enumeration, step classification, corner flips, ladders.

A (p,q)-shuffle is a weakly increasing sequence 0 = s_0 <= s_1 <= ... <=
s_q <= s_{q+1} = p, stored with both endpoints explicit so every formula
indexes the same way as the underlying lattice-path picture: entry s_k is
the column at which the path climbs from level k-1 to level k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement


@dataclass(frozen=True)
class Shuffle:
    p: int
    q: int
    entries: tuple

    def __post_init__(self):
        s = self.entries
        if len(s) != self.q + 2 or s[0] != 0 or s[-1] != self.p:
            raise ValueError(f"bad shuffle endpoints: {s} for ({self.p},{self.q})")
        if any(s[i] > s[i + 1] for i in range(len(s) - 1)):
            raise ValueError(f"shuffle not weakly increasing: {s}")

    def __getitem__(self, k: int) -> int:
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def sgn(self) -> int:
        return -1 if sum(self.entries[1:-1]) & 1 else 1

    def is_hat(self) -> bool:
        """Strictly increasing after the first step: s_1 < s_2 < ... < s_{q+1}."""
        s = self.entries
        return all(s[i] < s[i + 1] for i in range(1, len(s) - 1))


@dataclass(frozen=True)
class StepClassification:
    """Disjoint cover of {0,...,p+q} by the four step types of the path."""

    right: frozenset
    up: frozenset
    corner_down: frozenset  # right-then-up corners (flippable by alpha)
    corner_up: frozenset    # up-then-right corners (flippable by beta)


def enumerate_shuffles(p: int, q: int):
    """All (p,q)-shuffles, lexicographically by entries."""
    if p < 0 or q < 0:
        raise ValueError("p, q must be non-negative")
    return [
        Shuffle(p, q, (0,) + mid + (p,))
        for mid in combinations_with_replacement(range(p + 1), q)
    ]


def enumerate_hat_shuffles(p: int, q: int):
    """The subfamily with 0 = s_0 <= s_1 < s_2 < ... < s_{q+1} = p."""
    return [s for s in enumerate_shuffles(p, q) if s.is_hat()]


def sgn(s: Shuffle) -> int:
    return s.sgn()


def classify(s: Shuffle) -> StepClassification:
    p, q, e = s.p, s.q, s.entries
    n = p + q
    right, up, cdown, cup = set(), set(), set(), set()
    for k in range(q + 1):
        for i in range(e[k] + k + 1, e[k + 1] + k):
            if 0 < i < n:
                right.add(i)
        if e[k] == e[k + 1]:
            i = e[k] + k
            if 0 <= i < n:
                up.add(i)
    for k in range(1, q + 2):
        if e[k - 1] < e[k]:
            i = e[k] + k - 1
            if 0 < i < n:
                cdown.add(i)
    for k in range(q + 1):
        if e[k] < e[k + 1]:
            i = e[k] + k
            if 0 < i < n:
                cup.add(i)
    if e[0] < e[1]:
        right.add(0)
    if e[q] < e[q + 1]:
        right.add(n)
    else:
        up.add(n)
    return StepClassification(frozenset(right), frozenset(up), frozenset(cdown), frozenset(cup))


def flip_alpha(s: Shuffle, i: int) -> Shuffle:
    """Flip the right-then-up corner at path vertex i: s_k -> s_k - 1."""
    e = s.entries
    for k in range(1, s.q + 2):
        if i == e[k] + k - 1 and e[k - 1] < e[k] and 0 < i < s.p + s.q:
            return Shuffle(s.p, s.q, e[:k] + (e[k] - 1,) + e[k + 1:])
    raise ValueError(f"{i} is not a flippable corner of {e}")


def flip_beta(s: Shuffle, j: int) -> Shuffle:
    """Flip the up-then-right corner at path vertex j: s_l -> s_l + 1."""
    e = s.entries
    for l in range(s.q + 1):
        if j == e[l] + l and e[l] < e[l + 1] and 0 < j < s.p + s.q:
            return Shuffle(s.p, s.q, e[:l] + (e[l] + 1,) + e[l + 1:])
    raise ValueError(f"{j} is not a flippable corner of {e}")


def ladder_lambda(s: Shuffle, k: int) -> Shuffle:
    """S(p-1,q) -> S(p,q): shift the entries after position k up by one."""
    if not 0 <= k <= s.q:
        raise ValueError("ladder index out of range")
    e = s.entries
    return Shuffle(s.p + 1, s.q, e[: k + 1] + tuple(x + 1 for x in e[k + 1:]))


def ladder_lambda_inverse(s: Shuffle, k: int) -> Shuffle:
    e = s.entries
    return Shuffle(s.p - 1, s.q, e[: k + 1] + tuple(x - 1 for x in e[k + 1:]))


def ladder_nu(t: Shuffle, k: int) -> Shuffle:
    """S(p,q-1) -> S(p,q): repeat entry t_k."""
    if not 0 <= k <= t.q + 1:
        raise ValueError("ladder index out of range")
    e = t.entries
    return Shuffle(t.p, t.q + 1, e[: k + 1] + (e[k],) + e[k + 1:])


def ladder_nu_inverse(s: Shuffle, k: int) -> Shuffle:
    e = s.entries
    return Shuffle(s.p, s.q - 1, e[: k + 1] + e[k + 2:])


def epsilon_k(k: int) -> int:
    """0 for k = 1,2 mod 4 and 1 for k = 0,3 mod 4."""
    return 0 if k % 4 in (1, 2) else 1
