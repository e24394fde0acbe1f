"""
Permutation-braid primitives for the classical Garside structure of B_n.

A simple element (positive permutation braid) is stored as a tuple ``p`` of
0-based images: the strand that starts at top position ``j`` ends at bottom
position ``p[j]``. Two strands cross at most once, so the braid is determined
by its permutation. Generator indices ``i`` are 1-based, as in σ_i, and σ_i
crosses the strands sitting at positions ``i - 1`` and ``i``.

All helpers are pure and memoised on their tuple arguments; for the braid
indices used here (n ≤ 8) the caches stay small.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

Perm = tuple[int, ...]

_CACHE = 1 << 18


@lru_cache(maxsize=None)
def identity(n: int) -> Perm:
    return tuple(range(n))


@lru_cache(maxsize=None)
def half_twist(n: int) -> Perm:
    """Permutation of Δ: position j goes to n - 1 - j."""
    return tuple(range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def atom(n: int, i: int) -> Perm:
    """Permutation of the generator σ_i (1-based)."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


@lru_cache(maxsize=None)
def all_simples(n: int) -> tuple[Perm, ...]:
    """Every simple element of B_n in lexicographic order of its permutation."""
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=_CACHE)
def inverse_perm(p: Perm) -> Perm:
    q = [0] * len(p)
    for j, v in enumerate(p):
        q[v] = j
    return tuple(q)


def compose(a: Perm, b: Perm) -> Perm:
    """Permutation of the product a·b (a on top of b)."""
    return tuple(b[v] for v in a)


@lru_cache(maxsize=_CACHE)
def length(p: Perm) -> int:
    """Number of crossings, i.e. the word length of the simple element."""
    n = len(p)
    return sum(1 for j in range(n) for k in range(j + 1, n) if p[j] > p[k])


@lru_cache(maxsize=_CACHE)
def starting_set(p: Perm) -> frozenset[int]:
    """Generators σ_i that are prefixes of p."""
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


@lru_cache(maxsize=_CACHE)
def finishing_set(p: Perm) -> frozenset[int]:
    """Generators σ_i that are suffixes of p."""
    return starting_set(inverse_perm(p))


@lru_cache(maxsize=_CACHE)
def tau(p: Perm) -> Perm:
    """Conjugation by Δ, sending σ_i to σ_{n-i}."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - j] for j in range(n))


def tau_power(p: Perm, k: int) -> Perm:
    return tau(p) if k % 2 else p


@lru_cache(maxsize=_CACHE)
def right_complement(p: Perm) -> Perm:
    """The simple element ∂p with p·∂p = Δ."""
    n = len(p)
    q = inverse_perm(p)
    return tuple(n - 1 - q[j] for j in range(n))


@lru_cache(maxsize=_CACHE)
def from_right_complement(q: Perm) -> Perm:
    """Inverse of :func:`right_complement`: returns p with ∂p = q."""
    n = len(q)
    qi = inverse_perm(q)
    return tuple(qi[n - 1 - j] for j in range(n))


@lru_cache(maxsize=_CACHE)
def left_divide(a: Perm, c: Perm) -> Perm:
    """Permutation of a^{-1}·c (a braid only when a is a prefix of c)."""
    ai = inverse_perm(a)
    return tuple(c[ai[j]] for j in range(len(a)))


def is_prefix(a: Perm, c: Perm) -> bool:
    """a ≼ c in the prefix order on simple elements."""
    n = len(a)
    return all(
        (a[j] > a[k]) <= (c[j] > c[k]) for j in range(n) for k in range(j + 1, n)
    )


@lru_cache(maxsize=_CACHE)
def meet(a: Perm, b: Perm) -> Perm:
    """Greatest common prefix a ∧ b, grown one atom at a time."""
    n = len(a)
    m = identity(n)
    while True:
        ra = left_divide(m, a)
        rb = left_divide(m, b)
        for i in range(1, n):
            if ra[i - 1] > ra[i] and rb[i - 1] > rb[i]:
                p = list(m)
                # m·σ_i swaps the values i-1 and i
                for j, v in enumerate(p):
                    if v == i - 1:
                        p[j] = i
                    elif v == i:
                        p[j] = i - 1
                m = tuple(p)
                break
        else:
            return m


@lru_cache(maxsize=_CACHE)
def right_meet(a: Perm, b: Perm) -> Perm:
    """Greatest common suffix; reversing words inverts the permutation."""
    return inverse_perm(meet(inverse_perm(a), inverse_perm(b)))


@lru_cache(maxsize=_CACHE)
def join(a: Perm, b: Perm) -> Perm:
    """Least common multiple a ∨ b in the prefix order."""
    return from_right_complement(right_meet(right_complement(a), right_complement(b)))


@lru_cache(maxsize=_CACHE)
def complement(a: Perm, b: Perm) -> Perm:
    """a\\b: the simple element c with a·c = a ∨ b."""
    return left_divide(a, join(a, b))


@lru_cache(maxsize=_CACHE)
def left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    """Make the pair (a, b) left-weighted without changing the product a·b.

    Atoms are moved from the front of b to the end of a until every
    generator starting b also finishes a.
    """
    a_inv = list(inverse_perm(a))
    b = list(b)
    n = len(b)
    moved = True
    while moved:
        moved = False
        for i in range(1, n):
            # σ_i ≼ b and σ_i is not a suffix of a
            if b[i - 1] > b[i] and a_inv[i - 1] < a_inv[i]:
                a_inv[i - 1], a_inv[i] = a_inv[i], a_inv[i - 1]
                b[i - 1], b[i] = b[i], b[i - 1]
                moved = True
    return inverse_perm(tuple(a_inv)), tuple(b)


def is_left_weighted(a: Perm, b: Perm) -> bool:
    return starting_set(b) <= finishing_set(a)


@lru_cache(maxsize=_CACHE)
def simple_word(p: Perm) -> tuple[int, ...]:
    """A positive word in the generators spelling the simple element p."""
    p = list(p)
    word = []
    while True:
        for i in range(1, len(p)):
            if p[i - 1] > p[i]:
                word.append(i)
                p[i - 1], p[i] = p[i], p[i - 1]
                break
        else:
            return tuple(word)
