"""
Exact arithmetic in the braid group B_n.

Words (:class:`BraidWord`) keep their raw letters; turning a word into a
group element is always an explicit call to :func:`normal_form`. Elements
are :class:`NormalForm` values, the left normal form Δ^inf·A_1⋯A_k with
left-weighted permutation-braid factors, so two elements are equal exactly
when their normal forms compare equal.
"""

from __future__ import annotations

import enum
import random
import struct
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from . import garside as g
from .garside import Perm


class BraidError(ValueError):
    pass


class Subgroup(enum.Enum):
    FULL = "full"
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class GroupParams:
    """Strand split of B_{l+r} into the commuting subgroups LB_l and RB_r."""

    l: int
    r: int

    def __post_init__(self):
        if self.l < 2 or self.r < 2:
            raise BraidError(f"need l >= 2 and r >= 2, got l={self.l}, r={self.r}")

    @property
    def n(self) -> int:
        return self.l + self.r

    def generators(self, subgroup: Subgroup) -> tuple[int, ...]:
        if subgroup is Subgroup.LEFT:
            return tuple(range(1, self.l))
        if subgroup is Subgroup.RIGHT:
            return tuple(range(self.l + 1, self.n))
        return tuple(range(1, self.n))


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators; letter ``i`` is σ_i and ``-i`` is σ_i^{-1}."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise BraidError(f"braid index must be >= 2, got {self.n}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.n:
                raise BraidError(f"generator {x} out of range for B_{self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)


@dataclass(frozen=True)
class NormalForm:
    """Left normal form Δ^inf·A_1⋯A_k; factors are neither identity nor Δ."""

    n: int
    inf: int
    factors: tuple[Perm, ...] = field(default=())

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def exponent_sum(self) -> int:
        half = self.n * (self.n - 1) // 2
        return self.inf * half + sum(g.length(f) for f in self.factors)

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def to_word(self) -> BraidWord:
        dw = g.simple_word(g.half_twist(self.n))
        if self.inf >= 0:
            letters = list(dw) * self.inf
        else:
            letters = [-x for x in reversed(dw)] * (-self.inf)
        for f in self.factors:
            letters.extend(g.simple_word(f))
        return BraidWord(self.n, tuple(letters))

    def __mul__(self, other: NormalForm) -> NormalForm:
        return nf_multiply(self, other)

    def inverse(self) -> NormalForm:
        return nf_inverse(self)

    def conjugate(self, c: NormalForm) -> NormalForm:
        """c·self·c^{-1}."""
        return nf_multiply(nf_multiply(c, self), nf_inverse(c))

    def __str__(self) -> str:
        fs = " ".join("[" + ",".join(str(v + 1) for v in f) + "]" for f in self.factors)
        return f"Δ^{self.inf} {fs}".rstrip()


Element = Union[BraidWord, NormalForm]


def identity_nf(n: int) -> NormalForm:
    return NormalForm(n, 0, ())


# -- normalisation ---------------------------------------------------------


def _weighted(factors: Sequence[Perm]) -> bool:
    return all(g.is_left_weighted(factors[j], factors[j + 1]) for j in range(len(factors) - 1))


def _sweep(factors: list[Perm]) -> None:
    """Pairwise left-weighting sweeps until no pair changes."""
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 1):
            a, b = factors[j], factors[j + 1]
            na, nb = g.left_weight(a, b)
            if na != a:
                factors[j], factors[j + 1] = na, nb
                changed = True


def _append(factors: list[Perm], s: Perm) -> None:
    """Right-multiply a left-weighted list by a simple element, in place."""
    factors.append(s)
    j = len(factors) - 1
    while j > 0:
        a, b = factors[j - 1], factors[j]
        na, nb = g.left_weight(a, b)
        if na == a:
            break
        factors[j - 1], factors[j] = na, nb
        j -= 1


def _prepend(factors: list[Perm], s: Perm) -> None:
    """Left-multiply a left-weighted list by a simple element, in place."""
    factors.insert(0, s)
    for j in range(len(factors) - 1):
        a, b = factors[j], factors[j + 1]
        na, nb = g.left_weight(a, b)
        if na == a:
            break
        factors[j], factors[j + 1] = na, nb


def _finish(n: int, inf: int, factors: list[Perm]) -> NormalForm:
    if not _weighted(factors):
        _sweep(factors)
    delta = g.half_twist(n)
    e = g.identity(n)
    lo, hi = 0, len(factors)
    while lo < hi and factors[lo] == delta:
        lo += 1
    while hi > lo and factors[hi - 1] == e:
        hi -= 1
    return NormalForm(n, inf + lo, tuple(factors[lo:hi]))


def from_simples(n: int, inf: int, simples: Iterable[Perm]) -> NormalForm:
    """Normal form of Δ^inf·s_1⋯s_m for arbitrary simple elements s_j."""
    factors: list[Perm] = []
    for s in simples:
        _append(factors, s)
    return _finish(n, inf, factors)


def normal_form(w: Element) -> NormalForm:
    """Left normal form of a word (normal forms are returned unchanged)."""
    if isinstance(w, NormalForm):
        return w
    n = w.n
    # σ_i^{-1} = Δ^{-1}·τ(∂σ_i); every Δ^{-1} is pulled to the front,
    # applying τ to each simple it passes.
    simples = []
    negatives_after = sum(1 for x in w.letters if x < 0)
    for x in w.letters:
        if x > 0:
            s = g.atom(n, x)
        else:
            negatives_after -= 1
            s = g.tau(g.right_complement(g.atom(n, -x)))
        simples.append(g.tau_power(s, negatives_after))
    inf = -sum(1 for x in w.letters if x < 0)
    return from_simples(n, inf, simples)


def nf_multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    _check_index(a.n, b.n)
    # Δ^p A · Δ^q B = Δ^{p+q} τ^q(A) B
    factors = [g.tau_power(f, b.inf) for f in a.factors]
    for f in b.factors:
        _append(factors, f)
    return _finish(a.n, a.inf + b.inf, factors)


def nf_inverse(a: NormalForm) -> NormalForm:
    k = len(a.factors)
    # (Δ^p A_1⋯A_k)^{-1} = Δ^{-p-k} B_k⋯B_1 with B_j = τ^{p+j}(∂A_j)
    factors = [
        g.tau_power(g.right_complement(a.factors[j - 1]), a.inf + j) for j in range(k, 0, -1)
    ]
    return _finish(a.n, -a.inf - k, factors)


def mul_simple(a: NormalForm, s: Perm) -> NormalForm:
    """a·s for a simple element s."""
    factors = list(a.factors)
    _append(factors, s)
    return _finish(a.n, a.inf, factors)


def simple_inv_mul(s: Perm, a: NormalForm) -> NormalForm:
    """s^{-1}·a for a simple element s."""
    # s^{-1}·Δ^p = Δ^{p-1}·τ^{p+1}(∂s)
    factors = list(a.factors)
    _prepend(factors, g.tau_power(g.right_complement(s), a.inf + 1))
    return _finish(a.n, a.inf - 1, factors)


def simple_mul(s: Perm, a: NormalForm) -> NormalForm:
    """s·a for a simple element s."""
    factors = list(a.factors)
    _prepend(factors, g.tau_power(s, a.inf))
    return _finish(a.n, a.inf, factors)


def conjugate_by_simple(a: NormalForm, s: Perm) -> NormalForm:
    """a^s = s^{-1}·a·s."""
    return simple_inv_mul(s, mul_simple(a, s))


def simple_nf(n: int, s: Perm) -> NormalForm:
    return _finish(n, 0, [s])


def simple_inverse_nf(n: int, s: Perm) -> NormalForm:
    return simple_inv_mul(s, identity_nf(n))


def is_normal(x: NormalForm) -> bool:
    delta = g.half_twist(x.n)
    e = g.identity(x.n)
    return all(f not in (delta, e) for f in x.factors) and _weighted(x.factors)


# -- word-level operations ---------------------------------------------------


def _check_index(n1: int, n2: int) -> None:
    if n1 != n2:
        raise BraidError(f"braid index mismatch: B_{n1} vs B_{n2}")


def multiply(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenate two words; no normalisation."""
    _check_index(a.n, b.n)
    return BraidWord(a.n, a.letters + b.letters)


def inverse(a: BraidWord) -> BraidWord:
    return BraidWord(a.n, tuple(-x for x in reversed(a.letters)))


def equals(a: Element, b: Element) -> bool:
    _check_index(a.n, b.n)
    return normal_form(a) == normal_form(b)


def delta(n: int) -> BraidWord:
    """The positive half twist Δ_n = (σ_1⋯σ_{n-1})(σ_1⋯σ_{n-2})⋯σ_1."""
    if n < 2:
        raise BraidError(f"braid index must be >= 2, got {n}")
    letters = [i for top in range(n - 1, 0, -1) for i in range(1, top + 1)]
    return BraidWord(n, tuple(letters))


def tau(a: BraidWord) -> BraidWord:
    """Δ^{-1}·a·Δ, computed letterwise as σ_i ↦ σ_{n-i}."""
    return BraidWord(a.n, tuple((a.n - abs(x)) * (1 if x > 0 else -1) for x in a.letters))


def permutation_of(a: Element) -> tuple[int, ...]:
    """Induced permutation, 1-based: strand at top position i ends at the returned value."""
    w = a.to_word() if isinstance(a, NormalForm) else a
    p = list(range(a.n))
    for x in w.letters:
        i = abs(x)
        for j, v in enumerate(p):
            if v == i - 1:
                p[j] = i
            elif v == i:
                p[j] = i - 1
    return tuple(v + 1 for v in p)


def random_braid(
    params: GroupParams, subgroup: Subgroup, length: int, rng: random.Random
) -> BraidWord:
    """Uniform i.i.d. signed letters over the generators of ``subgroup``."""
    if length < 0:
        raise BraidError("length must be non-negative")
    gens = params.generators(subgroup)
    if not gens:
        raise BraidError(f"{subgroup.value} subgroup has no generators")
    letters = tuple(rng.choice(gens) * rng.choice((1, -1)) for _ in range(length))
    return BraidWord(params.n, letters)


# -- canonical encoding -----------------------------------------------------

NF_MAGIC = b"BRD1"
NF_VERSION = 1
_NF_HEADER = struct.Struct(">4sBHiI")


def encode_nf(x: NormalForm) -> bytes:
    out = bytearray(_NF_HEADER.pack(NF_MAGIC, NF_VERSION, x.n, x.inf, len(x.factors)))
    for f in x.factors:
        out.extend(v + 1 for v in f)
    return bytes(out)


def decode_nf(data: bytes) -> NormalForm:
    """Inverse of :func:`encode_nf`; rejects anything that is not a valid normal form."""
    if len(data) < _NF_HEADER.size:
        raise BraidError("truncated normal form")
    magic, version, n, inf, k = _NF_HEADER.unpack_from(data)
    if magic != NF_MAGIC:
        raise BraidError(f"bad normal-form magic {magic!r}")
    if version != NF_VERSION:
        raise BraidError(f"unsupported normal-form version {version}")
    if n < 2:
        raise BraidError(f"braid index {n} out of range")
    if len(data) != _NF_HEADER.size + k * n:
        raise BraidError("normal-form length does not match factor count")
    factors = []
    pos = _NF_HEADER.size
    for _ in range(k):
        f = tuple(v - 1 for v in data[pos : pos + n])
        pos += n
        if sorted(f) != list(range(n)):
            raise BraidError("factor is not a permutation of 1..n")
        factors.append(f)
    x = NormalForm(n, inf, tuple(factors))
    if not is_normal(x):
        raise BraidError("factors are not in left normal form")
    return x


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent σ_i σ_i^{-1} pairs; the element is unchanged."""
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(w.n, tuple(out))
