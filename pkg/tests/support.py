"""Shared helpers for the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from braidsig import schemes
from braidsig.braid import BraidWord, GroupParams
from braidsig.presets import PRESETS

TOY6 = PRESETS["toy-6"]


def random_word(n: int, length: int, rng: random.Random) -> BraidWord:
    letters = [rng.randrange(1, n) * rng.choice((1, -1)) for _ in range(length)]
    return BraidWord(n, tuple(letters))


def trivial_word(n: int, rng: random.Random) -> list[int]:
    """A short word equal to the identity: a cancelling pair or a relator."""
    i = rng.randrange(1, n)
    kind = rng.randrange(3 if n > 3 else 2)
    if kind == 0:
        s = rng.choice((1, -1))
        return [s * i, -s * i]
    if kind == 1 and i < n - 1:
        j = i + 1
        return [i, j, i, -j, -i, -j]
    far = [j for j in range(1, n) if abs(j - i) >= 2]
    if not far:
        return [i, -i]
    j = rng.choice(far)
    return [i, j, -i, -j]


def perturb(w: BraidWord, inserts: int, rng: random.Random) -> BraidWord:
    letters = list(w.letters)
    for _ in range(inserts):
        at = rng.randrange(len(letters) + 1)
        letters[at:at] = trivial_word(w.n, rng)
    return BraidWord(w.n, tuple(letters))


@dataclass
class World:
    """Four parties and an accepted delegation from alice to bob."""

    params: GroupParams
    lengths: schemes.WordLengths
    alice: schemes.KeyPair
    bob: schemes.KeyPair
    cindy: schemes.KeyPair
    trevor: schemes.KeyPair
    warrant: schemes.Warrant
    delegation: schemes.Delegation
    proxy_key: schemes.ProxyKey
    rng: random.Random
    now: int = 150


def make_world(seed: int, preset=TOY6, *, faithful: bool = False) -> World:
    rng = random.Random(seed)
    params, lengths = preset.params, preset.lengths
    alice, bob, cindy, trevor = (schemes.keygen(params, lengths, rng) for _ in range(4))
    warrant = schemes.Warrant(b"alice", b"bob", 100, 200, b"invoices")
    d = schemes.delegate(alice, warrant, rng, lengths=lengths, faithful=faithful)
    pk = schemes.accept_delegation(bob, d, alice.public)
    return World(params, lengths, alice, bob, cindy, trevor, warrant, d, pk, rng)


def random_nf(params: GroupParams, rng: random.Random):
    from braidsig.braid import normal_form

    return normal_form(random_word(params.n, rng.randrange(0, 20), rng))


def random_warrant(rng: random.Random) -> schemes.Warrant:
    start = rng.randrange(-(2**40), 2**40)
    return schemes.Warrant(
        rng.randbytes(rng.randrange(1, 12)),
        rng.randbytes(rng.randrange(1, 12)),
        start,
        start + rng.randrange(0, 2**30),
        rng.randbytes(rng.randrange(0, 30)),
    )


def random_record(kind: type, params: GroupParams, rng: random.Random):
    """An arbitrary well-typed value of a codec record type (not a valid signature)."""
    nf = lambda: random_nf(params, rng)  # noqa: E731
    msg = lambda: rng.randbytes(rng.randrange(0, 40))  # noqa: E731
    if kind is schemes.PublicKey:
        return schemes.PublicKey(params, nf(), nf())
    if kind is schemes.KeyPair:
        return schemes.KeyPair(params, nf(), schemes.PublicKey(params, nf(), nf()))
    if kind is schemes.Delegation:
        return schemes.Delegation(random_warrant(rng), nf(), nf())
    if kind is schemes.ProxyKey:
        return schemes.ProxyKey(nf(), schemes.Delegation(random_warrant(rng), nf(), nf()))
    if kind is schemes.ProxySignature:
        return schemes.ProxySignature(nf(), nf(), nf(), nf(), random_warrant(rng))
    if kind is schemes.DvsSignature:
        return schemes.DvsSignature(msg(), nf(), nf())
    if kind is schemes.BiDvsSignature:
        return schemes.BiDvsSignature(rng.choice((1, 2)), msg(), nf(), nf(), nf())
    if kind is schemes.DvpsSignature:
        return schemes.DvpsSignature(random_warrant(rng), nf(), nf(), nf(), nf(), nf())
    if kind is schemes.BiDvpsSignature:
        return schemes.BiDvpsSignature(
            rng.choice((1, 2)), msg(), nf(), nf(), nf(), nf(), nf(), nf(), random_warrant(rng)
        )
    raise TypeError(kind)


RECORD_TYPES = (
    schemes.KeyPair,
    schemes.PublicKey,
    schemes.Delegation,
    schemes.ProxyKey,
    schemes.ProxySignature,
    schemes.DvsSignature,
    schemes.BiDvsSignature,
    schemes.DvpsSignature,
    schemes.BiDvpsSignature,
)
