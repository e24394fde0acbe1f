"""
Hash functions between byte strings and B_{l+r}.

``h2`` digests the canonical encoding of a braid's normal form, so equal
braids always hash equally. ``h1`` expands a digest of the message in
counter mode and reads one positive generator per byte. Both are one
admissible instantiation of a hash to and from the braid group; neither
claims more than that.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .braid import BraidWord, Element, GroupParams, NormalForm, encode_nf, normal_form

HASH_ALG_SHA256 = 0x01
DIGEST_SIZE = 32


@dataclass(frozen=True)
class Digest:
    value: bytes

    def __post_init__(self):
        if len(self.value) != DIGEST_SIZE:
            raise ValueError(f"digest must be {DIGEST_SIZE} bytes, got {len(self.value)}")

    def __bytes__(self) -> bytes:
        return self.value

    def hex(self) -> str:
        return self.value.hex()


@dataclass(frozen=True)
class HashParams:
    params: GroupParams
    braid_word_length: int = 16

    def __post_init__(self):
        if self.braid_word_length < 1:
            raise ValueError("braid_word_length must be at least 1")


def _sha256(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def h2(x: Element) -> Digest:
    """SHA-256 of the canonical normal-form encoding of x."""
    return Digest(_sha256(encode_nf(normal_form(x))))


def _stream(seed: bytes):
    counter = 0
    while True:
        yield from _sha256(seed + counter.to_bytes(4, "big"))
        counter += 1


def h1(msg: bytes, hp: HashParams) -> NormalForm:
    """Deterministic positive braid of ``hp.braid_word_length`` letters."""
    n = hp.params.n
    seed = _sha256(bytes(msg))
    letters = []
    for v in _stream(seed):
        if len(letters) == hp.braid_word_length:
            break
        letters.append(v % (n - 1) + 1)
    return normal_form(BraidWord(n, tuple(letters)))


def combine(d: Digest, m: bytes) -> bytes:
    """Digest-then-message concatenation fed to h1 by every scheme."""
    return bytes(d) + bytes(m)
