"""Named parameter sets. All of them are toy-sized and offer no security."""

from __future__ import annotations

from dataclasses import dataclass

from .braid import GroupParams
from .conjugacy import ConjugacyLimits
from .schemes import WordLengths


@dataclass(frozen=True)
class Preset:
    name: str
    l: int
    r: int
    key_length: int
    ephemeral_length: int
    hash_length: int
    limits: ConjugacyLimits = ConjugacyLimits()

    @property
    def params(self) -> GroupParams:
        return GroupParams(self.l, self.r)

    @property
    def lengths(self) -> WordLengths:
        return WordLengths(self.key_length, self.ephemeral_length, self.hash_length)


PRESETS = {
    p.name: p
    for p in (
        Preset("toy-6", 3, 3, 16, 16, 16),
        Preset("toy-8", 4, 4, 20, 20, 20),
    )
}

DEFAULT_PRESET = PRESETS["toy-6"]


def preset_for(params: GroupParams) -> Preset:
    for p in PRESETS.values():
        if p.params == params:
            return p
    raise KeyError(f"no preset for l={params.l}, r={params.r}")
