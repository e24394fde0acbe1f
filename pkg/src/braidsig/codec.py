"""
Bit-exact file format for keys, delegations and signatures.

Binary envelope::

    "BSG1" | version u8 | hash id u8 | scheme id u8 | l u16 | r u16 |
    item count u32 | (item length u32 | item bytes)*

All integers are big-endian. The first item is a one-byte record kind;
the rest follow the field order of the record. Braids are stored as their
canonical normal-form encoding. The text transport is a single header line
followed by the envelope in standard base-64.
"""

from __future__ import annotations

import base64
import binascii
import struct
from dataclasses import fields
from typing import Any, Union

from .braid import BraidError, GroupParams, NormalForm, decode_nf, encode_nf
from .hashing import HASH_ALG_SHA256
from .schemes import (
    BiDvpsSignature,
    BiDvsSignature,
    Delegation,
    DvpsSignature,
    DvsSignature,
    KeyPair,
    ProxyKey,
    ProxySignature,
    PublicKey,
    Warrant,
)

MAGIC = b"BSG1"
VERSION = 1
_HEADER = struct.Struct(">4sBBBHHI")
_LEN = struct.Struct(">I")

SCHEME_IDS = {"keys": 0, "proxy": 1, "dvs": 2, "bidvs": 3, "dvps": 4, "bidvps": 5}
SCHEME_NAMES = {v: k for k, v in SCHEME_IDS.items()}


class CodecError(ValueError):
    pass


class BadMagic(CodecError):
    pass


class BadVersion(CodecError):
    pass


class Truncated(CodecError):
    pass


class IndexOutOfRange(CodecError):
    pass


class Malformed(CodecError):
    pass


# (kind byte, scheme, type, field layout); "b" braid, "m" bytes, "w" warrant, "r" role
_RECORDS = [
    (0x01, "keys", KeyPair, "secret:b x:b x_prime:b"),
    (0x02, "keys", PublicKey, "x:b x_prime:b"),
    (0x10, "proxy", Delegation, "warrant:w z_o:b t_o:b"),
    (0x11, "proxy", ProxyKey, "pk:b warrant:w z_o:b t_o:b"),
    (0x12, "proxy", ProxySignature, "gamma:b delta:b theta:b t_o:b warrant:w"),
    (0x20, "dvs", DvsSignature, "message:m alpha:b delta:b"),
    (0x30, "bidvs", BiDvsSignature, "role:r message:m alpha_own:b beta_other:b delta:b"),
    (0x40, "dvps", DvpsSignature, "warrant:w alpha:b gamma:b delta:b theta:b t_o:b"),
    (
        0x50,
        "bidvps",
        BiDvpsSignature,
        "role:r message:m alpha_own:b beta_other:b gamma:b delta:b theta:b t_o:b warrant:w",
    ),
]
_BY_TYPE = {t: (kind, scheme, [f.split(":") for f in layout.split()]) for kind, scheme, t, layout in _RECORDS}
_BY_KIND = {kind: (scheme, t, [f.split(":") for f in layout.split()]) for kind, scheme, t, layout in _RECORDS}

KIND_NAMES = {
    KeyPair: "keypair",
    PublicKey: "public-key",
    Delegation: "delegation",
    ProxyKey: "proxy-key",
    ProxySignature: "proxy-signature",
    DvsSignature: "dvs-signature",
    BiDvsSignature: "bidvs-signature",
    DvpsSignature: "dvps-signature",
    BiDvpsSignature: "bidvps-signature",
}

Record = Union[
    KeyPair,
    PublicKey,
    Delegation,
    ProxyKey,
    ProxySignature,
    DvsSignature,
    BiDvsSignature,
    DvpsSignature,
    BiDvpsSignature,
]


def _flatten(value: Any) -> dict[str, Any]:
    """Field values of a record, with nested keys/delegations flattened."""
    if isinstance(value, KeyPair):
        return {"secret": value.secret, "x": value.x, "x_prime": value.x_prime}
    if isinstance(value, ProxyKey):
        d = value.delegation
        return {"pk": value.pk, "warrant": d.warrant, "z_o": d.z_o, "t_o": d.t_o}
    return {f.name: getattr(value, f.name) for f in fields(value)}


def _params_of(value: Any) -> GroupParams:
    if isinstance(value, (KeyPair, PublicKey)):
        return value.params
    raise TypeError(f"{type(value).__name__} carries no group parameters; pass params")


def encode(value: Record, params: GroupParams | None = None) -> bytes:
    """Binary envelope for any codec-covered record."""
    try:
        kind, scheme, layout = _BY_TYPE[type(value)]
    except KeyError:
        raise TypeError(f"{type(value).__name__} is not a codec record") from None
    if params is None:
        params = _params_of(value)
    values = _flatten(value)
    items = [bytes([kind])]
    for name, tag in layout:
        v = values[name]
        if tag == "b":
            if v.n != params.n:
                raise IndexOutOfRange(f"{name} lives in B_{v.n}, envelope says B_{params.n}")
            items.append(encode_nf(v))
        elif tag == "w":
            items.append(v.to_bytes())
        elif tag == "r":
            items.append(bytes([v]))
        else:
            items.append(bytes(v))
    out = bytearray(
        _HEADER.pack(
            MAGIC, VERSION, HASH_ALG_SHA256, SCHEME_IDS[scheme], params.l, params.r, len(items)
        )
    )
    for item in items:
        out += _LEN.pack(len(item)) + item
    return bytes(out)


def decode_envelope(data: bytes) -> tuple[GroupParams, str, list[bytes]]:
    """Split an envelope into (params, scheme name, raw items)."""
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic(f"bad magic {bytes(data[:4])!r}")
    if len(data) < _HEADER.size:
        raise Truncated("envelope header is truncated")
    _, version, hash_id, scheme_id, l, r, count = _HEADER.unpack_from(data)
    if version != VERSION:
        raise BadVersion(f"unsupported version {version}")
    if hash_id != HASH_ALG_SHA256:
        raise BadVersion(f"unsupported hash algorithm id {hash_id}")
    if scheme_id not in SCHEME_NAMES:
        raise Malformed(f"unknown scheme id {scheme_id}")
    try:
        params = GroupParams(l, r)
    except BraidError as exc:
        raise IndexOutOfRange(str(exc)) from None
    pos = _HEADER.size
    items = []
    for _ in range(count):
        if pos + _LEN.size > len(data):
            raise Truncated("item length is truncated")
        (k,) = _LEN.unpack_from(data, pos)
        pos += _LEN.size
        if pos + k > len(data):
            raise Truncated("item body is truncated")
        items.append(bytes(data[pos : pos + k]))
        pos += k
    if pos != len(data):
        raise Malformed(f"{len(data) - pos} trailing bytes after payload")
    return params, SCHEME_NAMES[scheme_id], items


def _braid(item: bytes, params: GroupParams) -> NormalForm:
    try:
        x = decode_nf(item)
    except BraidError as exc:
        msg = str(exc)
        if "truncated" in msg or "length does not match" in msg:
            raise Truncated(msg) from None
        if "out of range" in msg or "permutation" in msg:
            raise IndexOutOfRange(msg) from None
        raise Malformed(msg) from None
    if x.n != params.n:
        raise IndexOutOfRange(f"braid in B_{x.n} inside a B_{params.n} envelope")
    return x


def decode(data: bytes) -> Record:
    """Inverse of :func:`encode`."""
    params, scheme, items = decode_envelope(data)
    if not items or len(items[0]) != 1 or items[0][0] not in _BY_KIND:
        raise Malformed("missing or unknown record kind")
    rec_scheme, rtype, layout = _BY_KIND[items[0][0]]
    if rec_scheme != scheme:
        raise Malformed(f"record kind belongs to scheme {rec_scheme}, header says {scheme}")
    if len(items) != len(layout) + 1:
        raise Malformed(f"expected {len(layout)} fields, found {len(items) - 1}")
    values: dict[str, Any] = {}
    for (name, tag), item in zip(layout, items[1:]):
        if tag == "b":
            values[name] = _braid(item, params)
        elif tag == "w":
            try:
                values[name] = Warrant.from_bytes(item)
            except ValueError as exc:
                raise Malformed(f"bad warrant: {exc}") from None
        elif tag == "r":
            if len(item) != 1 or item[0] not in (1, 2):
                raise Malformed("verifier role must be 1 or 2")
            values[name] = item[0]
        else:
            values[name] = item
    if rtype is KeyPair:
        return KeyPair(params, values["secret"], PublicKey(params, values["x"], values["x_prime"]))
    if rtype is PublicKey:
        return PublicKey(params, values["x"], values["x_prime"])
    if rtype is ProxyKey:
        d = Delegation(values["warrant"], values["z_o"], values["t_o"])
        return ProxyKey(values["pk"], d)
    return rtype(**values)


def params_of(data: bytes) -> GroupParams:
    return decode_envelope(data)[0]


# -- text transport ---------------------------------------------------------


def to_text(data: bytes) -> str:
    params, scheme, items = decode_envelope(data)
    kind = _BY_KIND[items[0][0]][1]
    header = f"BSG1 scheme={SCHEME_IDS[scheme]} ({scheme}) {KIND_NAMES[kind]} l={params.l} r={params.r}"
    body = base64.encodebytes(data).decode("ascii")
    return header + "\n" + body


def from_text(text: str) -> bytes:
    header, _, body = text.partition("\n")
    if not header.startswith("BSG1"):
        raise BadMagic(f"bad magic {header[:4]!r}")
    try:
        return base64.b64decode("".join(body.split()), validate=True)
    except binascii.Error as exc:
        raise Malformed(f"bad base-64 body: {exc}") from None


def dumps(value: Record, params: GroupParams | None = None) -> str:
    return to_text(encode(value, params))


def loads(blob: Union[bytes, str]) -> Record:
    """Decode either a raw envelope or its text transport."""
    if isinstance(blob, str):
        blob = blob.encode("ascii", "replace")
    if blob[:4] == MAGIC and blob[4:5] != b" ":
        return decode(blob)
    return decode(from_text(blob.decode("ascii", "replace")))
