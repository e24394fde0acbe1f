import hashlib
import random
from pathlib import Path

import pytest

from braidsig import codec
from braidsig import schemes as S
from braidsig.braid import GroupParams
from support import RECORD_TYPES, TOY6, random_record

GOLDEN = Path(__file__).parent / "golden"
P = TOY6.params


def reference_dvs():
    rng = random.Random(0)
    alice = S.keygen(P, TOY6.lengths, rng)
    cindy = S.keygen(P, TOY6.lengths, rng)
    return S.dvs_sign(alice, cindy.public, b"hello", rng, lengths=TOY6.lengths)


@pytest.mark.parametrize("kind", RECORD_TYPES, ids=lambda t: t.__name__)
def test_round_trip(kind):
    rng = random.Random(kind.__name__)
    for _ in range(60):
        v = random_record(kind, P, rng)
        raw = codec.encode(v, P)
        assert raw[:4] == b"BSG1"
        back = codec.decode(raw)
        assert back == v
        assert codec.encode(back, P) == raw
        assert codec.loads(codec.dumps(v, P)) == v
        assert codec.params_of(raw) == P


def test_keypair_round_trip_seed0():
    kp = S.keygen(P, TOY6.lengths, random.Random(0))
    assert codec.decode(codec.encode(kp)) == kp


def test_golden_dvs_signature():
    raw = (GOLDEN / "dvs_toy6_seed0.bsg").read_bytes()
    assert hashlib.sha256(raw).hexdigest() == (
        "8f6fc9f2ff971a11927a2da8d6afc75ce70e3722a37ed542aa7e5c5402fbd156"
    )
    assert codec.encode(reference_dvs(), P) == raw
    text = (GOLDEN / "dvs_toy6_seed0.txt").read_text()
    assert text.splitlines()[0] == "BSG1 scheme=2 (dvs) dvs-signature l=3 r=3"
    assert codec.from_text(text) == raw


def test_header_layout():
    raw = codec.encode(reference_dvs(), P)
    # magic, version, SHA-256 id, scheme 2, l = 3, r = 3, four items
    assert raw[:15].hex() == "42534731" "01" "01" "02" "0003" "0003" "00000004"


def test_non_key_records_need_params():
    with pytest.raises(TypeError):
        codec.encode(reference_dvs())


@pytest.mark.parametrize(
    "mutate, error",
    [
        (lambda b: b"XXXX" + b[4:], codec.BadMagic),
        (lambda b: b[:4] + b"\x07" + b[5:], codec.BadVersion),
        (lambda b: b[:5] + b"\x09" + b[6:], codec.BadVersion),
        (lambda b: b[:10], codec.Truncated),
        (lambda b: b[:-1], codec.Truncated),
        (lambda b: b + b"\x00", codec.Malformed),
        (lambda b: b[:6] + b"\x09" + b[7:], codec.Malformed),
        (lambda b: b[:6] + b"\x01" + b[7:], codec.Malformed),
        (lambda b: b[:7] + b"\x00\x01" + b[9:], codec.IndexOutOfRange),
        (lambda b: b[:7] + b"\x00\x04\x00\x04" + b[11:], codec.IndexOutOfRange),
    ],
)
def test_decode_errors(mutate, error):
    raw = codec.encode(reference_dvs(), P)
    with pytest.raises(error):
        codec.decode(mutate(raw))


def test_braid_payload_errors():
    raw = bytearray(codec.encode(reference_dvs(), P))
    # the first braid item starts after kind and message items
    start = 15 + 4 + 1 + 4 + 5 + 4
    assert raw[start : start + 4] == b"BRD1"
    bad = raw.copy()
    bad[start + 19] = 9
    with pytest.raises(codec.IndexOutOfRange):
        codec.decode(bytes(bad))
    bad = raw.copy()
    bad[start + 6] = 4  # B_4 braid inside a B_6 envelope
    with pytest.raises(codec.CodecError):
        codec.decode(bytes(bad))


def test_role_and_text_errors():
    sig = random_record(S.BiDvsSignature, P, random.Random(1))
    raw = bytearray(codec.encode(sig, P))
    raw[15 + 4 + 1 + 4] = 3
    with pytest.raises(codec.Malformed):
        codec.decode(bytes(raw))
    with pytest.raises(codec.BadMagic):
        codec.from_text("PEM1 whatever\nAAAA")
    with pytest.raises(codec.Malformed):
        codec.from_text("BSG1 x\n!!!")


def test_encode_rejects_mixed_index():
    sig = random_record(S.DvsSignature, GroupParams(4, 4), random.Random(2))
    with pytest.raises(codec.IndexOutOfRange):
        codec.encode(sig, P)
