"""
Command-line front end.

Exit codes: 0 success / signature accepted, 1 verification rejected (or
attack found nothing), 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import codec, schemes
from .braid import BraidError, GroupParams, Subgroup, encode_nf, normal_form
from .conjugacy import WorkCounters, brute_force_csp
from .presets import DEFAULT_PRESET, PRESETS, Preset, preset_for

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# -- file helpers -----------------------------------------------------------


def _read(path: str):
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if blob[:4] == codec.MAGIC and blob[4:5] != b" ":
        raw = blob
    else:
        raw = codec.from_text(blob.decode("ascii", "replace"))
    return codec.params_of(raw), codec.decode(raw)


def _load(path: str, *types):
    params, value = _read(path)
    if types and not isinstance(value, types):
        names = " or ".join(codec.KIND_NAMES[t] for t in types)
        raise UsageError(f"{path} holds a {codec.KIND_NAMES[type(value)]}, expected {names}")
    return params, value


def _public(path: str) -> tuple[GroupParams, schemes.PublicKey]:
    params, value = _load(path, schemes.PublicKey, schemes.KeyPair)
    return params, value.public if isinstance(value, schemes.KeyPair) else value


def _write(args, path: str, value, params: GroupParams) -> None:
    raw = codec.encode(value, params)
    if getattr(args, "binary", False):
        Path(path).write_bytes(raw)
    else:
        Path(path).write_text(codec.to_text(raw))


def _rng(args) -> random.Random:
    if args.seed is None:
        return random.SystemRandom()
    return random.Random(args.seed)


def _preset(args, *params: GroupParams) -> Preset:
    if args.preset is not None:
        preset = PRESETS[args.preset]
    elif params:
        try:
            preset = preset_for(params[0])
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    else:
        preset = DEFAULT_PRESET
    for p in params:
        if p != preset.params:
            raise UsageError(
                f"files use l={p.l}, r={p.r} but preset {preset.name} has "
                f"l={preset.l}, r={preset.r}"
            )
    return preset


def _now(args) -> int:
    return int(time.time()) if args.now is None else args.now


def _message(args) -> bytes:
    if getattr(args, "message_file", None):
        return Path(args.message_file).read_bytes()
    return (args.message or "").encode()


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        flags = ", ".join("--" + n for n in missing)
        raise UsageError(f"{args.command} --scheme {args.scheme} needs {flags}")


def _stats(args, work: WorkCounters) -> None:
    if getattr(args, "stats", False):
        for line in work.as_lines():
            print(line)


# -- commands ---------------------------------------------------------------


def cmd_keygen(args) -> int:
    preset = _preset(args)
    lengths = preset.lengths
    if args.key_len is not None:
        lengths = schemes.WordLengths(args.key_len, lengths.ephemeral, lengths.hash)
    kp = schemes.keygen(preset.params, lengths, _rng(args))
    _write(args, args.out, kp, kp.params)
    pub_out = args.pub_out or args.out + ".pub"
    _write(args, pub_out, kp.public, kp.params)
    print(f"wrote {args.out} and {pub_out}")
    return EXIT_OK


def cmd_delegate(args) -> int:
    params, signer = _load(args.key, schemes.KeyPair)
    preset = _preset(args, params)
    try:
        warrant = schemes.Warrant(
            args.original_id.encode(),
            args.proxy_id.encode(),
            args.valid_from,
            args.valid_to,
            (args.scope or "").encode(),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    d = schemes.delegate(
        signer, warrant, _rng(args), lengths=preset.lengths, faithful=args.faithful
    )
    _write(args, args.out, d, params)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_accept_delegation(args) -> int:
    params, proxy = _load(args.key, schemes.KeyPair)
    dparams, d = _load(args.input, schemes.Delegation)
    sparams, signer = _public(args.signer)
    preset = _preset(args, params, dparams, sparams)
    try:
        pk = schemes.accept_delegation(proxy, d, signer, limits=preset.limits)
    except schemes.SchemeError as exc:
        print(f"rejected: {exc}")
        return EXIT_REJECTED
    _write(args, args.out, pk, params)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_sign(args) -> int:
    scheme = args.scheme
    params, key = _load(args.key, schemes.KeyPair)
    rng = _rng(args)
    all_params = [params]

    def pub(path):
        p, v = _public(path)
        all_params.append(p)
        return v

    if scheme == "proxy":
        _require(args, "proxy-key", "signer")
        pp, pkey = _load(args.proxy_key, schemes.ProxyKey)
        all_params.append(pp)
        signer = pub(args.signer)
        preset = _preset(args, *all_params)
        out = [schemes.proxy_sign(pkey, key, signer, rng, lengths=preset.lengths)]
    elif scheme == "dvs":
        _require(args, "verifier")
        verifier = pub(args.verifier)
        preset = _preset(args, *all_params)
        out = [schemes.dvs_sign(key, verifier, _message(args), rng, lengths=preset.lengths)]
    elif scheme == "bidvs":
        _require(args, "verifier", "verifier2", "out2")
        cindy, trevor = pub(args.verifier), pub(args.verifier2)
        preset = _preset(args, *all_params)
        out = list(
            schemes.bidvs_sign(key, cindy, trevor, _message(args), rng, lengths=preset.lengths)
        )
    elif scheme == "dvps":
        _require(args, "proxy-key", "signer", "verifier")
        pp, pkey = _load(args.proxy_key, schemes.ProxyKey)
        all_params.append(pp)
        signer, verifier = pub(args.signer), pub(args.verifier)
        preset = _preset(args, *all_params)
        out = [schemes.dvps_sign(pkey, key, signer, verifier, rng, lengths=preset.lengths)]
    else:
        _require(args, "proxy-key", "signer", "verifier", "verifier2", "out2")
        pp, pkey = _load(args.proxy_key, schemes.ProxyKey)
        all_params.append(pp)
        signer, cindy, trevor = pub(args.signer), pub(args.verifier), pub(args.verifier2)
        preset = _preset(args, *all_params)
        out = list(
            schemes.bidvps_sign(
                pkey, key, signer, cindy, trevor, _message(args), rng, lengths=preset.lengths
            )
        )
    for path, sig in zip((args.out, args.out2), out):
        _write(args, path, sig, params)
        print(f"wrote {path}")
    return EXIT_OK


_SIG_TYPES = {
    "proxy": schemes.ProxySignature,
    "dvs": schemes.DvsSignature,
    "bidvs": schemes.BiDvsSignature,
    "dvps": schemes.DvpsSignature,
    "bidvps": schemes.BiDvpsSignature,
}


def cmd_verify(args) -> int:
    scheme = args.scheme
    sparams, sig = _load(args.input, _SIG_TYPES[scheme])
    _require(args, "signer")
    all_params = [sparams]
    p, signer = _public(args.signer)
    all_params.append(p)
    kw = {}
    if scheme in ("proxy", "dvps", "bidvps"):
        _require(args, "proxy")
        p, proxy = _public(args.proxy)
        all_params.append(p)
    if scheme != "proxy":
        _require(args, "key")
        p, verifier = _load(args.key, schemes.KeyPair)
        all_params.append(p)
    preset = _preset(args, *all_params)
    kw = {"lengths": preset.lengths, "limits": preset.limits}
    now = _now(args)
    if scheme == "proxy":
        outcome = schemes.proxy_verify(sig, signer, proxy, now, **kw)
    elif scheme == "dvs":
        outcome = schemes.dvs_verify(sig, verifier, signer, **kw)
    elif scheme == "bidvs":
        outcome = schemes.bidvs_verify(sig, verifier, signer, **kw)
    elif scheme == "dvps":
        outcome = schemes.dvps_verify(sig, verifier, signer, proxy, now, **kw)
    else:
        outcome = schemes.bidvps_verify(sig, verifier, signer, proxy, now, **kw)
    _stats(args, outcome.work)
    if outcome.accepted:
        print("accepted")
        return EXIT_OK
    reason = "inconclusive conjugacy check" if outcome.inconclusive else "failed"
    print(f"rejected: {reason}: {outcome.failed_check}")
    return EXIT_REJECTED


def cmd_attack(args) -> int:
    params, target = _public(args.pub)
    work = WorkCounters()
    subgroup = Subgroup.FULL if args.target == "csp" else Subgroup.RIGHT
    started = time.perf_counter()
    c = brute_force_csp(
        target.x, target.x_prime, subgroup, args.max_len, params=params, stats=work
    )
    elapsed = time.perf_counter() - started
    _stats(args, work)
    if c is None:
        print(f"not found ≤ {args.max_len}")
        return EXIT_REJECTED
    print(f"conjugator: {c}")
    print(f"elapsed={elapsed:.3f}s")
    if args.target == "base1":
        if args.input is None:
            raise UsageError("attack --target base1 needs --in with a dvs signature")
        sparams, sig = _load(args.input, schemes.DvsSignature)
        if sparams != params:
            raise UsageError("signature and public key use different parameters")
        cw = normal_form(c)
        beta = sig.alpha.conjugate(cw)
        print(f"beta: {encode_nf(beta).hex()}")
    return EXIT_OK


def cmd_bench(args) -> int:
    preset = _preset(args)
    params, lengths, limits = preset.params, preset.lengths, preset.limits
    rng = _rng(args)
    now = 50
    warrant = schemes.Warrant(b"alice", b"bob", 0, 100, b"bench")
    timings: dict[str, float] = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        result = fn()
        timings[name] = timings.get(name, 0.0) + time.perf_counter() - t0
        return result

    for _ in range(args.rounds):
        alice, bob, cindy, trevor = (
            timed("keygen", lambda: schemes.keygen(params, lengths, rng)) for _ in range(4)
        )
        d = timed("delegate", lambda: schemes.delegate(alice, warrant, rng, lengths=lengths))
        pk = timed(
            "accept-delegation",
            lambda: schemes.accept_delegation(bob, d, alice.public, limits=limits),
        )
        s = timed("sign proxy", lambda: schemes.proxy_sign(pk, bob, alice.public, rng, lengths=lengths))
        timed("verify proxy", lambda: schemes.proxy_verify(s, alice.public, bob.public, now, lengths=lengths, limits=limits))
        s = timed("sign dvs", lambda: schemes.dvs_sign(alice, cindy.public, b"m", rng, lengths=lengths))
        timed("verify dvs", lambda: schemes.dvs_verify(s, cindy, alice.public, lengths=lengths, limits=limits))
        s1, _ = timed("sign bidvs", lambda: schemes.bidvs_sign(alice, cindy.public, trevor.public, b"m", rng, lengths=lengths))
        timed("verify bidvs", lambda: schemes.bidvs_verify(s1, cindy, alice.public, lengths=lengths, limits=limits))
        s = timed("sign dvps", lambda: schemes.dvps_sign(pk, bob, alice.public, cindy.public, rng, lengths=lengths))
        timed("verify dvps", lambda: schemes.dvps_verify(s, cindy, alice.public, bob.public, now, lengths=lengths, limits=limits))
        s1, _ = timed("sign bidvps", lambda: schemes.bidvps_sign(pk, bob, alice.public, cindy.public, trevor.public, b"m", rng, lengths=lengths))
        timed("verify bidvps", lambda: schemes.bidvps_verify(s1, cindy, alice.public, bob.public, now, lengths=lengths, limits=limits))
    print(f"preset={preset.name} rounds={args.rounds}")
    for name, total in timings.items():
        print(f"{name}: {1000 * total / args.rounds:.1f} ms/round")
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), help="parameter preset")
    p.add_argument("--seed", type=int, help="seed for a reproducible run")
    p.add_argument("--stats", action="store_true", help="print conjugacy work counters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidsig", description="Braid-group proxy and designated-verifier signatures."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _common(p)
    p.add_argument("--out", required=True, help="key pair file (contains the secret)")
    p.add_argument("--pub-out", help="public key file (default: OUT.pub)")
    p.add_argument("--key-len", type=int, help="override the preset key word length")
    p.add_argument("--binary", action="store_true", help="write raw envelopes, not base-64")

    p = sub.add_parser("delegate", help="issue a delegation token to a proxy signer")
    _common(p)
    p.add_argument("--key", required=True, help="original signer's key pair")
    p.add_argument("--original-id", required=True)
    p.add_argument("--proxy-id", required=True)
    p.add_argument("--valid-from", type=int, required=True)
    p.add_argument("--valid-to", type=int, required=True)
    p.add_argument("--scope", help="message scope recorded in the warrant")
    p.add_argument("--faithful", action="store_true", help="draw z_o from LB_l")
    p.add_argument("--out", required=True)
    p.add_argument("--binary", action="store_true")

    p = sub.add_parser("accept-delegation", help="check a delegation and derive the proxy key")
    _common(p)
    p.add_argument("--key", required=True, help="proxy signer's key pair")
    p.add_argument("--in", dest="input", required=True, help="delegation file")
    p.add_argument("--signer", required=True, help="original signer's public key")
    p.add_argument("--out", required=True)
    p.add_argument("--binary", action="store_true")

    p = sub.add_parser("sign", help="sign under one of the five schemes")
    _common(p)
    p.add_argument("--scheme", required=True, choices=sorted(_SIG_TYPES))
    p.add_argument("--key", required=True, help="signer's key pair")
    p.add_argument("--proxy-key", help="proxy key (proxy, dvps, bidvps)")
    p.add_argument("--signer", help="original signer's public key (proxy schemes)")
    p.add_argument("--verifier", help="designated verifier's public key")
    p.add_argument("--verifier2", help="second designated verifier's public key")
    p.add_argument("--message")
    p.add_argument("--message-file")
    p.add_argument("--out", required=True)
    p.add_argument("--out2", help="signature for the second verifier")
    p.add_argument("--binary", action="store_true")

    p = sub.add_parser("verify", help="verify a signature")
    _common(p)
    p.add_argument("--scheme", required=True, choices=sorted(_SIG_TYPES))
    p.add_argument("--in", dest="input", required=True, help="signature file")
    p.add_argument("--key", help="designated verifier's key pair")
    p.add_argument("--signer", help="original signer's public key")
    p.add_argument("--proxy", help="proxy signer's public key")
    p.add_argument("--now", type=int, help="verification time, seconds since epoch")

    p = sub.add_parser("attack", help="brute-force conjugator search against toy keys")
    _common(p)
    p.add_argument("--target", required=True, choices=("csp", "gcsp", "base1"))
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--pub", required=True, help="public key under attack")
    p.add_argument("--in", dest="input", help="dvs signature (base1 target)")

    p = sub.add_parser("bench", help="time every operation at a preset")
    _common(p)
    p.add_argument("--rounds", type=int, default=3)
    return parser


_COMMANDS = {
    "keygen": cmd_keygen,
    "delegate": cmd_delegate,
    "accept-delegation": cmd_accept_delegation,
    "sign": cmd_sign,
    "verify": cmd_verify,
    "attack": cmd_attack,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, codec.CodecError, BraidError, schemes.SchemeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
