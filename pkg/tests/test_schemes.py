import random
from dataclasses import replace

import pytest

from braidsig import schemes as S
from braidsig.braid import BraidWord, GroupParams, NormalForm, equals, normal_form, permutation_of
from braidsig.presets import PRESETS
from braidsig.hashing import HashParams
from support import TOY6, make_world

P = TOY6.params
L = TOY6.lengths
HP = HashParams(P, L.hash)
E = BraidWord(P.n)
S1 = normal_form(BraidWord(P.n, (1,)))


def rand(seed: int) -> NormalForm:
    return normal_form(BraidWord(P.n, tuple(random.Random(seed).choice((1, 2, 3, -4, -5, 5)) for _ in range(12))))


# -- keys and delegation ----------------------------------------------------


def test_keygen_invariant_and_identity_secret():
    kp = S.keygen(P, L, random.Random(1))
    assert kp.x_prime == kp.x.conjugate(kp.secret)
    # a right-subgroup element fixes the first l strands
    assert permutation_of(kp.secret)[:3] == (1, 2, 3)
    assert equals(kp.secret * normal_form(BraidWord(P.n, (1, 2))), normal_form(BraidWord(P.n, (1, 2))) * kp.secret)
    kp = S.keygen(P, L, random.Random(1), secret=E)
    assert kp.x_prime == kp.x


def test_keygen_secrets_differ_across_seeds():
    toy8 = PRESETS["toy-8"]
    secrets = {S.keygen(toy8.params, toy8.lengths, random.Random(seed)).secret for seed in range(50)}
    assert len(secrets) == 50


@pytest.mark.xfail(strict=True, reason="16-letter walks in RB_3 repeat: about 1% of toy-6 secrets are the identity")
def test_toy6_secrets_differ_across_seeds():
    secrets = {S.keygen(P, L, random.Random(seed)).secret for seed in range(50)}
    assert len(secrets) == 50


def test_identity_signer_secret_gives_t_equal_z(world):
    alice = S.keygen(P, L, random.Random(2), secret=E)
    d = S.delegate(alice, world.warrant, random.Random(3))
    assert d.t_o == d.z_o
    S.accept_delegation(world.bob, d, alice.public)


def test_faithful_delegation_commutes(world):
    d = S.delegate(world.alice, world.warrant, random.Random(4), faithful=True)
    assert d.t_o == d.z_o


def test_delegation_tampers(world):
    d = world.delegation
    with pytest.raises(S.DelegationCheckFailed):
        S.accept_delegation(world.bob, replace(d, t_o=rand(5)), world.alice.public)
    with pytest.raises(S.DelegationCheckFailed):
        S.accept_delegation(world.bob, replace(d, z_o=d.z_o * S1), world.alice.public)


def test_proxy_key_unlocks_to_t(world):
    pk = world.proxy_key
    assert equals(pk.pk.conjugate(world.bob.secret.inverse()), world.delegation.t_o)
    plain = S.keygen(P, L, random.Random(6), secret=E)
    assert S.accept_delegation(plain, world.delegation, world.alice.public).pk == world.delegation.t_o


def test_proxy_key_bound_to_its_proxy(world):
    with pytest.raises(S.SchemeError):
        S.proxy_sign(world.proxy_key, world.cindy, world.alice.public, random.Random(0))


def test_inconclusive_delegation_check(world):
    tiny = S.ConjugacyLimits(sss_cap=1, cycling_cap=0)
    try:
        S.accept_delegation(world.bob, world.delegation, world.alice.public, limits=tiny)
    except S.ConjugacyInconclusive:
        pass


def test_warrant_encoding():
    w = S.Warrant(b"al", b"b", -5, 7, b"xyz")
    raw = w.to_bytes()
    assert raw == b"\x00\x02al\x00\x01b" + (-5).to_bytes(8, "big", signed=True) + (7).to_bytes(8, "big") + b"\x00\x00\x00\x03xyz"
    assert S.Warrant.from_bytes(raw) == w
    for bad in (raw[:-1], raw + b"\x00", raw[:3]):
        with pytest.raises(ValueError):
            S.Warrant.from_bytes(bad)
    with pytest.raises(ValueError):
        S.Warrant(b"a", b"b", 9, 1)


# -- proxy signature ----------------------------------------------------------


def proxy_sig(world, **kw):
    return S.proxy_sign(world.proxy_key, world.bob, world.alice.public, random.Random(8), **kw)


def test_proxy_round_trip(world):
    out = S.proxy_verify(proxy_sig(world), world.alice.public, world.bob.public, world.now)
    assert out.accepted and out.failed_check is None and out


def test_proxy_identity_ephemeral(world):
    sig = proxy_sig(world, b=E)
    h = S.proxy_challenge(world.delegation.t_o, world.alice.public, world.warrant, HP)
    assert sig.gamma == h and sig.delta == world.bob.x and sig.theta == world.delegation.t_o
    assert S.proxy_verify(sig, world.alice.public, world.bob.public, world.now)


def test_proxy_window_and_identity(world):
    sig = proxy_sig(world)
    for now in (99, 201):
        out = S.proxy_verify(sig, world.alice.public, world.bob.public, now)
        assert not out and out.failed_check == "warrant-window"
    assert S.proxy_verify(sig, world.alice.public, world.bob.public, 100)
    assert S.proxy_verify(sig, world.alice.public, world.bob.public, 200)
    anon = replace(sig, warrant=replace(sig.warrant, proxy_id=b""))
    assert S.proxy_verify(anon, world.alice.public, world.bob.public, world.now).failed_check == "warrant-identity"


def test_proxy_warrant_flip_rejected(world):
    sig = proxy_sig(world)
    w = replace(sig.warrant, message_scope=b"invoiceS")
    assert not S.proxy_verify(replace(sig, warrant=w), world.alice.public, world.bob.public, world.now)


def test_proxy_correctness_identities(world):
    b = rand(9)
    sig = proxy_sig(world, b=b)
    h = S.proxy_challenge(world.delegation.t_o, world.alice.public, world.warrant, HP)
    t_o = world.delegation.t_o
    assert sig.gamma * sig.theta == (h * t_o).conjugate(b)
    assert sig.gamma * sig.delta == (h * world.bob.x).conjugate(b)
    assert sig.theta == t_o.conjugate(b)


# -- designated verifier ----------------------------------------------------


def test_dvs_round_trip_and_wrong_verifier(world):
    sig = S.dvs_sign(world.alice, world.cindy.public, b"pay 5", random.Random(10))
    assert S.dvs_verify(sig, world.cindy, world.alice.public)
    assert not S.dvs_verify(sig, world.trevor, world.alice.public)
    flipped = replace(sig, message=b"pay 4")
    assert not S.dvs_verify(flipped, world.cindy, world.alice.public)


def test_dvs_degenerate():
    alice = S.keygen(P, L, random.Random(11), secret=E)
    cindy = S.keygen(P, L, random.Random(12))
    sig = S.dvs_sign(alice, cindy.public, b"m", b=E)
    beta = cindy.x_prime
    assert sig.alpha == cindy.x and sig.delta == S.dvs_challenge(beta, b"m", HP)
    assert S.dvs_verify(sig, cindy, alice.public)


def test_dvs_randomised(world):
    s1 = S.dvs_sign(world.alice, world.cindy.public, b"m", random.Random(13))
    s2 = S.dvs_sign(world.alice, world.cindy.public, b"m", random.Random(14))
    assert s1.alpha != s2.alpha
    assert S.dvs_verify(s1, world.cindy, world.alice.public)
    assert S.dvs_verify(s2, world.cindy, world.alice.public)


def test_dvs_correctness_identity(world):
    b = rand(15)
    sig = S.dvs_sign(world.alice, world.cindy.public, b"m", b=b)
    beta = world.cindy.x_prime.conjugate(b)
    assert sig.alpha.conjugate(world.cindy.secret) == beta
    h = S.dvs_challenge(beta, b"m", HP)
    assert sig.delta * world.alice.x_prime == (h * world.alice.x).conjugate(world.alice.secret)


def test_dvs_malformed_index(world):
    sig = S.dvs_sign(world.alice, world.cindy.public, b"m", random.Random(16))
    out = S.dvs_verify(replace(sig, delta=normal_form(BraidWord(4, (1,)))), world.cindy, world.alice.public)
    assert out.failed_check == "malformed"


# -- bi-designated verifier -------------------------------------------------


def test_bidvs_round_trip(world):
    s1, s2 = S.bidvs_sign(world.alice, world.cindy.public, world.trevor.public, b"m", random.Random(17))
    assert (s1.role, s2.role) == (1, 2)
    assert S.bidvs_verify(s1, world.cindy, world.alice.public)
    assert S.bidvs_verify(s2, world.trevor, world.alice.public)
    assert not S.bidvs_verify(s1, world.trevor, world.alice.public)
    assert not S.bidvs_verify(s2, world.cindy, world.alice.public)


def test_bidvs_identity_ephemeral(world):
    s1, s2 = S.bidvs_sign(world.alice, world.cindy.public, world.trevor.public, b"m", b=E)
    assert s1.beta_other == world.trevor.x_prime and s2.beta_other == world.cindy.x_prime
    assert S.bidvs_verify(s1, world.cindy, world.alice.public)


def test_bidvs_swapped_beta(world):
    s1, _ = S.bidvs_sign(world.alice, world.cindy.public, world.trevor.public, b"m", random.Random(18))
    assert not S.bidvs_verify(replace(s1, beta_other=rand(19)), world.cindy, world.alice.public)
    assert S.bidvs_verify(replace(s1, role=3), world.cindy, world.alice.public).failed_check == "malformed"


# -- designated-verifier proxy ----------------------------------------------


def test_dvps_round_trip(world):
    sig = S.dvps_sign(world.proxy_key, world.bob, world.alice.public, world.cindy.public, random.Random(20))
    args = (world.alice.public, world.bob.public)
    assert S.dvps_verify(sig, world.cindy, *args, world.now)
    assert not S.dvps_verify(sig, world.trevor, *args, world.now)
    assert S.dvps_verify(sig, world.cindy, *args, 500).failed_check == "warrant-window"
    out = S.dvps_verify(replace(sig, theta=rand(21)), world.cindy, *args, world.now)
    assert out.failed_check == "γθ ~ h·t_o"


def test_dvps_all_identity():
    kp = lambda seed: S.keygen(P, L, random.Random(seed), secret=E)
    alice, bob, cindy = kp(22), kp(23), kp(24)
    w = S.Warrant(b"a", b"b", 0, 10)
    d = S.delegate(alice, w, random.Random(25))
    pk = S.accept_delegation(bob, d, alice.public)
    sig = S.dvps_sign(pk, bob, alice.public, cindy.public, b=E)
    h = S.dvs_challenge(cindy.x_prime, w.to_bytes(), HP)
    assert sig.gamma == h and sig.theta == d.t_o == d.z_o and sig.delta == bob.x
    assert S.dvps_verify(sig, cindy, alice.public, bob.public, 5)


# -- bi-designated-verifier proxy -------------------------------------------


def test_bidvps_round_trip(world):
    s1, s2 = S.bidvps_sign(
        world.proxy_key, world.bob, world.alice.public, world.cindy.public, world.trevor.public,
        b"order 7", random.Random(26),
    )
    args = (world.alice.public, world.bob.public, world.now)
    assert S.bidvps_verify(s1, world.cindy, *args)
    assert S.bidvps_verify(s2, world.trevor, *args)
    assert not S.bidvps_verify(s1, world.trevor, *args)
    assert not S.bidvps_verify(replace(s2, message=b"order 8"), world.trevor, *args)
    assert S.bidvps_verify(s1, world.cindy, world.alice.public, world.bob.public, 0).failed_check == "warrant-window"


def test_bidvps_message_and_warrant_are_separated(world):
    # moving bytes between scope and message must change the challenge
    w1 = replace(world.warrant, message_scope=b"ab")
    w2 = replace(world.warrant, message_scope=b"a")
    assert w1.to_bytes() + b"c" != w2.to_bytes() + b"bc"


def test_unknown_role_rejected():
    with pytest.raises(S.SchemeError):
        S._beta_product(0, S1, S1)


def test_group_mismatch():
    other = S.keygen(GroupParams(4, 4), S.WordLengths(4, 4, 4), random.Random(0))
    with pytest.raises(S.SchemeError):
        S.keygen(P, L, random.Random(0), x=other.x)


# -- stated properties ------------------------------------------------------


def test_seed0_key_and_delegation_are_conjugate():
    from braidsig.conjugacy import is_conjugate

    kp = S.keygen(P, L, random.Random(0))
    assert is_conjugate(kp.x, kp.x_prime).conjugate
    d = S.delegate(kp, S.Warrant(b"a", b"b", 0, 1), random.Random(1))
    assert is_conjugate(d.z_o * kp.x, d.t_o * kp.x_prime).conjugate


def test_theta_reveals_only_a_conjugate_of_t(world):
    b = rand(30)
    sig = proxy_sig(world, b=b)
    assert sig.theta == world.delegation.t_o.conjugate(b)
    assert all(getattr(sig, f) != world.proxy_key.pk for f in ("gamma", "delta", "theta", "t_o"))


def test_verifier_recomputes_signer_beta(world):
    # a_c commutes with b, so a_c·α·a_c^{-1} = b·x'_c·b^{-1}
    b = rand(31)
    a_c, x_c2 = world.cindy.secret, world.cindy.x_prime
    assert x_c2.conjugate(b).conjugate(a_c) == x_c2.conjugate(a_c).conjugate(b)
    lhs = (world.cindy.x.conjugate(b)).conjugate(a_c)
    assert lhs == x_c2.conjugate(b)


def test_inconclusive_never_accepts(world):
    sig = S.dvs_sign(world.alice, world.cindy.public, b"m", random.Random(32))
    stingy = S.ConjugacyLimits(sss_cap=1, cycling_cap=0)
    out = S.dvs_verify(sig, world.cindy, world.alice.public, limits=stingy)
    assert out.inconclusive and not out.accepted


def test_dvps_does_not_bind_signer_key(world):
    # h depends on β and m_w only, and the four checks use x_p, t_o and h:
    # the original signer is named in the warrant but its key is never used
    sig = S.dvps_sign(world.proxy_key, world.bob, world.alice.public, world.cindy.public, random.Random(33))
    assert S.dvps_verify(sig, world.cindy, world.trevor.public, world.bob.public, world.now)
