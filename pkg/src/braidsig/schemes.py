"""
Five conjugacy-based signature protocols over B_{l+r}:

* proxy signatures with delegation by warrant (``delegate``, ``accept_delegation``,
  ``proxy_sign``, ``proxy_verify``),
* designated-verifier signatures (``dvs_*``),
* bi-designated-verifier signatures (``bidvs_*``),
* designated-verifier proxy signatures (``dvps_*``),
* bi-designated-verifier proxy signatures (``bidvps_*``).

Secret keys live in the right subgroup RB_r and every ephemeral braid ``b``
in the left subgroup LB_l, so the two always commute. Public braids ``x_u``
range over the whole group. Verifiers decide conjugacy without witnesses and
fail closed when the decision is inconclusive.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .braid import (
    Element,
    GroupParams,
    NormalForm,
    Subgroup,
    equals,
    normal_form,
    random_braid,
)
from .conjugacy import ConjugacyLimits, Verdict, WorkCounters, is_conjugate
from .hashing import HashParams, combine, h1, h2


class SchemeError(Exception):
    pass


class DelegationCheckFailed(SchemeError):
    pass


class ConjugacyInconclusive(SchemeError):
    pass


@dataclass(frozen=True)
class WordLengths:
    key: int = 16
    ephemeral: int = 16
    hash: int = 16


DEFAULT_LENGTHS = WordLengths()
DEFAULT_LIMITS = ConjugacyLimits()


def _hash_params(params: GroupParams, lengths: WordLengths) -> HashParams:
    return HashParams(params, lengths.hash)


# -- keys -------------------------------------------------------------------


@dataclass(frozen=True)
class PublicKey:
    params: GroupParams
    x: NormalForm
    x_prime: NormalForm


@dataclass(frozen=True)
class KeyPair:
    params: GroupParams
    secret: NormalForm
    public: PublicKey

    @property
    def x(self) -> NormalForm:
        return self.public.x

    @property
    def x_prime(self) -> NormalForm:
        return self.public.x_prime


def keygen(
    params: GroupParams,
    lengths: WordLengths = DEFAULT_LENGTHS,
    rng: Optional[random.Random] = None,
    *,
    secret: Optional[Element] = None,
    x: Optional[Element] = None,
) -> KeyPair:
    """x ← B_{l+r}, a ← RB_r, x' = a·x·a^{-1}. ``secret``/``x`` pin either part."""
    rng = rng or random.Random()
    if x is None:
        x = random_braid(params, Subgroup.FULL, lengths.key, rng)
    if secret is None:
        secret = random_braid(params, Subgroup.RIGHT, lengths.key, rng)
    x, a = normal_form(x), normal_form(secret)
    _check_params(params, x, a)
    return KeyPair(params, a, PublicKey(params, x, x.conjugate(a)))


def _check_params(params: GroupParams, *elements: NormalForm) -> None:
    for e in elements:
        if e.n != params.n:
            raise SchemeError(f"element lives in B_{e.n}, expected B_{params.n}")


# -- warrants and delegation ------------------------------------------------

_U16 = struct.Struct(">H")
_U32 = struct.Struct(">I")
_I64 = struct.Struct(">q")


@dataclass(frozen=True)
class Warrant:
    """Who delegates to whom, for how long, and over which messages."""

    original_id: bytes
    proxy_id: bytes
    valid_from: int
    valid_to: int
    message_scope: bytes = b""

    def __post_init__(self):
        if self.valid_from > self.valid_to:
            raise ValueError("warrant valid_from is after valid_to")
        if len(self.original_id) > 0xFFFF or len(self.proxy_id) > 0xFFFF:
            raise ValueError("warrant identity longer than 65535 bytes")

    def to_bytes(self) -> bytes:
        """Canonical m_w: length-prefixed ids, signed 64-bit window, scope."""
        return b"".join(
            [
                _U16.pack(len(self.original_id)),
                self.original_id,
                _U16.pack(len(self.proxy_id)),
                self.proxy_id,
                _I64.pack(self.valid_from),
                _I64.pack(self.valid_to),
                _U32.pack(len(self.message_scope)),
                self.message_scope,
            ]
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> Warrant:
        try:
            pos = 0
            (k,) = _U16.unpack_from(data, pos)
            original = data[pos + 2 : pos + 2 + k]
            pos += 2 + k
            (k,) = _U16.unpack_from(data, pos)
            proxy = data[pos + 2 : pos + 2 + k]
            pos += 2 + k
            (start,) = _I64.unpack_from(data, pos)
            (end,) = _I64.unpack_from(data, pos + 8)
            pos += 16
            (k,) = _U32.unpack_from(data, pos)
            scope = data[pos + 4 : pos + 4 + k]
            pos += 4 + k
        except struct.error as exc:
            raise ValueError("truncated warrant") from exc
        if pos != len(data) or len(scope) != k:
            raise ValueError("warrant length mismatch")
        return cls(original, proxy, start, end, scope)

    def covers(self, now: int) -> bool:
        return self.valid_from <= now <= self.valid_to

    def well_formed(self) -> bool:
        return bool(self.original_id) and bool(self.proxy_id)


@dataclass(frozen=True)
class Delegation:
    warrant: Warrant
    z_o: NormalForm
    t_o: NormalForm


@dataclass(frozen=True)
class ProxyKey:
    pk: NormalForm
    delegation: Delegation


def delegate(
    signer: KeyPair,
    warrant: Warrant,
    rng: Optional[random.Random] = None,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    faithful: bool = False,
    z: Optional[Element] = None,
) -> Delegation:
    """t_o = a_o·z_o·a_o^{-1}.

    z_o is drawn from the whole group by default; ``faithful`` draws it
    from LB_l, where it commutes with a_o and t_o = z_o.
    """
    rng = rng or random.Random()
    if z is None:
        sub = Subgroup.LEFT if faithful else Subgroup.FULL
        z = random_braid(signer.params, sub, lengths.ephemeral, rng)
    z = normal_form(z)
    _check_params(signer.params, z)
    return Delegation(warrant, z, z.conjugate(signer.secret))


def accept_delegation(
    proxy: KeyPair,
    d: Delegation,
    signer_public: PublicKey,
    *,
    limits: ConjugacyLimits = DEFAULT_LIMITS,
) -> ProxyKey:
    """Check t_o·x'_o ~ z_o·x_o, then PK = a_p·t_o·a_p^{-1}."""
    _check_params(proxy.params, d.z_o, d.t_o, signer_public.x, signer_public.x_prime)
    decision = is_conjugate(d.z_o * signer_public.x, d.t_o * signer_public.x_prime, limits)
    if decision.verdict is Verdict.INCONCLUSIVE:
        raise ConjugacyInconclusive("delegation check hit the conjugacy cap")
    if not decision.conjugate:
        raise DelegationCheckFailed("t_o·x'_o is not conjugate to z_o·x_o")
    return ProxyKey(d.t_o.conjugate(proxy.secret), d)


# -- signatures -------------------------------------------------------------


@dataclass(frozen=True)
class ProxySignature:
    gamma: NormalForm
    delta: NormalForm
    theta: NormalForm
    t_o: NormalForm
    warrant: Warrant


@dataclass(frozen=True)
class DvsSignature:
    message: bytes
    alpha: NormalForm
    delta: NormalForm


@dataclass(frozen=True)
class BiDvsSignature:
    """``role`` 1 is the first designated verifier, 2 the second; the
    hash always uses β_1·β_2 in that order."""

    role: int
    message: bytes
    alpha_own: NormalForm
    beta_other: NormalForm
    delta: NormalForm


@dataclass(frozen=True)
class DvpsSignature:
    warrant: Warrant
    alpha: NormalForm
    gamma: NormalForm
    delta: NormalForm
    theta: NormalForm
    t_o: NormalForm


@dataclass(frozen=True)
class BiDvpsSignature:
    role: int
    message: bytes
    alpha_own: NormalForm
    beta_other: NormalForm
    gamma: NormalForm
    delta: NormalForm
    theta: NormalForm
    t_o: NormalForm
    warrant: Warrant


@dataclass
class VerifyOutcome:
    accepted: bool
    failed_check: Optional[str] = None
    inconclusive: bool = False
    work: WorkCounters = field(default_factory=WorkCounters)

    def __bool__(self) -> bool:
        return self.accepted


WARRANT_WINDOW = "warrant-window"
WARRANT_IDENTITY = "warrant-identity"
MALFORMED = "malformed"


def _ephemeral(params, lengths, rng, b):
    if b is None:
        b = random_braid(params, Subgroup.LEFT, lengths.ephemeral, rng or random.Random())
    b = normal_form(b)
    _check_params(params, b)
    return b


def _check(
    checks: Iterable[tuple[str, Callable[[], tuple[NormalForm, NormalForm]]]],
    limits: ConjugacyLimits,
) -> VerifyOutcome:
    """Run labelled conjugacy checks in order; the first failure names the outcome."""
    work = WorkCounters()
    for label, pair in checks:
        lhs, rhs = pair()
        decision = is_conjugate(lhs, rhs, limits)
        work.add(decision.work)
        if decision.verdict is Verdict.INCONCLUSIVE:
            return VerifyOutcome(False, label, True, work)
        if not decision.conjugate:
            return VerifyOutcome(False, label, False, work)
    return VerifyOutcome(True, work=work)


def _warrant_failure(warrant: Warrant, now: int) -> Optional[VerifyOutcome]:
    if not warrant.well_formed():
        return VerifyOutcome(False, WARRANT_IDENTITY)
    if not warrant.covers(now):
        return VerifyOutcome(False, WARRANT_WINDOW)
    return None


def _same_index(n: int, *elements: NormalForm) -> bool:
    return all(e.n == n for e in elements)


def _unlock_proxy_key(pkey: ProxyKey, proxy: KeyPair) -> NormalForm:
    """a_p^{-1}·PK·a_p, which must equal t_o."""
    inner = pkey.pk.conjugate(proxy.secret.inverse())
    if not equals(inner, pkey.delegation.t_o):
        raise SchemeError("proxy key does not belong to this proxy signer")
    return inner


# proxy signature with warrant


def proxy_challenge(t_o: NormalForm, signer_public: PublicKey, warrant: Warrant, hp: HashParams):
    return h1(combine(h2(t_o * signer_public.x_prime), warrant.to_bytes()), hp)


def proxy_sign(
    pkey: ProxyKey,
    proxy: KeyPair,
    signer_public: PublicKey,
    rng: Optional[random.Random] = None,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    b: Optional[Element] = None,
) -> ProxySignature:
    params = proxy.params
    b = _ephemeral(params, lengths, rng, b)
    d = pkey.delegation
    h = proxy_challenge(d.t_o, signer_public, d.warrant, _hash_params(params, lengths))
    b_inv = b.inverse()
    gamma = b * h * b_inv
    delta = b * proxy.x * b_inv
    theta = b * _unlock_proxy_key(pkey, proxy) * b_inv
    return ProxySignature(gamma, delta, theta, d.t_o, d.warrant)


def proxy_verify(
    sig: ProxySignature,
    signer_public: PublicKey,
    proxy_public: PublicKey,
    now: int,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    limits: ConjugacyLimits = DEFAULT_LIMITS,
) -> VerifyOutcome:
    """Accept iff γθ ~ h·t_o and γδ ~ h·x_p, within the warrant window."""
    n = signer_public.x.n
    if not _same_index(n, sig.gamma, sig.delta, sig.theta, sig.t_o, proxy_public.x):
        return VerifyOutcome(False, MALFORMED)
    failure = _warrant_failure(sig.warrant, now)
    if failure is not None:
        return failure
    hp = _hash_params(signer_public.params, lengths)
    h = proxy_challenge(sig.t_o, signer_public, sig.warrant, hp)
    return _check(
        [
            ("γθ ~ h·t_o", lambda: (sig.gamma * sig.theta, h * sig.t_o)),
            ("γδ ~ h·x_p", lambda: (sig.gamma * sig.delta, h * proxy_public.x)),
        ],
        limits,
    )


# designated verifier


def dvs_challenge(beta: NormalForm, message: bytes, hp: HashParams) -> NormalForm:
    return h1(combine(h2(beta), message), hp)


def dvs_sign(
    signer: KeyPair,
    verifier_public: PublicKey,
    message: bytes,
    rng: Optional[random.Random] = None,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    b: Optional[Element] = None,
) -> DvsSignature:
    params = signer.params
    b = _ephemeral(params, lengths, rng, b)
    b_inv = b.inverse()
    alpha = b * verifier_public.x * b_inv
    beta = b * verifier_public.x_prime * b_inv
    h = dvs_challenge(beta, message, _hash_params(params, lengths))
    return DvsSignature(bytes(message), alpha, h.conjugate(signer.secret))


def dvs_verify(
    sig: DvsSignature,
    verifier: KeyPair,
    signer_public: PublicKey,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    limits: ConjugacyLimits = DEFAULT_LIMITS,
) -> VerifyOutcome:
    """β = a_c·α·a_c^{-1}; accept iff δ ~ h and δ·x'_o ~ h·x_o."""
    if not _same_index(verifier.params.n, sig.alpha, sig.delta, signer_public.x):
        return VerifyOutcome(False, MALFORMED)
    beta = sig.alpha.conjugate(verifier.secret)
    h = dvs_challenge(beta, sig.message, _hash_params(verifier.params, lengths))
    return _check(_dvs_checks(sig.delta, h, signer_public), limits)


def _dvs_checks(delta, h, signer_public):
    return [
        ("δ ~ h", lambda: (delta, h)),
        ("δ·x'_o ~ h·x_o", lambda: (delta * signer_public.x_prime, h * signer_public.x)),
    ]


# bi-designated verifier


def bidvs_sign(
    signer: KeyPair,
    cindy_public: PublicKey,
    trevor_public: PublicKey,
    message: bytes,
    rng: Optional[random.Random] = None,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    b: Optional[Element] = None,
) -> tuple[BiDvsSignature, BiDvsSignature]:
    params = signer.params
    b = _ephemeral(params, lengths, rng, b)
    b_inv = b.inverse()
    alpha1 = b * cindy_public.x * b_inv
    beta1 = b * cindy_public.x_prime * b_inv
    alpha2 = b * trevor_public.x * b_inv
    beta2 = b * trevor_public.x_prime * b_inv
    h = dvs_challenge(beta1 * beta2, message, _hash_params(params, lengths))
    delta = h.conjugate(signer.secret)
    message = bytes(message)
    return (
        BiDvsSignature(1, message, alpha1, beta2, delta),
        BiDvsSignature(2, message, alpha2, beta1, delta),
    )


def _beta_product(role: int, own: NormalForm, other: NormalForm) -> NormalForm:
    if role == 1:
        return own * other
    if role == 2:
        return other * own
    raise SchemeError(f"unknown verifier role {role}")


def _recover_betas(sig, verifier: KeyPair) -> NormalForm:
    """β_1·β_2, recomputing the verifier's own β from its secret."""
    own = sig.alpha_own.conjugate(verifier.secret)
    return _beta_product(sig.role, own, sig.beta_other)


def bidvs_verify(
    sig: BiDvsSignature,
    verifier: KeyPair,
    signer_public: PublicKey,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    limits: ConjugacyLimits = DEFAULT_LIMITS,
) -> VerifyOutcome:
    n = verifier.params.n
    if sig.role not in (1, 2) or not _same_index(
        n, sig.alpha_own, sig.beta_other, sig.delta, signer_public.x
    ):
        return VerifyOutcome(False, MALFORMED)
    product = _recover_betas(sig, verifier)
    h = dvs_challenge(product, sig.message, _hash_params(verifier.params, lengths))
    return _check(_dvs_checks(sig.delta, h, signer_public), limits)


# designated-verifier proxy


def _proxy_checks(gamma, delta, theta, t_o, h, proxy_public):
    return [
        ("γ ~ h", lambda: (gamma, h)),
        ("δ ~ x_p", lambda: (delta, proxy_public.x)),
        ("γδ ~ h·x_p", lambda: (gamma * delta, h * proxy_public.x)),
        ("γθ ~ h·t_o", lambda: (gamma * theta, h * t_o)),
    ]


def dvps_sign(
    pkey: ProxyKey,
    proxy: KeyPair,
    signer_public: PublicKey,
    verifier_public: PublicKey,
    rng: Optional[random.Random] = None,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    b: Optional[Element] = None,
) -> DvpsSignature:
    params = proxy.params
    b = _ephemeral(params, lengths, rng, b)
    b_inv = b.inverse()
    d = pkey.delegation
    alpha = b * verifier_public.x * b_inv
    beta = b * verifier_public.x_prime * b_inv
    h = dvs_challenge(beta, d.warrant.to_bytes(), _hash_params(params, lengths))
    gamma = b * h * b_inv
    delta = b * proxy.x * b_inv
    theta = b * _unlock_proxy_key(pkey, proxy) * b_inv
    return DvpsSignature(d.warrant, alpha, gamma, delta, theta, d.t_o)


def dvps_verify(
    sig: DvpsSignature,
    verifier: KeyPair,
    signer_public: PublicKey,
    proxy_public: PublicKey,
    now: int,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    limits: ConjugacyLimits = DEFAULT_LIMITS,
) -> VerifyOutcome:
    """Accept iff γ ~ h, δ ~ x_p, γδ ~ h·x_p and γθ ~ h·t_o, within the warrant window."""
    n = verifier.params.n
    if not _same_index(n, sig.alpha, sig.gamma, sig.delta, sig.theta, sig.t_o, proxy_public.x):
        return VerifyOutcome(False, MALFORMED)
    failure = _warrant_failure(sig.warrant, now)
    if failure is not None:
        return failure
    beta = sig.alpha.conjugate(verifier.secret)
    h = dvs_challenge(beta, sig.warrant.to_bytes(), _hash_params(verifier.params, lengths))
    return _check(_proxy_checks(sig.gamma, sig.delta, sig.theta, sig.t_o, h, proxy_public), limits)


# bi-designated-verifier proxy


def _bidvps_payload(warrant: Warrant, message: bytes) -> bytes:
    # the warrant encoding is self-delimiting, so m_w ‖ m is unambiguous
    return warrant.to_bytes() + bytes(message)


def bidvps_sign(
    pkey: ProxyKey,
    proxy: KeyPair,
    signer_public: PublicKey,
    cindy_public: PublicKey,
    trevor_public: PublicKey,
    message: bytes = b"",
    rng: Optional[random.Random] = None,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    b: Optional[Element] = None,
) -> tuple[BiDvpsSignature, BiDvpsSignature]:
    params = proxy.params
    b = _ephemeral(params, lengths, rng, b)
    b_inv = b.inverse()
    d = pkey.delegation
    alpha1 = b * cindy_public.x * b_inv
    beta1 = b * cindy_public.x_prime * b_inv
    alpha2 = b * trevor_public.x * b_inv
    beta2 = b * trevor_public.x_prime * b_inv
    h = dvs_challenge(
        beta1 * beta2, _bidvps_payload(d.warrant, message), _hash_params(params, lengths)
    )
    gamma = b * h * b_inv
    delta = b * proxy.x * b_inv
    theta = b * _unlock_proxy_key(pkey, proxy) * b_inv
    message = bytes(message)
    return (
        BiDvpsSignature(1, message, alpha1, beta2, gamma, delta, theta, d.t_o, d.warrant),
        BiDvpsSignature(2, message, alpha2, beta1, gamma, delta, theta, d.t_o, d.warrant),
    )


def bidvps_verify(
    sig: BiDvpsSignature,
    verifier: KeyPair,
    signer_public: PublicKey,
    proxy_public: PublicKey,
    now: int,
    *,
    lengths: WordLengths = DEFAULT_LENGTHS,
    limits: ConjugacyLimits = DEFAULT_LIMITS,
) -> VerifyOutcome:
    n = verifier.params.n
    elements = (sig.alpha_own, sig.beta_other, sig.gamma, sig.delta, sig.theta, sig.t_o)
    if sig.role not in (1, 2) or not _same_index(n, *elements, proxy_public.x):
        return VerifyOutcome(False, MALFORMED)
    failure = _warrant_failure(sig.warrant, now)
    if failure is not None:
        return failure
    product = _recover_betas(sig, verifier)
    h = dvs_challenge(
        product, _bidvps_payload(sig.warrant, sig.message), _hash_params(verifier.params, lengths)
    )
    return _check(_proxy_checks(sig.gamma, sig.delta, sig.theta, sig.t_o, h, proxy_public), limits)
