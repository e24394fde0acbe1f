"""
Conjugacy machinery: cycling, decycling, summit representatives, super
summit sets, the conjugacy decision used by every verifier, and a
breadth-first conjugator search used as an attack and test oracle.

Conjugator convention throughout: a conjugator ``c`` carries ``x`` to ``y``
when ``c·x·c^{-1} = y``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import garside as g
from .braid import (
    BraidWord,
    Element,
    GroupParams,
    NormalForm,
    Subgroup,
    _check_index,
    conjugate_by_simple,
    identity_nf,
    mul_simple,
    nf_inverse,
    nf_multiply,
    free_reduce,
    normal_form,
    simple_inverse_nf,
    simple_mul,
    simple_nf,
)
from .garside import Perm


class Verdict(enum.Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not-conjugate"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConjugacyLimits:
    sss_cap: int = 20_000
    cycling_cap: int = 10_000


@dataclass
class WorkCounters:
    elements: int = 0
    cyclings: int = 0
    decyclings: int = 0
    capped: bool = False

    def add(self, other: WorkCounters) -> None:
        self.elements += other.elements
        self.cyclings += other.cyclings
        self.decyclings += other.decyclings
        self.capped = self.capped or other.capped

    def as_lines(self) -> list[str]:
        return [
            f"elements={self.elements}",
            f"cyclings={self.cyclings}",
            f"decyclings={self.decyclings}",
            f"capped={int(self.capped)}",
        ]


@dataclass
class ConjugacyDecision:
    verdict: Verdict
    witness: Optional[BraidWord] = None
    work: WorkCounters = field(default_factory=WorkCounters)

    @property
    def conjugate(self) -> bool:
        return self.verdict is Verdict.CONJUGATE


@dataclass
class SummitData:
    """A summit representative of x, the conjugator reaching it, and optionally SSS(x).

    ``sss`` maps each enumerated member to ``(parent, s)`` meaning
    member = s^{-1}·parent·s; the representative maps to ``None``.
    """

    representative: NormalForm
    conjugator_nf: NormalForm
    sss: Optional[dict[NormalForm, Optional[tuple[NormalForm, Perm]]]] = None
    truncated: bool = False
    work: WorkCounters = field(default_factory=WorkCounters)

    @property
    def conjugator(self) -> BraidWord:
        return self.conjugator_nf.to_word()

    @property
    def members(self) -> frozenset[NormalForm]:
        return frozenset(self.sss or (self.representative,))

    def member_conjugator(self, member: NormalForm) -> NormalForm:
        """Conjugator c with c·x·c^{-1} = member, for the original input x."""
        if self.sss is None or member not in self.sss:
            raise KeyError("not an enumerated member")
        n = member.n
        c = identity_nf(n)
        node = member
        while self.sss[node] is not None:
            parent, s = self.sss[node]
            c = nf_multiply(c, simple_inverse_nf(n, s))
            node = parent
        return nf_multiply(c, self.conjugator_nf)


# -- cycling and decycling --------------------------------------------------


def _cycle(x: NormalForm) -> tuple[NormalForm, NormalForm]:
    """Cycling with its conjugator as a normal form."""
    n = x.n
    if not x.factors:
        return x, identity_nf(n)
    iota = g.tau_power(x.factors[0], x.inf)
    rest = NormalForm(n, x.inf, x.factors[1:])
    return mul_simple(rest, iota), simple_inverse_nf(n, iota)


def _decycle(x: NormalForm) -> tuple[NormalForm, NormalForm]:
    n = x.n
    if not x.factors:
        return x, identity_nf(n)
    last = x.factors[-1]
    rest = NormalForm(n, x.inf, x.factors[:-1])
    return simple_mul(last, rest), simple_nf(n, last)


def cycling(x: Element) -> tuple[NormalForm, BraidWord]:
    """Conjugate x by τ^{-inf}(A_1)."""
    y, c = _cycle(normal_form(x))
    return y, c.to_word()


def decycling(x: Element) -> tuple[NormalForm, BraidWord]:
    """Conjugate x by the inverse of its last factor."""
    y, c = _decycle(normal_form(x))
    return y, c.to_word()


def _optimise(x, c, step, better, budget, work, counter):
    """Apply ``step`` until the cycle of visited elements closes without improvement.

    A non-optimal inf (sup) is always improved by some iterate of cycling
    (decycling), so a repeated element proves optimality.
    """
    seen = {x}
    while x.factors:
        if budget <= 0:
            work.capped = True
            break
        budget -= 1
        y, s = step(x)
        setattr(work, counter, getattr(work, counter) + 1)
        c = nf_multiply(s, c)
        if better(y, x):
            seen = {y}
        elif y in seen:
            x = y
            break
        else:
            seen.add(y)
        x = y
    return x, c, budget


def summit_representative(x: Element, limits: ConjugacyLimits = ConjugacyLimits()) -> SummitData:
    """Cycle until inf is maximal, then decycle until sup is minimal."""
    x = normal_form(x)
    n = x.n
    work = WorkCounters()
    y, c, budget = _optimise(
        x, identity_nf(n), _cycle, lambda a, b: a.inf > b.inf, limits.cycling_cap, work, "cyclings"
    )
    y, c, _ = _optimise(y, c, _decycle, lambda a, b: a.sup < b.sup, budget, work, "decyclings")
    return SummitData(representative=y, conjugator_nf=c, work=work)


# -- super summit sets ------------------------------------------------------


def _needs(x: NormalForm, rho: Perm) -> Perm:
    """Smallest d such that rho·d keeps inf(x^{rho·d}) >= inf(x), relative to rho.

    inf(rho^{-1}·x·rho) >= p  iff  τ^p(rho) ≼ x'·rho, with x = Δ^p·x'.
    The returned d is the complement (x'·rho)\\τ^p(rho); it is the
    identity exactly when the condition already holds.
    """
    d = g.tau_power(rho, x.inf)
    for f in x.factors:
        d = g.complement(f, d)
    return g.complement(rho, d)


def minimal_simple(x: NormalForm, x_inv: NormalForm, start: Perm) -> Perm:
    """The smallest simple rho ≽ start with x^rho in the super summit set of x.

    ``x`` must already be a super summit element. Both the inf and the sup
    (via inf of the inverse) conditions are pushed upwards until neither
    demands more; every step stays below any valid conjugator, so the fixed
    point is the minimum.
    """
    n = x.n
    e = g.identity(n)
    rho = start
    while True:
        grown = False
        for y in (x, x_inv):
            d = _needs(y, rho)
            if d != e:
                rho = g.compose(rho, d)
                grown = True
        if not grown:
            return rho


def _neighbours(y: NormalForm, method: str):
    n = y.n
    if method == "exhaustive":
        e = g.identity(n)
        for s in g.all_simples(n):
            if s != e:
                yield s, conjugate_by_simple(y, s)
        return
    y_inv = nf_inverse(y)
    found = set()
    for i in range(1, n):
        rho = minimal_simple(y, y_inv, g.atom(n, i))
        if rho not in found:
            found.add(rho)
            yield rho, conjugate_by_simple(y, rho)


def super_summit_set(
    x: Element,
    cap: int = ConjugacyLimits.sss_cap,
    limits: ConjugacyLimits = ConjugacyLimits(),
    method: str = "minimal",
    target: Optional[NormalForm] = None,
) -> SummitData:
    """Enumerate SSS(x) breadth-first from a summit representative.

    ``method="minimal"`` follows only the minimal simple conjugators
    (n-1 per member); ``method="exhaustive"`` tries every simple element
    and keeps conjugates with the summit (inf, sup). Both reach the whole
    set. Enumeration stops early once ``target`` is found, and is flagged
    truncated when the set outgrows ``cap``.
    """
    data = summit_representative(x, limits)
    return _enumerate(data, cap, method, target)


class _Walk:
    """Breadth-first growth of a super summit set, one member at a time."""

    def __init__(self, data: SummitData, method: str):
        self.data = data
        self.method = method
        rep = data.representative
        data.sss = {rep: None}
        data.work.elements += 1
        self.key = (rep.inf, rep.sup)
        self.queue = deque([rep])
        self._seed_orbit(rep)

    def _seed_orbit(self, y: NormalForm) -> None:
        """Queue the cycling orbit of y and its τ-images first.

        Cycling and τ both keep a super summit element inside the set, and
        conjugate generic braids tend to share these orbits, so two walks
        seeded this way usually meet before any breadth-first growth.
        """
        members = self.data.sss
        n = y.n
        delta = g.half_twist(n)
        orbit = []
        while y.factors:
            iota = g.tau_power(y.factors[0], y.inf)
            z = conjugate_by_simple(y, iota)
            if z in members or (z.inf, z.sup) != self.key:
                break
            members[z] = (y, iota)
            orbit.append(z)
            y = z
        for y in list(members):
            z = conjugate_by_simple(y, delta)
            if z not in members:
                members[z] = (y, delta)
                orbit.append(z)
        self.data.work.elements += len(orbit)
        self.queue.extend(orbit)

    @property
    def done(self) -> bool:
        return not self.queue

    def expand(self):
        """Expand the next queued member; yields each newly found conjugate."""
        members = self.data.sss
        y = self.queue.popleft()
        for s, z in _neighbours(y, self.method):
            if (z.inf, z.sup) != self.key or z in members:
                continue
            members[z] = (y, s)
            self.data.work.elements += 1
            self.queue.append(z)
            yield z


def _enumerate(data: SummitData, cap: int, method: str, target) -> SummitData:
    walk = _Walk(data, method)
    if data.work.capped:
        data.truncated = True
        return data
    members = data.sss
    while not walk.done and target not in members:
        for z in walk.expand():
            if z == target:
                break
            if len(members) >= cap:
                data.truncated = True
                data.work.capped = True
                return data
    return data


# -- the decision procedure -------------------------------------------------


def _cycle_type(x: NormalForm) -> tuple[int, ...]:
    """Cycle lengths of the induced permutation, a conjugacy invariant."""
    p = g.identity(x.n) if x.inf % 2 == 0 else g.half_twist(x.n)
    for f in x.factors:
        p = g.compose(p, f)
    seen, lengths = set(), []
    for start in range(x.n):
        k, j = 0, start
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        if k:
            lengths.append(k)
    return tuple(sorted(lengths))


def is_conjugate(
    a: Element, b: Element, limits: ConjugacyLimits = ConjugacyLimits()
) -> ConjugacyDecision:
    """Decide whether b = c·a·c^{-1} for some braid c, with a witness when so."""
    _check_index(a.n, b.n)
    a = normal_form(a)
    b = normal_form(b)
    if a == b:
        return ConjugacyDecision(Verdict.CONJUGATE, BraidWord(a.n))
    if a.exponent_sum() != b.exponent_sum() or _cycle_type(a) != _cycle_type(b):
        return ConjugacyDecision(Verdict.NOT_CONJUGATE)

    sa = summit_representative(a, limits)
    sb = summit_representative(b, limits)
    work = WorkCounters()
    work.add(sa.work)
    work.add(sb.work)
    if work.capped:
        # (inf, sup) are only invariants once both summits are reached
        return ConjugacyDecision(Verdict.INCONCLUSIVE, work=work)
    ra, rb = sa.representative, sb.representative
    if (ra.inf, ra.sup) != (rb.inf, rb.sup):
        return ConjugacyDecision(Verdict.NOT_CONJUGATE, work=work)
    walks = (_Walk(sa, "minimal"), _Walk(sb, "minimal"))
    common = next((z for z in sa.sss if z in sb.sss), None)
    while common is None:
        # grow the smaller set; a completed set without a common member decides
        live = [w for w in walks if not w.done]
        if len(live) < 2:
            work.elements = len(sa.sss) + len(sb.sss)
            return ConjugacyDecision(Verdict.NOT_CONJUGATE, work=work)
        walk = min(live, key=lambda w: len(w.data.sss))
        other = walks[1] if walk is walks[0] else walks[0]
        for z in walk.expand():
            if z in other.data.sss:
                common = z
                break
        if common is None and len(sa.sss) + len(sb.sss) >= limits.sss_cap:
            work.elements = len(sa.sss) + len(sb.sss)
            work.capped = True
            return ConjugacyDecision(Verdict.INCONCLUSIVE, work=work)
    work.elements = len(sa.sss) + len(sb.sss)

    # c_a·a·c_a^{-1} = z = c_b·b·c_b^{-1}  ⇒  b = (c_b^{-1}·c_a)·a·(c_b^{-1}·c_a)^{-1}
    c = nf_multiply(nf_inverse(sb.member_conjugator(common)), sa.member_conjugator(common))
    return ConjugacyDecision(Verdict.CONJUGATE, free_reduce(c.to_word()), work)


# -- brute force --------------------------------------------------------------


def _signed_generators(n: int, subgroup: Subgroup, params: Optional[GroupParams]):
    if subgroup is Subgroup.FULL:
        gens = tuple(range(1, n))
    else:
        if params is None:
            raise ValueError(f"{subgroup.value} subgroup needs GroupParams")
        if params.n != n:
            raise ValueError(f"params describe B_{params.n}, elements live in B_{n}")
        gens = params.generators(subgroup)
    return [s * i for i in gens for s in (1, -1)]


def brute_force_csp(
    x: Element,
    y: Element,
    subgroup: Subgroup = Subgroup.FULL,
    max_len: int = 6,
    params: Optional[GroupParams] = None,
    stats: Optional[WorkCounters] = None,
) -> Optional[BraidWord]:
    """Shortest word c over ``subgroup`` (length ≤ max_len) with c·x·c^{-1} = y.

    Exhaustive over all words up to ``max_len``, organised as a
    meet-in-the-middle search over conjugates: x and y are each conjugated
    by words of about half the length, and a common conjugate z with
    c_x·x·c_x^{-1} = z = c_y·y·c_y^{-1} yields c = c_y^{-1}·c_x. Words giving
    the same conjugate have identical subtrees, so each is expanded once.
    Returns None when nothing is found.
    """
    _check_index(x.n, y.n)
    n = x.n
    x = normal_form(x)
    y = normal_form(y)
    if x == y:
        return BraidWord(n)
    if x.exponent_sum() != y.exponent_sum():
        return None
    letters = _signed_generators(n, subgroup, params)
    gens = {
        v: (normal_form(BraidWord(n, (v,))), normal_form(BraidWord(n, (-v,)))) for v in letters
    }
    # node -> (parent, letter, depth) per side
    trees: tuple[dict, dict] = ({x: (None, 0, 0)}, {y: (None, 0, 0)})
    frontiers = [[x], [y]]
    depth = [0, 0]

    def path(tree, node) -> list[int]:
        # the last letter applied is outermost, so it comes first
        word = []
        while tree[node][0] is not None:
            node, v, _ = tree[node]
            word.append(v)
        return word

    while depth[0] + depth[1] < max_len:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        tree, other = trees[side], trees[1 - side]
        nxt, best = [], None
        for z in frontiers[side]:
            for v in letters:
                gv, gi = gens[v]
                w = nf_multiply(nf_multiply(gv, z), gi)
                if w in tree:
                    continue
                tree[w] = (z, v, depth[side] + 1)
                if stats is not None:
                    stats.elements += 1
                if w in other and (best is None or other[w][2] < other[best][2]):
                    best = w
                nxt.append(w)
        depth[side] += 1
        frontiers[side] = nxt
        if best is not None:
            cx, cy = path(trees[0], best), path(trees[1], best)
            word = tuple(-v for v in reversed(cy)) + tuple(cx)
            return free_reduce(BraidWord(n, word))
        if not nxt:
            return None
    return None
