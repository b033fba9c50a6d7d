"""Independent set-based semantics and the exhaustive window check suites.

``eval_setbased`` evaluates the multiplication with explicit finite sets and
elementwise shifts, never touching the min/max shortcuts used by
:func:`bzf.core.mul`.  Every closed form in the package is checked against
this oracle or against a definitional computation through ``mul``/``inv``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import kernels
from .aut import (
    Automorphism,
    apply_aut,
    compose_aut,
    flip_then,
    h,
    invert_aut,
    verify_aut_window,
)
from .core import (
    BZFError,
    Element,
    FamilySpec,
    bz_mul,
    corner_embed,
    enumerate_window,
    inv,
    layer_embed,
    mul,
    window_layers,
)
from .report import CheckReport
from .structure import (
    d_witness,
    green_related,
    is_order_convex,
    nat_leq,
    nat_leq_idem_formula,
    strip_coords,
    strip_leq,
)


class TruncationTooSmall(BZFError, ValueError):
    pass


class UnknownCheck(BZFError, KeyError):
    pass


@dataclass(frozen=True)
class TruncatedSet:
    """``members`` together with every integer ``>= truncation``."""

    members: frozenset
    truncation: int

    @classmethod
    def tail(cls, p: int, N: int) -> "TruncatedSet":
        if p >= N:
            raise TruncationTooSmall(f"[{p}) cannot be represented below truncation {N}")
        return cls(frozenset(range(p, N)), N)

    @classmethod
    def omega(cls, N: int) -> "TruncatedSet":
        return cls.tail(0, N)

    def __contains__(self, x: int) -> bool:
        return x in self.members or x >= self.truncation

    def shift(self, d: int) -> "TruncatedSet":
        return TruncatedSet(frozenset(x + d for x in self.members), self.truncation + d)

    def intersect(self, other: "TruncatedSet") -> "TruncatedSet":
        N = max(self.truncation, other.truncation)
        lo = min(self.truncation, other.truncation)
        candidates = set(self.members) | set(other.members) | set(range(lo, N))
        return TruncatedSet(
            frozenset(x for x in candidates if x < N and x in self and x in other), N
        )

    def minimum(self) -> int:
        return min(self.members) if self.members else self.truncation


def default_truncation(W: int, pcap: int, fam: FamilySpec) -> int:
    k = fam.layer_bound(pcap)
    return max(4 * (W + pcap + k + 1), W + pcap + 2 * (2 * W + 1))


def eval_setbased(a: Element, b: Element, N: int) -> Element:
    """Evaluate the product literally with explicit sets truncated at ``N``."""
    if N <= abs(a.j - b.i) + max(a.p, b.p) + 1:
        raise TruncationTooSmall(f"truncation {N} too small for {a} * {b}")
    F1 = TruncatedSet.tail(a.p, N)
    F2 = TruncatedSet.tail(b.p, N)
    omega = TruncatedSet.omega(N)
    if a.j <= b.i:
        F = F1.shift(a.j - b.i).intersect(F2).intersect(omega)
        return Element(a.i - a.j + b.i, b.j, F.minimum())
    F = F1.intersect(F2.shift(b.i - a.j)).intersect(omega)
    return Element(a.i, a.j - b.i + b.j, F.minimum())


def _fail(name: str, tested: int, **ce) -> CheckReport:
    return CheckReport(name, tested, False, {k: str(v) if isinstance(v, Element) else v for k, v in ce.items()})


def _skip(name: str, note: str) -> CheckReport:
    return CheckReport(name, 0, True, skipped=True, note=note)


def check_assoc(W, pcap, fam):
    window = enumerate_window(W, pcap, fam)
    n = len(window)
    fail = kernels.assoc_scan(kernels.as_array(window))
    if fail < 0:
        return CheckReport("assoc", n**3, True)
    a, b, c = window[fail // (n * n)], window[(fail // n) % n], window[fail % n]
    return _fail("assoc", fail + 1, a=a, b=b, c=c,
                 **{"(ab)c": str(mul(mul(a, b), c)), "a(bc)": str(mul(a, mul(b, c)))})


def check_oracle_equiv(W, pcap, fam):
    window = enumerate_window(W, pcap, fam)
    N = default_truncation(W, pcap, fam)
    tested = 0
    for a in window:
        for b in window:
            tested += 1
            x, y = mul(a, b), eval_setbased(a, b, N)
            if x != y:
                return _fail("oracle-equiv", tested, a=a, b=b, mul=x, setbased=y)
    return CheckReport("oracle-equiv", tested, True)


def check_inverse_axioms(W, pcap, fam):
    window = enumerate_window(W, pcap, fam)
    tested = 0
    for a in window:
        tested += 1
        ai = inv(a)
        if mul(mul(a, ai), a) != a or mul(mul(ai, a), ai) != ai or inv(ai) != a:
            return _fail("inverse-axioms", tested, a=a, inverse=ai)
    for a in window:
        for b in window:
            tested += 1
            if inv(mul(a, b)) != mul(inv(b), inv(a)):
                return _fail("inverse-axioms", tested, a=a, b=b, **{
                    "inv(ab)": str(inv(mul(a, b))), "inv(b)inv(a)": str(mul(inv(b), inv(a)))})
    return CheckReport("inverse-axioms", tested, True)


def check_idem_commute(W, pcap, fam):
    window = enumerate_window(W, pcap, fam)
    idem = [e for e in window if mul(e, e) == e]
    if idem != [e for e in window if e.i == e.j]:
        odd = next(e for e in window if (mul(e, e) == e) != (e.i == e.j))
        return _fail("idem-commute", 0, kind="idempotent closed form", a=odd)
    tested = 0
    for e in idem:
        for f in idem:
            tested += 1
            if mul(e, f) != mul(f, e):
                return _fail("idem-commute", tested, e=e, f=f, ef=mul(e, f), fe=mul(f, e))
    return CheckReport("idem-commute", tested, True)


def check_order_equiv(W, pcap, fam):
    name = "order-equiv"
    window = enumerate_window(W, pcap, fam)
    idem = [e for e in window if e.i == e.j]
    tested = 0
    for e in idem:
        for f in idem:
            tested += 1
            general = nat_leq(e, f)
            formula = nat_leq_idem_formula(e, f)
            definitional = mul(e, f) == e and mul(f, e) == e
            strip = strip_leq(strip_coords(e), strip_coords(f))
            if not (general == formula == definitional == strip):
                return _fail(name, tested, e=e, f=f, nat_leq=general, formula=formula,
                             definitional=definitional, strip=strip)
    # partial-order axioms of nat_leq on all elements
    n = len(window)
    leq = np.zeros((n, n), dtype=np.int64)
    for x, s in enumerate(window):
        for y, t in enumerate(window):
            leq[x, y] = nat_leq(s, t)
    tested += n * n
    for x in range(n):
        if not leq[x, x]:
            return _fail(name, tested, kind="reflexivity", s=window[x])
    both = np.argwhere((leq == 1) & (leq.T == 1))
    for x, y in both:
        if x != y:
            return _fail(name, tested, kind="antisymmetry", s=window[x], t=window[y])
    # transitivity: whenever x <= z <= y, x <= y
    bad = np.argwhere(((leq @ leq) > 0) & (leq == 0))
    tested += n**3
    if len(bad):
        x, y = bad[0]
        z = next(z for z in range(n) if leq[x, z] and leq[z, y])
        return _fail(name, tested, kind="transitivity", s=window[x], u=window[z], t=window[y])
    return CheckReport(name, tested, True)


def check_green_forms(W, pcap, fam):
    name = "green-forms"
    window = enumerate_window(W, pcap, fam)
    lkey = {s: mul(inv(s), s) for s in window}
    rkey = {s: mul(s, inv(s)) for s in window}
    by_keys = {(lkey[u], rkey[u]): u for u in window}
    tested = 0
    for s in window:
        for t in window:
            tested += 1
            L = lkey[s] == lkey[t]
            R = rkey[s] == rkey[t]
            D = (lkey[s], rkey[t]) in by_keys
            defin = {"L": L, "R": R, "H": L and R, "D": D}
            for rel in ("L", "R", "H", "D"):
                if green_related(rel, s, t) != defin[rel]:
                    return _fail(name, tested, rel=rel, s=s, t=t,
                                 closed_form=green_related(rel, s, t), definitional=defin[rel])
            if D:
                u = d_witness(s, t)
                if mul(inv(u), u) != lkey[s] or mul(u, inv(u)) != rkey[t]:
                    return _fail(name, tested, kind="d_witness", s=s, t=t, u=u)
            else:
                try:
                    u = d_witness(s, t)
                except BZFError:
                    pass
                else:
                    return _fail(name, tested, kind="d_witness on non-D pair", s=s, t=t, u=u)
    return CheckReport(name, tested, True)


def check_h_triviality(W, pcap, fam):
    window = enumerate_window(W, pcap, fam)
    lkey = {s: mul(inv(s), s) for s in window}
    rkey = {s: mul(s, inv(s)) for s in window}
    tested = 0
    for s in window:
        for t in window:
            tested += 1
            if s != t and lkey[s] == lkey[t] and rkey[s] == rkey[t]:
                return _fail("h-triviality", tested, s=s, t=t)
    return CheckReport("h-triviality", tested, True)


def check_layer_embed_hom(W, pcap, fam):
    pairs = [(i, j) for i in range(-W, W + 1) for j in range(-W, W + 1)]
    tested = 0
    for p in window_layers(pcap, fam):
        for x in pairs:
            for y in pairs:
                tested += 1
                lhs = layer_embed(*bz_mul(x, y), p)
                rhs = mul(layer_embed(*x, p), layer_embed(*y, p))
                if lhs != rhs:
                    return _fail("layer-embed-hom", tested, p=p, x=list(x), y=list(y), image_of_product=lhs, product_of_images=rhs)
    return CheckReport("layer-embed-hom", tested, True)


def check_corner_embed_hom(W, pcap, fam):
    omega_window = [(i, j, p) for i in range(W + 1) for j in range(W + 1) for p in window_layers(pcap, fam)]
    tested = 0
    for k0 in range(-W, W + 1):
        for x in omega_window:
            for y in omega_window:
                tested += 1
                prod = mul(Element(*x), Element(*y))
                if prod.i < 0 or prod.j < 0:
                    return _fail("corner-embed-hom", tested, kind="B_omega not closed", x=list(x), y=list(y))
                lhs = corner_embed(k0, prod.i, prod.j, prod.p)
                rhs = mul(corner_embed(k0, *x), corner_embed(k0, *y))
                if lhs != rhs or lhs.i < k0 or lhs.j < k0:
                    return _fail("corner-embed-hom", tested, k0=k0, x=list(x), y=list(y), image_of_product=lhs, product_of_images=rhs)
    return CheckReport("corner-embed-hom", tested, True)


def check_convex_chain(W, pcap, fam):
    top = fam.layer_bound(pcap)
    chain = [Element(0, 0, s) for s in range(top + 1)]
    tested = len(chain) ** 2
    for x in chain:
        for y in chain:
            if not (nat_leq_idem_formula(x, y) or nat_leq_idem_formula(y, x)):
                return _fail("convex-chain", tested, kind="not linearly ordered", x=x, y=y)
    res = is_order_convex(chain, W, pcap, fam)
    tested += len(chain) ** 2 * len(enumerate_window(W, pcap, fam, idempotents_only=True))
    if res is not True:
        x, z, y = res
        return _fail("convex-chain", tested, kind="convexity", x=x, z=z, y=y)
    return CheckReport("convex-chain", tested, True)


SHIFTS = range(-3, 4)


def check_aut_h(W, pcap, fam):
    tested = 0
    for s in SHIFTS:
        r = verify_aut_window(h(s), W, pcap, fam, name="aut-h")
        tested += r.tested
        if not r.passed:
            return CheckReport("aut-h", tested, False, {"automorphism": str(h(s)), **r.counterexample})
    return CheckReport("aut-h", tested, True)


def check_aut_flip(W, pcap, fam):
    if not fam.is_finite:
        return _skip("aut-flip", "the flip is defined only for finite families")
    r = verify_aut_window(flip_then(0), W, pcap, fam, name="aut-flip")
    if not r.passed:
        return CheckReport("aut-flip", r.tested, False, {"automorphism": "a*h:0", **r.counterexample})
    return r


def check_flip_identities(W, pcap, fam):
    name = "lemma-3-12"
    if not fam.is_finite:
        return _skip(name, "the flip is defined only for finite families")
    k = fam.k
    flip = flip_then(0)
    tested = 2
    if compose_aut(flip, flip, fam) != h(k):
        return _fail(name, tested, kind="a~ o a~ = h_k (canonical)", got=str(compose_aut(flip, flip, fam)))
    if invert_aut(flip, fam) != Automorphism(-k, True):
        return _fail(name, tested, kind="a~^-1 = h_-k o a~ (canonical)", got=str(invert_aut(flip, fam)))
    # h_{-k} o a~ means: a~ first, then the shift
    for e in enumerate_window(W, pcap, fam):
        tested += 1
        twice = apply_aut(flip, apply_aut(flip, e, fam), fam)
        if twice != apply_aut(h(k), e, fam):
            return _fail(name, tested, kind="a~ o a~ = h_k (pointwise)", e=e, got=twice)
        back = apply_aut(h(-k), apply_aut(flip, e, fam), fam)
        if apply_aut(flip, back, fam) != e or back != apply_aut(invert_aut(flip, fam), e, fam):
            return _fail(name, tested, kind="a~^-1 = h_-k o a~ (pointwise)", e=e, got=back)
    return CheckReport(name, tested, True)


def check_aut_layer_action(W, pcap, fam):
    name = "aut-layer-action"
    window = enumerate_window(W, pcap, fam)
    autos = [h(s) for s in SHIFTS]
    if fam.is_finite:
        autos += [flip_then(s) for s in SHIFTS]
    tested = 0
    for a in autos:
        for e in window:
            tested += 1
            img = apply_aut(a, e, fam)
            want = fam.k - e.p if a.flip else e.p
            if img.p != want:
                return _fail(name, tested, automorphism=str(a), e=e, image=img, expected_layer=want)
    note = "" if fam.is_finite else "flip part skipped for the infinite family"
    return CheckReport(name, tested, True, note=note)


CHECKS: dict[str, Callable[[int, int, FamilySpec], CheckReport]] = {
    "assoc": check_assoc,
    "oracle-equiv": check_oracle_equiv,
    "inverse-axioms": check_inverse_axioms,
    "idem-commute": check_idem_commute,
    "order-equiv": check_order_equiv,
    "green-forms": check_green_forms,
    "h-triviality": check_h_triviality,
    "layer-embed-hom": check_layer_embed_hom,
    "corner-embed-hom": check_corner_embed_hom,
    "convex-chain": check_convex_chain,
    "aut-h": check_aut_h,
    "aut-flip": check_aut_flip,
    "lemma-3-12": check_flip_identities,
    "aut-layer-action": check_aut_layer_action,
}


def run_check(name: str, W: int, pcap: int, fam: FamilySpec) -> CheckReport:
    try:
        fn = CHECKS[name]
    except KeyError:
        raise UnknownCheck(f"unknown check {name!r}; known: {', '.join(CHECKS)}") from None
    return fn(W, pcap, fam)


def run_all(W: int, pcap: int, fam: FamilySpec, names: Optional[list[str]] = None) -> list[CheckReport]:
    return [run_check(n, W, pcap, fam) for n in (names or CHECKS)]
