"""Finite-window model checker for automorphisms of the band.

An automorphism of B_Z^F restricts to an order automorphism of the band that
permutes layers (D-classes).  The search below enumerates injective maps
from a finite window of idempotents into a larger codomain window that

* preserve and reflect the natural order,
* send each layer into one layer, distinct layers to distinct layers,
* preserve meets (products of idempotents),
* preserve the size of every order interval ``[x, y]`` of the band.

The last clause is order-convexity made finite: an order automorphism maps
the interval ``[x, y]`` onto ``[phi(x), phi(y)]``.  Without it, order
embeddings of chains could stretch at window scale.  Survivors are matched
against the canonical automorphisms ``h_s`` and ``a~ o h_s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .aut import Automorphism, WindowTooSmall, apply_aut, verify_aut_window
from .core import Element, FamilySpec
from .report import CheckReport
from .structure import NotIdempotent, from_strip, strip_coords


@dataclass(frozen=True)
class BandWindow:
    W: int
    pcap: int
    margin: int
    fam: FamilySpec

    def __post_init__(self):
        if self.W < 1:
            raise WindowTooSmall("the inner window needs W >= 1")
        if self.margin < 1:
            raise WindowTooSmall("the codomain needs margin >= 1")
        if self.pcap < 0:
            raise WindowTooSmall("pcap must be nonnegative")

    @property
    def inner_top(self) -> int:
        return self.fam.layer_bound(self.pcap)

    @property
    def codomain_top(self) -> int:
        return self.fam.layer_bound(self.pcap + self.margin)

    @property
    def codomain_bound(self) -> int:
        # room for a~ o h_s, which moves layer p by p extra steps
        slack = self.inner_top if (self.fam.is_finite and self.fam.k) else 0
        return self.W + self.margin + slack

    def inner(self) -> list[Element]:
        return [Element(i, i, p) for i in range(-self.W, self.W + 1) for p in range(self.inner_top + 1)]

    def codomain(self) -> list[Element]:
        B = self.codomain_bound
        return [Element(i, i, p) for i in range(-B, B + 1) for p in range(self.codomain_top + 1)]


@lru_cache(maxsize=None)
def _interval_size(layer: int, da: int, db: int, k: Optional[int]) -> int:
    # strip interval from (0, -layer) to (da, db - layer), whole band
    if da < 0 or db < 0:
        return 0
    bx, by = -layer, db - layer
    total = 0
    for a in range(0, da + 1):
        lo = bx if k is None else max(bx, a - k)
        hi = min(by, a)
        if hi >= lo:
            total += hi - lo + 1
    return total


def _isize(x: tuple[int, int], y: tuple[int, int], k: Optional[int]) -> int:
    return _interval_size(x[0] - x[1], y[0] - x[0], y[1] - x[1], k)


def _le(x, y) -> bool:
    return x[0] <= y[0] and x[1] <= y[1]


def _meet(x, y):
    return (min(x[0], y[0]), min(x[1], y[1]))


@dataclass
class SearchResult:
    survivors: list[dict]
    classified: list[Optional[Automorphism]]
    explored: int
    witness: Optional[dict] = None

    @property
    def unclassified(self) -> list[dict]:
        return [m for m, c in zip(self.survivors, self.classified) if c is None]

    @property
    def automorphisms(self) -> list[Automorphism]:
        return [c for c in self.classified if c is not None]


@dataclass
class ExtensionResult:
    outcome: str  # "none" or "classified"
    autos: list[Automorphism] = field(default_factory=list)
    witness: Optional[dict] = None
    explored: int = 0
    unclassified: int = 0

    def to_json(self) -> dict:
        out = {"outcome": self.outcome}
        if self.outcome == "none":
            out["witness"] = self.witness
        else:
            out["autos"] = [str(a) for a in self.autos]
            out["unclassified"] = self.unclassified
        out["explored"] = self.explored
        return out


class _Search:
    def __init__(self, win: BandWindow, seed: Optional[Element] = None):
        self.win = win
        self.k = win.fam.k
        inner = win.inner()
        # the rigid spine (0,0,[0)), (0,0,[1)), ... is assigned first
        inner.sort(key=lambda e: (abs(e.i), e.p, e.i))
        self.vars = inner
        self.vpt = [strip_coords(e) for e in inner]
        self.vlayer = [e.p for e in inner]
        self.vindex = {pt: n for n, pt in enumerate(self.vpt)}
        self.cod = win.codomain()
        self.cpt = [strip_coords(e) for e in self.cod]
        self.clayer = [e.p for e in self.cod]
        self.seed = None if seed is None else strip_coords(seed)
        n = len(inner)
        # meets of earlier pairs landing on a later variable
        self.meet_of = [[None] * n for _ in range(n)]
        self.meet_pairs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u in range(n):
            for w in range(u):
                m = self.vindex[_meet(self.vpt[u], self.vpt[w])]
                self.meet_of[u][w] = self.meet_of[w][u] = m
                if m != u and m != w:
                    self.meet_pairs[m].append((u, w))
        self.phi: list[Optional[tuple[int, int]]] = [None] * n
        self.used: set = set()
        self.layer_map: dict[int, int] = {}
        self.layer_used: dict[int, int] = {}
        self.explored = 0
        self.survivors: list[list[tuple[int, int]]] = []
        self.witness: Optional[dict] = None

    def violation(self, v: int, c: tuple[int, int], clayer: int) -> Optional[dict]:
        """First clause that assigning ``phi(v) = c`` breaks, or None."""
        vpt, vl = self.vpt[v], self.vlayer[v]
        if c in self.used:
            return {"kind": "injectivity"}
        want = self.layer_map.get(vl)
        if want is not None and want != clayer:
            return {"kind": "layer", "reason": f"layer {vl} is already mapped to layer {want}"}
        if want is None and clayer in self.layer_used:
            return {"kind": "layer", "reason": f"layer {clayer} already receives layer {self.layer_used[clayer]}"}
        for u in range(v):
            cu = self.phi[u]
            upt = self.vpt[u]
            if _le(vpt, upt) != _le(c, cu) or _le(upt, vpt) != _le(cu, c):
                return {"kind": "order", "other": u}
        for u in range(v):
            cu = self.phi[u]
            upt = self.vpt[u]
            if _le(vpt, upt):
                lo, hi, clo, chi = vpt, upt, c, cu
            elif _le(upt, vpt):
                lo, hi, clo, chi = upt, vpt, cu, c
            else:
                continue
            if _isize(lo, hi, self.k) != _isize(clo, chi, self.k):
                return {"kind": "convexity", "other": u, "lo": lo, "hi": hi, "image_lo": clo, "image_hi": chi}
        for u in range(v):
            m = self.meet_of[v][u]
            if m < v and m != u and self.phi[m] != _meet(c, self.phi[u]):
                return {"kind": "meet", "other": u, "meet": m}
        for u, w in self.meet_pairs[v]:
            if u < v and w < v and c != _meet(self.phi[u], self.phi[w]):
                return {"kind": "meet", "other": u, "other2": w}
        return None

    def candidates(self, v: int):
        for c, cl in zip(self.cpt, self.clayer):
            if v == 0 and self.seed is not None and c != self.seed:
                continue
            yield c, cl

    def run(self) -> None:
        self._extend(0)

    def _extend(self, v: int) -> None:
        if v == len(self.vars):
            self.survivors.append(list(self.phi))
            return
        vl = self.vlayer[v]
        found = False
        for c, cl in self.candidates(v):
            if self.violation(v, c, cl) is not None:
                continue
            found = True
            self.explored += 1
            self.phi[v] = c
            self.used.add(c)
            new_layer = vl not in self.layer_map
            if new_layer:
                self.layer_map[vl] = cl
                self.layer_used[cl] = vl
            self._extend(v + 1)
            if new_layer:
                del self.layer_map[vl]
                del self.layer_used[cl]
            self.used.discard(c)
            self.phi[v] = None
        if not found and self.witness is None:
            self.witness = self._dead_end(v)

    def _dead_end(self, v: int) -> dict:
        rank = {"injectivity": 0, "layer": 1, "order": 2, "convexity": 3, "meet": 4}
        best, best_key = None, None
        for c, cl in self.candidates(v):
            why = self.violation(v, c, cl)
            gap = 0
            if why["kind"] == "convexity":
                gap = abs(_isize(why["lo"], why["hi"], self.k) - _isize(why["image_lo"], why["image_hi"], self.k))
            key = (rank[why["kind"]], -gap)
            if best_key is None or key > best_key:
                best, best_key = (c, why), key
        trace = [[str(self.vars[u]), str(from_strip(self.phi[u]))] for u in range(v)]
        out = {"trace": trace, "variable": str(self.vars[v])}
        if best is None:
            out["clause"] = {"kind": "empty-domain", "reason": "no codomain idempotent is admissible"}
            return out
        c, why = best
        out["clause"] = self._describe(v, c, why)
        return out

    def _describe(self, v: int, c, why: dict) -> dict:
        cand = str(from_strip(c))
        kind = why["kind"]
        if kind == "convexity":
            lo, hi, clo, chi = why["lo"], why["hi"], why["image_lo"], why["image_hi"]
            n_in, n_out = _isize(lo, hi, self.k), _isize(clo, chi, self.k)
            clause = {
                "kind": "convexity",
                "candidate": cand,
                "x": str(from_strip(lo)), "y": str(from_strip(hi)),
                "image_x": str(from_strip(clo)), "image_y": str(from_strip(chi)),
                "interval_size": n_in, "image_interval_size": n_out,
            }
            if n_out > n_in:
                images = {self.phi[u] for u in range(v) if self.phi[u] is not None and _le(lo, self.vpt[u]) and _le(self.vpt[u], hi)}
                images |= {clo, chi}
                z = next((pt for pt in _between(clo, chi, self.k) if pt not in images), None)
                if z is not None:
                    clause["z"] = str(from_strip(z))
                    clause["reason"] = "the image of an order-convex interval would miss z"
            else:
                clause["reason"] = "the image interval is too small to hold the interval injectively"
            return clause
        out = {"kind": kind, "candidate": cand}
        if "reason" in why:
            out["reason"] = why["reason"]
        for key in ("other", "other2", "meet"):
            if key in why:
                out[key] = str(self.vars[why[key]])
        return out


def _between(x, y, k):
    for a in range(x[0], y[0] + 1):
        for b in range(x[1], y[1] + 1):
            if b <= a and (k is None or a - b <= k) and (a, b) != x and (a, b) != y:
                yield (a, b)


def classify_map(phi: dict, win: BandWindow) -> Optional[Automorphism]:
    """The canonical automorphism whose restriction equals ``phi``, if any."""
    image = phi[Element(0, 0, 0)]
    s, q = image.i, image.p
    if q == 0:
        cand = Automorphism(s, False)
    elif win.fam.is_finite and q == win.fam.k:
        cand = Automorphism(s, True)
    else:
        return None
    if all(apply_aut(cand, e, win.fam) == img for e, img in phi.items()):
        return cand
    return None


def _search(win: BandWindow, seed: Optional[Element]) -> SearchResult:
    s = _Search(win, seed)
    s.run()
    maps = [{s.vars[n]: from_strip(pt) for n, pt in enumerate(phi)} for phi in s.survivors]
    maps = [dict(sorted(m.items())) for m in maps]
    classified = [classify_map(m, win) for m in maps]
    order = sorted(range(len(maps)), key=lambda n: (classified[n] is None, classified[n] or Automorphism(), n))
    return SearchResult([maps[n] for n in order], [classified[n] for n in order], s.explored, s.witness)


def enumerate_band_autos(win: BandWindow) -> SearchResult:
    return _search(win, None)


def extend_from_seed(e0: Element, win: BandWindow) -> ExtensionResult:
    if e0.i != e0.j:
        raise NotIdempotent(f"seed {e0} is not an idempotent")
    if abs(e0.i) > win.codomain_bound or e0.p > win.codomain_top:
        raise WindowTooSmall(f"seed {e0} lies outside the codomain window")
    res = _search(win, e0)
    if not res.survivors:
        return ExtensionResult("none", witness=res.witness, explored=res.explored)
    return ExtensionResult(
        "classified",
        autos=sorted(set(res.automorphisms)),
        explored=res.explored,
        unclassified=len(res.unclassified),
    )


def rigidity_check(win: BandWindow) -> CheckReport:
    res = extend_from_seed(Element(0, 0, 0), win)
    ok = res.outcome == "classified" and res.autos == [Automorphism(0, False)] and res.unclassified == 0
    note = f"explored {res.explored} partial maps"
    if ok:
        return CheckReport("rigidity", res.explored, True, note=note)
    return CheckReport("rigidity", res.explored, False, res.to_json(), note=note)


def soundness_check(res: SearchResult, win: BandWindow) -> CheckReport:
    """Every classified survivor must be a genuine automorphism on the inner window."""
    tested = 0
    for a in sorted(set(res.automorphisms)):
        r = verify_aut_window(a, win.W, win.inner_top, win.fam, name="soundness")
        tested += r.tested
        if not r.passed:
            return CheckReport("soundness", tested, False, {"automorphism": str(a), **r.counterexample})
    return CheckReport("soundness", tested, True)
