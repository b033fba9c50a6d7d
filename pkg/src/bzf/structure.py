"""Natural partial order and Green's relations, with the band viewed as a strip.

Idempotents are ``(i, i, [p))``.  Under the strip coordinates
``(a, b) = (-i, -i - p)`` the natural order on the band becomes the
componentwise order on the diagonal strip ``0 <= a - b <= k``, which is what
the Hasse-diagram code and the reconstruction search work in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

import numpy as np

from .core import BZFError, Element, FamilySpec, inv, mul, window_layers


class NotIdempotent(BZFError, ValueError):
    pass


class NotDRelated(BZFError, ValueError):
    pass


GREEN_TAGS = ("L", "R", "H", "D")


class StripPoint(NamedTuple):
    a: int
    b: int


def _require_idempotent(*es: Element) -> None:
    for e in es:
        if e.i != e.j:
            raise NotIdempotent(f"{e} is not an idempotent")


def nat_leq(s: Element, t: Element, fam: Optional[FamilySpec] = None) -> bool:
    """``s <= t`` in the natural partial order, decided as ``s == t * (s^-1 s)``."""
    return s == mul(t, mul(inv(s), s, fam), fam)


def nat_leq_idem_formula(e: Element, f: Element) -> bool:
    _require_idempotent(e, f)
    # e = (m,m,[x)), f = (i,i,[p)): m >= i and [x) inside i - m + [p)
    return e.i >= f.i and e.p >= f.i - e.i + f.p


def green_related(rel: str, s: Element, t: Element) -> bool:
    if rel == "L":
        return s.j == t.j and s.p == t.p
    if rel == "R":
        return s.i == t.i and s.p == t.p
    if rel == "H":
        return s == t
    if rel == "D":
        return s.p == t.p
    raise ValueError(f"unknown Green relation {rel!r}; expected one of {GREEN_TAGS}")


def d_witness(s: Element, t: Element) -> Element:
    """Return ``u`` with ``s L u R t``."""
    if s.p != t.p:
        raise NotDRelated(f"{s} and {t} lie in different D-classes")
    return Element(t.i, s.j, s.p)


def is_order_convex(
    X: Iterable[Element], W: int, pcap: int, fam: FamilySpec
) -> Union[bool, tuple[Element, Element, Element]]:
    """True, or the first triple ``(x, z, y)`` with ``x < z < y``, ``x, y`` in X and z not."""
    members = sorted(set(X))
    _require_idempotent(*members)
    inside = set(members)
    window = [
        Element(i, i, p) for i in range(-W, W + 1) for p in window_layers(pcap, fam)
    ]
    for x in members:
        for y in members:
            if x == y or not nat_leq_idem_formula(x, y):
                continue
            for z in window:
                if z in inside or z == x or z == y:
                    continue
                if nat_leq_idem_formula(x, z) and nat_leq_idem_formula(z, y):
                    return (x, z, y)
    return True


def strip_coords(e: Element) -> StripPoint:
    _require_idempotent(e)
    return StripPoint(-e.i, -e.i - e.p)


def from_strip(pt: tuple[int, int]) -> Element:
    a, b = pt
    if b > a:
        raise ValueError(f"({a}, {b}) is not a strip point (need b <= a)")
    return Element(-a, -a, a - b)


def strip_leq(x: tuple[int, int], y: tuple[int, int]) -> bool:
    return x[0] <= y[0] and x[1] <= y[1]


def interval_size(x: tuple[int, int], y: tuple[int, int], k: Optional[int]) -> int:
    """Number of band idempotents ``z`` with ``x <= z <= y`` (strip coordinates, whole band)."""
    (ax, bx), (ay, by) = x, y
    if ax > ay or bx > by:
        return 0
    total = 0
    for a in range(ax, ay + 1):
        lo = bx if k is None else max(bx, a - k)
        hi = min(by, a)
        if hi >= lo:
            total += hi - lo + 1
    return total


def idempotent_window(
    pcap: int, fam: FamilySpec, imin: int, imax: int
) -> list[Element]:
    return [Element(i, i, p) for i in range(imin, imax + 1) for p in window_layers(pcap, fam)]


def hasse_edges(
    W: int,
    pcap: int,
    fam: FamilySpec,
    imin: Optional[int] = None,
    imax: Optional[int] = None,
) -> list[tuple[Element, Element]]:
    """Covering pairs ``(e, f)``, ``e`` covered by ``f``, of the window's idempotent poset.

    The index range defaults to ``-W..W``.  Covers are relative to the window.
    """
    lo = -W if imin is None else imin
    hi = W if imax is None else imax
    nodes = idempotent_window(pcap, fam, lo, hi)
    n = len(nodes)
    less = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            if x != y and nat_leq_idem_formula(nodes[x], nodes[y]):
                less[x, y] = 1
    # x < y is a cover iff no z has x < z < y
    cover = (less == 1) & ((less @ less) == 0)
    return [(nodes[x], nodes[y]) for x, y in zip(*np.nonzero(cover))]


def true_cover(e: Element, f: Element, fam: FamilySpec) -> bool:
    """Whether ``e`` is covered by ``f`` in the whole band, not just a window."""
    return interval_size(strip_coords(e), strip_coords(f), fam.k) == 2


def _node_id(e: Element) -> str:
    return f'"{e.i}:{e.p}"'


def to_dot(edges: list[tuple[Element, Element]], nodes: Iterable[Element], name: str = "band") -> str:
    lines = [f"digraph {name} {{"]
    for e in sorted(nodes, key=lambda e: (e.i, e.p)):
        lines.append(f'  {_node_id(e)} [label="{e}"];')
    for e, f in sorted(edges, key=lambda ef: ((ef[0].i, ef[0].p), (ef[1].i, ef[1].p))):
        lines.append(f"  {_node_id(e)} -> {_node_id(f)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HasseDiagram:
    nodes: list[Element]
    edges: list[tuple[Element, Element]]
    boundary_covers: list[tuple[Element, Element]]

    def dot(self) -> str:
        return to_dot(self.edges, self.nodes)


def hasse_diagram(
    W: int,
    pcap: int,
    fam: FamilySpec,
    imin: Optional[int] = None,
    imax: Optional[int] = None,
) -> HasseDiagram:
    lo = -W if imin is None else imin
    hi = W if imax is None else imax
    edges = hasse_edges(W, pcap, fam, lo, hi)
    spurious = [(e, f) for e, f in edges if not true_cover(e, f, fam)]
    return HasseDiagram(idempotent_window(pcap, fam, lo, hi), edges, spurious)
