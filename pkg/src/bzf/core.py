"""Families of tail sets and exact element arithmetic of B_Z^F.

A nonempty inductive subset of omega is a tail ``[p) = {x >= p}``, so it is
stored by its minimum ``p`` alone and all set algebra reduces to ``max`` and
integer shifts on minima.  Families are canonicalized on input so that
``[0)`` is always a member; the removed offset is kept for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class BZFError(Exception):
    """Base class of all errors raised by this package."""


class ArithmeticOverflow(BZFError, OverflowError):
    """An index computation left the signed 64-bit range."""


class FamilyError(BZFError, ValueError):
    pass


class EmptyFamily(FamilyError):
    pass


class DuplicateMember(FamilyError):
    pass


class NotOmegaClosed(FamilyError):
    """Raised with a concrete witness ``[a) & (-n + [b)) = [g)`` missing from the family."""

    def __init__(self, f1: int, f2: int, n: int, missing: int):
        self.f1, self.f2, self.n, self.missing = f1, f2, n, missing
        super().__init__(
            f"family is not omega-closed: [{f1}) & (-{n}+[{f2})) = [{missing}) is not a member"
        )


class InvalidElement(BZFError, ValueError):
    pass


def checked(x: int) -> int:
    if x < INT_MIN or x > INT_MAX:
        raise ArithmeticOverflow(f"index {x} outside the signed 64-bit range")
    return x


@dataclass(frozen=True)
class FamilySpec:
    """Canonical family ``{[0), ..., [k)}``, or ``{[n): n in omega}`` when ``k is None``."""

    k: Optional[int]
    offset: int = 0

    def __post_init__(self):
        if self.k is not None and self.k < 0:
            raise FamilyError("k must be nonnegative")
        if self.offset < 0:
            raise FamilyError("offset must be nonnegative")

    @classmethod
    def finite(cls, k: int, offset: int = 0) -> "FamilySpec":
        return cls(k, offset)

    @classmethod
    def infinite(cls, offset: int = 0) -> "FamilySpec":
        return cls(None, offset)

    @property
    def is_finite(self) -> bool:
        return self.k is not None

    def layer_bound(self, pcap: int) -> int:
        """Largest layer index available in a window capped at ``pcap``."""
        return pcap if self.k is None else min(self.k, pcap)

    def contains(self, p: int) -> bool:
        return p >= 0 and (self.k is None or p <= self.k)

    def to_json(self) -> dict:
        return {"k": "inf" if self.k is None else self.k, "offset": self.offset}

    def __str__(self) -> str:
        body = "inf" if self.k is None else str(self.k)
        return body if not self.offset else f"{body} (offset {self.offset})"


@dataclass(frozen=True)
class InfiniteFrom:
    """Raw token for the infinite family ``{[n), [n+1), ...}``."""

    n: int


RawFamily = Union[Iterable[int], InfiniteFrom]


def validate_family(raw: RawFamily) -> FamilySpec:
    """Check omega-closure of a family of tails given by minima and normalize it.

    The minima of an omega-closed family of tails form a contiguous interval,
    and every contiguous interval is omega-closed since
    ``[a) & (-n + [b)) = [max(a, b - n))``.
    """
    if isinstance(raw, InfiniteFrom):
        if raw.n < 0:
            raise FamilyError("minima must be nonnegative")
        return FamilySpec(None, raw.n)
    mins = list(raw)
    if not mins:
        raise EmptyFamily("the family must be nonempty")
    if any(m < 0 for m in mins):
        raise FamilyError("minima must be nonnegative")
    if len(set(mins)) != len(mins):
        raise DuplicateMember("duplicate members in family")
    members = set(mins)
    lo, hi = min(members), max(members)
    for gap in range(lo + 1, hi):
        if gap not in members:
            above = min(m for m in members if m > gap)
            raise NotOmegaClosed(lo, above, above - gap, gap)
    return FamilySpec(hi - lo, lo)


@dataclass(frozen=True, order=True)
class Element:
    """The triple ``(i, j, [p))``; ordering is lexicographic in ``(i, j, p)``."""

    i: int
    j: int
    p: int

    def __post_init__(self):
        if self.p < 0:
            raise InvalidElement("p must be nonnegative")
        checked(self.i)
        checked(self.j)
        checked(self.p)

    def __str__(self) -> str:
        return f"({self.i},{self.j},[{self.p}))"

    def __iter__(self) -> Iterator[int]:
        yield self.i
        yield self.j
        yield self.p

    @property
    def is_idempotent(self) -> bool:
        return self.i == self.j


def check_element(a: Element, fam: FamilySpec) -> None:
    if not fam.contains(a.p):
        raise InvalidElement(f"{a} has [{a.p}) outside the family {fam}")


def mul(a: Element, b: Element, fam: Optional[FamilySpec] = None) -> Element:
    if fam is not None:
        check_element(a, fam)
        check_element(b, fam)
    if a.j <= b.i:
        d = checked(b.i - a.j)
        return Element(checked(a.i + d), b.j, max(checked(a.p - d), b.p))
    d = checked(a.j - b.i)
    return Element(a.i, checked(d + b.j), max(a.p, checked(b.p - d)))


def inv(a: Element) -> Element:
    return Element(a.j, a.i, a.p)


def is_idempotent(a: Element, fam: Optional[FamilySpec] = None) -> bool:
    if fam is not None:
        check_element(a, fam)
    return a.i == a.j


def window_layers(pcap: int, fam: FamilySpec) -> range:
    return range(fam.layer_bound(pcap) + 1)


def enumerate_window(
    W: int, pcap: int, fam: FamilySpec, idempotents_only: bool = False
) -> list[Element]:
    if W < 0 or pcap < 0:
        raise ValueError("window bounds must be nonnegative")
    layers = window_layers(pcap, fam)
    idx = range(-W, W + 1)
    if idempotents_only:
        return [Element(i, i, p) for i in idx for p in layers]
    return [Element(i, j, p) for i in idx for j in idx for p in layers]


def corner_embed(k0: int, i: int, j: int, p: int) -> Element:
    """Map ``(i, j, [p))`` of B_omega^F onto the corner ``{(i, j, [p)): i, j >= k0}``."""
    if i < 0 or j < 0:
        raise InvalidElement("corner_embed takes operands of B_omega^F (i, j >= 0)")
    return Element(checked(i + k0), checked(j + k0), p)


def bz_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, int]:
    """Product in the extended bicyclic semigroup on Z x Z."""
    i1, j1 = a
    i2, j2 = b
    if j1 <= i2:
        return checked(i1 - j1 + i2), j2
    return i1, checked(j1 - i2 + j2)


def layer_embed(i: int, j: int, p: int) -> Element:
    return Element(i, j, p)
