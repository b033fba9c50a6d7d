"""Command-line front end.

Single elements and booleans are printed as plain text, everything with
structure as JSON (or DOT for ``hasse``).  Exit status is 0 on success,
1 when a property fails (or no extension exists under
``--assert-extension``) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .aut import Automorphism, apply_aut, classify_group, compose_aut
from .core import BZFError, Element, FamilySpec, InfiniteFrom, check_element, inv, mul, validate_family
from .oracle import CHECKS, run_all
from .reconstruct import BandWindow, extend_from_seed
from .structure import GREEN_TAGS, green_related, hasse_diagram, nat_leq


class ParseError(BZFError, ValueError):
    """Malformed literal; ``position`` is the 0-based offset of the problem."""

    def __init__(self, text: str, position: int, expected: str):
        self.text, self.position, self.expected = text, position, expected
        super().__init__(f"cannot parse {text!r} at position {position}: expected {expected}")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def lit(self, ch: str) -> None:
        self.ws()
        if not self.text.startswith(ch, self.pos):
            raise ParseError(self.text, self.pos, repr(ch))
        self.pos += len(ch)

    def peek(self, ch: str) -> bool:
        self.ws()
        return self.text.startswith(ch, self.pos)

    def integer(self, signed: bool = True) -> int:
        self.ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ParseError(self.text, digits, "an integer" if signed else "a nonnegative integer")
        return int(self.text[start:self.pos])

    def end(self) -> None:
        self.ws()
        if self.pos != len(self.text):
            raise ParseError(self.text, self.pos, "end of input")


def parse_element(text: str) -> Element:
    """Read ``(i,j,[p))`` or the compact ``i,j,p``."""
    s = _Scanner(text)
    if s.peek("("):
        s.lit("(")
        i = s.integer()
        s.lit(",")
        j = s.integer()
        s.lit(",")
        s.lit("[")
        p = s.integer(signed=False)
        s.lit(")")
        s.lit(")")
    else:
        i = s.integer()
        s.lit(",")
        j = s.integer()
        s.lit(",")
        p = s.integer(signed=False)
    s.end()
    return Element(i, j, p)


def format_element(e: Element) -> str:
    return str(e)


def parse_family(text: str) -> FamilySpec:
    """``k``, ``inf``, ``inf:n`` or an explicit list of minima ``{a,b,...}``."""
    t = text.strip()
    if t == "inf":
        return validate_family(InfiniteFrom(0))
    if t.startswith("inf:"):
        s = _Scanner(t)
        s.pos = 4
        n = s.integer(signed=False)
        s.end()
        return validate_family(InfiniteFrom(n))
    if t.startswith("{"):
        s = _Scanner(t)
        s.lit("{")
        mins = []
        if not s.peek("}"):
            mins.append(s.integer(signed=False))
            while s.peek(","):
                s.lit(",")
                mins.append(s.integer(signed=False))
        s.lit("}")
        s.end()
        return validate_family(mins)
    s = _Scanner(t)
    k = s.integer(signed=False)
    s.end()
    return validate_family(range(k + 1))


def _element_arg(text: str) -> Element:
    try:
        return parse_element(text)
    except BZFError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _aut_arg(text: str) -> Automorphism:
    try:
        return Automorphism.parse(text)
    except BZFError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _pcap(args, fam: FamilySpec) -> int:
    if args.pcap is not None:
        return args.pcap
    return 4 if fam.k is None else min(fam.k, 4)


def _fam_and_elements(args, *elements: Element) -> FamilySpec:
    fam = parse_family(args.family)
    for e in elements:
        check_element(e, fam)
    return fam


def cmd_mul(args, out) -> int:
    fam = _fam_and_elements(args, args.a, args.b)
    print(format_element(mul(args.a, args.b, fam)), file=out)
    return 0


def cmd_inv(args, out) -> int:
    _fam_and_elements(args, args.a)
    print(format_element(inv(args.a)), file=out)
    return 0


def cmd_leq(args, out) -> int:
    fam = _fam_and_elements(args, args.a, args.b)
    print("true" if nat_leq(args.a, args.b, fam) else "false", file=out)
    return 0


def cmd_green(args, out) -> int:
    _fam_and_elements(args, args.a, args.b)
    print("true" if green_related(args.rel, args.a, args.b) else "false", file=out)
    return 0


def cmd_hasse(args, out) -> int:
    fam = parse_family(args.family)
    diagram = hasse_diagram(args.window, _pcap(args, fam), fam, args.imin, args.imax)
    for e, f in diagram.boundary_covers:
        print(
            f"warning: {e} -> {f} is a cover only inside the window (boundary effect)",
            file=sys.stderr,
        )
    out.write(diagram.dot())
    return 0


def cmd_aut_apply(args, out) -> int:
    fam = _fam_and_elements(args, args.e)
    print(format_element(apply_aut(args.aut, args.e, fam)), file=out)
    return 0


def cmd_aut_compose(args, out) -> int:
    fam = parse_family(args.family)
    print(compose_aut(args.a1, args.a2, fam), file=out)
    return 0


def cmd_aut_classify(args, out) -> int:
    fam = parse_family(args.family)
    report = classify_group(fam, args.window, args.pcap)
    print(_dump(report.to_json()), file=out)
    return 0 if all(report.relations_verified.values()) else 1


def _window(args, fam: FamilySpec) -> BandWindow:
    return BandWindow(args.window, _pcap(args, fam), args.margin, fam)


def cmd_reconstruct(args, out) -> int:
    fam = parse_family(args.family)
    if args.seed is not None:
        check_element(args.seed, fam)
    win = _window(args, fam)
    seed = args.seed if args.seed is not None else Element(0, 0, 0)
    result = extend_from_seed(seed, win)
    print(_dump(result.to_json()), file=out)
    if args.assert_extension and result.outcome == "none":
        return 1
    return 0


def cmd_rigidity(args, out) -> int:
    fam = parse_family(args.family)
    result = extend_from_seed(Element(0, 0, 0), _window(args, fam))
    print(_dump(result.to_json()), file=out)
    rigid = result.outcome == "classified" and result.autos == [Automorphism(0, False)] and not result.unclassified
    return 0 if rigid else 1


def cmd_selftest(args, out) -> int:
    fam = parse_family(args.family)
    reports = run_all(args.window, _pcap(args, fam), fam, args.check or None)
    for r in reports:
        print(r.to_line(), file=out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_normalize_family(args, out) -> int:
    fam = parse_family(args.spec)
    print(json.dumps(fam.to_json()), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bzf", description="Workbench for the semigroup B_Z^F.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func, help: str, window: bool = False, family: bool = True):
        p = sub.add_parser(name, help=help)
        if family:
            p.add_argument("--family", required=True, help="k, inf, inf:n or {a,b,...}")
        if window:
            p.add_argument("--window", type=int, default=4, metavar="W")
            p.add_argument("--pcap", type=int, default=None, metavar="P", help="default min(k, 4)")
        p.set_defaults(func=func)
        return p

    p = add("mul", cmd_mul, "multiply two elements")
    p.add_argument("a", type=_element_arg)
    p.add_argument("b", type=_element_arg)

    p = add("inv", cmd_inv, "inverse of an element")
    p.add_argument("a", type=_element_arg)

    p = add("leq", cmd_leq, "natural partial order a <= b")
    p.add_argument("a", type=_element_arg)
    p.add_argument("b", type=_element_arg)

    p = add("green", cmd_green, "Green's relation test")
    p.add_argument("rel", choices=GREEN_TAGS)
    p.add_argument("a", type=_element_arg)
    p.add_argument("b", type=_element_arg)

    p = add("hasse", cmd_hasse, "DOT Hasse diagram of the window band", window=True)
    p.add_argument("--imin", type=int, default=None, help="lowest index (default -W)")
    p.add_argument("--imax", type=int, default=None, help="highest index (default W)")

    p = add("aut-apply", cmd_aut_apply, "apply an automorphism literal")
    p.add_argument("aut", type=_aut_arg)
    p.add_argument("e", type=_element_arg)

    p = add("aut-compose", cmd_aut_compose, "compose two automorphism literals (first after second)")
    p.add_argument("a1", type=_aut_arg)
    p.add_argument("a2", type=_aut_arg)

    add("aut-classify", cmd_aut_classify, "classify the automorphism group", window=True)

    for name, func, help in (
        ("reconstruct", cmd_reconstruct, "extend a seed to a band automorphism"),
        ("rigidity", cmd_rigidity, "check that fixing (0,0,[0)) forces the identity"),
    ):
        p = add(name, func, help, window=True)
        p.add_argument("--margin", type=int, default=2, metavar="M")
        if name == "reconstruct":
            p.add_argument("--seed", type=_element_arg, default=None)
            p.add_argument("--assert-extension", action="store_true")

    p = add("selftest", cmd_selftest, "run the exhaustive window checks", window=True)
    p.add_argument("--check", action="append", choices=sorted(CHECKS), help="repeatable; default all")

    p = add("normalize-family", cmd_normalize_family, "validate and normalize a family", family=False)
    p.add_argument("spec")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (BZFError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
