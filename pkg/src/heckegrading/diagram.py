"""Soergel diagrams as stacks of horizontal slices.

A diagram has a bottom boundary word and a list of slices; each slice is a
left-to-right list of atoms whose source words, concatenated, must equal the
current word.  Nothing here knows about isotopy: two diagrams are equal only
if their slices agree after dropping identity-only slices.

Text format::

    bottom: s t s
    slice: vertex(s,t)
    top: t s t
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .coxeter import INF, CoxeterSystem, alternating
from .polynomial import Polynomial

ATOM_KINDS = ("id", "dot_in", "dot_out", "split", "merge", "vertex", "poly")


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    kind: str
    colors: tuple = ()
    poly: Polynomial | None = None
    m: int | None = None  # only for vertices

    def __post_init__(self):
        if self.kind not in ATOM_KINDS:
            raise DiagramError(f"unknown atom kind {self.kind!r}")
        if self.kind == "vertex":
            if len(self.colors) != 2 or self.colors[0] == self.colors[1]:
                raise DiagramError("a vertex needs two distinct colors")
            if self.m is None or self.m == INF or self.m < 2:
                raise DiagramError(f"vertex({self.colors[0]},{self.colors[1]}) needs finite m >= 2")
        elif self.kind == "poly":
            if not isinstance(self.poly, Polynomial):
                raise DiagramError("a polynomial box needs a Polynomial")
        elif len(self.colors) != 1:
            raise DiagramError(f"{self.kind} takes exactly one color")

    @property
    def color(self) -> str:
        return self.colors[0]

    @property
    def source(self) -> tuple:
        k = self.kind
        if k in ("id", "dot_out", "split"):
            return (self.color,)
        if k == "merge":
            return (self.color, self.color)
        if k == "vertex":
            return alternating(self.colors[0], self.colors[1], self.m)
        return ()

    @property
    def target(self) -> tuple:
        k = self.kind
        if k in ("id", "dot_in", "merge"):
            return (self.color,)
        if k == "split":
            return (self.color, self.color)
        if k == "vertex":
            return alternating(self.colors[1], self.colors[0], self.m)
        return ()

    def to_text(self) -> str:
        if self.kind == "vertex":
            return f"vertex({self.colors[0]},{self.colors[1]})"
        if self.kind == "poly":
            return "poly{" + str(self.poly) + "}"
        return f"{self.kind}({self.color})"

    def __str__(self):
        return self.to_text()


def Id(s):
    return Atom("id", (s,))


def DotIn(s):
    return Atom("dot_in", (s,))


def DotOut(s):
    return Atom("dot_out", (s,))


def Split(s):
    return Atom("split", (s,))


def Merge(s):
    return Atom("merge", (s,))


def Vertex(s, t, m):
    return Atom("vertex", (s, t), m=m)


def PolyBox(p):
    if isinstance(p, str):
        p = Polynomial.parse(p)
    return Atom("poly", (), poly=p)


def _slice_source(sl) -> tuple:
    return tuple(c for a in sl for c in a.source)


def _slice_target(sl) -> tuple:
    return tuple(c for a in sl for c in a.target)


@dataclass(frozen=True)
class Diagram:
    bottom: tuple
    slices: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bottom", tuple(self.bottom))
        object.__setattr__(self, "slices", tuple(tuple(sl) for sl in self.slices))
        word = self.bottom
        for k, sl in enumerate(self.slices, start=1):
            src = _slice_source(sl)
            if src != word:
                pos = next((i for i, (a, b) in enumerate(zip(src, word)) if a != b),
                           min(len(src), len(word)))
                raise DiagramError(
                    f"boundary mismatch at slice {k}, position {pos}: slice consumes "
                    f"{' '.join(src) or '(empty)'} but the word below is {' '.join(word) or '(empty)'}")
            word = _slice_target(sl)

    @cached_property
    def top(self) -> tuple:
        word = self.bottom
        for sl in self.slices:
            word = _slice_target(sl)
        return word

    def atoms(self):
        for sl in self.slices:
            yield from sl

    def colors(self) -> set:
        out = set(self.bottom)
        for a in self.atoms():
            out.update(a.colors)
        return out

    def normalized(self) -> "Diagram":
        """Drop slices made only of identity atoms."""
        keep = tuple(sl for sl in self.slices if any(a.kind != "id" for a in sl))
        return Diagram(self.bottom, keep)

    def equivalent(self, other: "Diagram") -> bool:
        return self.normalized() == other.normalized()

    def __str__(self):
        return serialize_diagram(self)


def identity(word) -> Diagram:
    return Diagram(tuple(word), ())


def single(atom: Atom, left=(), right=()) -> Diagram:
    """One-slice diagram: ``atom`` with identity strands to either side."""
    left, right = tuple(left), tuple(right)
    sl = [Id(c) for c in left] + [atom] + [Id(c) for c in right]
    return Diagram(left + atom.source + right, (tuple(sl),))


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """``d2`` stacked on top of ``d1``."""
    if d1.top != d2.bottom:
        raise DiagramError(
            f"cannot compose: top {' '.join(d1.top) or '(empty)'} != "
            f"bottom {' '.join(d2.bottom) or '(empty)'}")
    return Diagram(d1.bottom, d1.slices + d2.slices)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Side by side, the shorter diagram padded with identity slices."""
    h = max(len(d1.slices), len(d2.slices))

    def padded(d):
        pad = tuple(Id(c) for c in d.top)
        return list(d.slices) + [pad] * (h - len(d.slices))

    return Diagram(d1.bottom + d2.bottom,
                   tuple(a + b for a, b in zip(padded(d1), padded(d2))))


def compose_all(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose(out, d)
    return out


# ---------------------------------------------------------------------------
# text format

_ATOM_RE = re.compile(
    r"\s*(?:"
    r"(?P<simple>[A-Za-z_]+)\(\s*(?P<c>[^(),\s]+)\s*\)"
    r"|vertex\(\s*(?P<v1>[^(),\s]+)\s*,\s*(?P<v2>[^(),\s]+)\s*\)"
    r"|poly\{(?P<expr>[^{}]*)\}"
    r")")


def _parse_atoms(body: str, lineno: int, system: CoxeterSystem | None) -> list:
    atoms = []
    pos = 0
    body = body.rstrip()
    while pos < len(body):
        m = _ATOM_RE.match(body, pos)
        if not m:
            raise DiagramError(f"line {lineno}: cannot parse atom at column {pos}: {body[pos:]!r}")
        if m.group("simple") is not None and m.group("simple") != "vertex":
            kind = m.group("simple")
            if kind not in ("id", "dot_in", "dot_out", "split", "merge"):
                raise DiagramError(f"line {lineno}: unknown atom {kind!r}")
            color = m.group("c")
            _check_color(color, system, lineno)
            atoms.append(Atom(kind, (color,)))
        elif m.group("v1") is not None:
            s, t = m.group("v1"), m.group("v2")
            if system is None:
                raise DiagramError(f"line {lineno}: vertex({s},{t}) needs a Coxeter system")
            _check_color(s, system, lineno)
            _check_color(t, system, lineno)
            mst = system.mst(s, t)
            if s == t or mst == INF:
                raise DiagramError(f"line {lineno}: no vertex for ({s},{t}) (m = {mst})")
            atoms.append(Vertex(s, t, mst))
        elif m.group("expr") is not None:
            try:
                atoms.append(PolyBox(Polynomial.parse(m.group("expr"))))
            except ValueError as exc:
                raise DiagramError(f"line {lineno}: {exc}") from None
        else:  # "vertex(x)" with a single color
            raise DiagramError(f"line {lineno}: vertex needs two colors")
        pos = m.end()
    return atoms


def _check_color(color, system, lineno):
    if system is not None and color not in system.labels:
        raise DiagramError(f"line {lineno}: unknown color {color!r}")


def parse_diagram(text: str, system: CoxeterSystem | None = None) -> Diagram:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines or not lines[0][1].startswith("bottom:"):
        raise DiagramError("diagram text must start with a 'bottom:' line")
    bottom = tuple(lines[0][1][len("bottom:"):].split())
    for c in bottom:
        _check_color(c, system, lines[0][0])
    slices = []
    declared_top = None
    word = bottom
    for lineno, ln in lines[1:]:
        if declared_top is not None:
            raise DiagramError(f"line {lineno}: nothing may follow 'top:'")
        if ln.startswith("slice:"):
            sl = tuple(_parse_atoms(ln[len("slice:"):], lineno, system))
            src = _slice_source(sl)
            if src != word:
                pos = next((i for i, (a, b) in enumerate(zip(src, word)) if a != b),
                           min(len(src), len(word)))
                raise DiagramError(
                    f"boundary mismatch at slice {len(slices) + 1} (line {lineno}), position {pos}: "
                    f"expected {' '.join(word) or '(empty)'}, slice consumes {' '.join(src) or '(empty)'}")
            slices.append(sl)
            word = _slice_target(sl)
        elif ln.startswith("top:"):
            declared_top = tuple(ln[len("top:"):].split())
            if declared_top != word:
                raise DiagramError(
                    f"line {lineno}: declared top {' '.join(declared_top) or '(empty)'} "
                    f"!= derived top {' '.join(word) or '(empty)'}")
        else:
            raise DiagramError(f"line {lineno}: expected 'slice:' or 'top:', got {ln!r}")
    return Diagram(bottom, tuple(slices))


def serialize_diagram(d: Diagram, with_top: bool = False) -> str:
    lines = [("bottom: " + " ".join(d.bottom)).rstrip()]
    for sl in d.slices:
        lines.append(("slice: " + " ".join(a.to_text() for a in sl)).rstrip())
    if with_top:
        lines.append(("top: " + " ".join(d.top)).rstrip())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# crossingless matchings

@dataclass(frozen=True)
class Matching:
    """Planar matching of ``m-1`` bottom and ``m-1`` top points.

    Points are ``("b", i)`` / ``("t", i)``, numbered left to right.  A
    bottom-bottom arc is a cap, a top-top arc is a cup.
    """

    m: int
    arcs: tuple

    def kind(self, arc) -> str:
        (sa, _), (sb, _) = arc
        if sa != sb:
            return "through"
        return "cap" if sa == "b" else "cup"

    @property
    def cups(self) -> int:
        return sum(1 for a in self.arcs if self.kind(a) == "cup")

    @property
    def caps(self) -> int:
        return sum(1 for a in self.arcs if self.kind(a) == "cap")

    @property
    def through(self) -> int:
        return sum(1 for a in self.arcs if self.kind(a) == "through")

    def is_planar(self) -> bool:
        pos = {p: i for i, p in enumerate(_circle_order(self.m - 1))}
        chords = [tuple(sorted((pos[a], pos[b]))) for a, b in self.arcs]
        return not any(a < c < b < d for (a, b) in chords for (c, d) in chords)


def _circle_order(n: int) -> list:
    # bottom left->right, then top right->left: boundary order of the rectangle
    return [("b", i) for i in range(n)] + [("t", i) for i in reversed(range(n))]


def crossingless_matchings(m: int) -> list:
    if m < 2:
        raise ValueError("m must be at least 2")
    pts = _circle_order(m - 1)

    def rec(lo, hi):  # non-crossing matchings of pts[lo:hi]
        if lo >= hi:
            return [()]
        out = []
        for k in range(lo + 1, hi, 2):
            for inner in rec(lo + 1, k):
                for outer in rec(k + 1, hi):
                    out.append(((pts[lo], pts[k]),) + inner + outer)
        return out

    return [Matching(m, tuple(arcs)) for arcs in rec(0, len(pts))]
