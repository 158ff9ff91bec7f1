"""Random diagram generation shared by the property tests."""

from heckegrading.coxeter import INF, alternating
from heckegrading.diagram import (Diagram, DotIn, DotOut, Id, Merge, PolyBox, Split, Vertex)
from heckegrading.polynomial import Polynomial


def random_slice(word, system, rng, basis=None, allow_vertex=True):
    """One slice whose source is ``word``."""
    labels = system.labels
    atoms, i = [], 0
    while i <= len(word):
        roll = rng.random()
        if roll < 0.12:
            atoms.append(DotIn(rng.choice(labels)))
        elif roll < 0.18 and basis:
            v = rng.choice(basis)
            atoms.append(PolyBox(Polynomial.var(v) * rng.randint(1, 3)))
        if i == len(word):
            break
        c = word[i]
        options = ["id", "id", "dot_out", "split"]
        if i + 1 < len(word) and word[i + 1] == c:
            options.append("merge")
        vertices = []
        if allow_vertex:
            for t in labels:
                if t == c:
                    continue
                m = system.mst(c, t)
                if m != INF and tuple(word[i:i + m]) == alternating(c, t, m):
                    vertices.append((t, m))
        if vertices:
            options += ["vertex"] * 3
        kind = rng.choice(options)
        if kind == "id":
            atoms.append(Id(c))
            i += 1
        elif kind == "dot_out":
            atoms.append(DotOut(c))
            i += 1
        elif kind == "split":
            atoms.append(Split(c))
            i += 1
        elif kind == "merge":
            atoms.append(Merge(c))
            i += 2
        else:
            t, m = rng.choice(vertices)
            atoms.append(Vertex(c, t, m))
            i += m
    return tuple(atoms)


def random_word(system, rng, max_len=4):
    return tuple(rng.choice(system.labels) for _ in range(rng.randint(0, max_len)))


def random_diagram(system, rng, bottom=None, height=None, basis=None, max_width=8):
    start = word = tuple(bottom) if bottom is not None else random_word(system, rng)
    height = rng.randint(0, 4) if height is None else height
    slices = []
    for _ in range(height):
        for _ in range(20):
            sl = random_slice(word, system, rng, basis)
            new = tuple(c for a in sl for c in a.target)
            if len(new) <= max_width:
                break
        slices.append(sl)
        word = tuple(c for a in sl for c in a.target)
    return Diagram(start, tuple(slices))


def vertex_only_diagram(system, rng, bottom, height):
    """Vertices and identities only; stops early if no vertex applies."""
    word, slices = tuple(bottom), []
    for _ in range(height):
        starts = []
        for i, c in enumerate(word):
            for t in system.labels:
                if t == c:
                    continue
                m = system.mst(c, t)
                if m != INF and tuple(word[i:i + m]) == alternating(c, t, m):
                    starts.append((i, t, m))
        if not starts:
            break
        i, t, m = rng.choice(starts)
        c = word[i]
        sl = tuple(Id(x) for x in word[:i]) + (Vertex(c, t, m),) + tuple(Id(x) for x in word[i + m:])
        slices.append(sl)
        word = word[:i] + alternating(t, c, m) + word[i + m:]
    return Diagram(tuple(bottom), tuple(slices))


def brute_force_planar_matchings(n):
    """All perfect matchings of n bottom + n top points, filtered for planarity.

    Each matching is a frozenset of frozenset arcs; points are ("b", i) / ("t", i).
    """
    pts = [("b", i) for i in range(n)] + [("t", i) for i in range(n)]

    def all_matchings(rest):
        if not rest:
            yield ()
            return
        first = rest[0]
        for k in range(1, len(rest)):
            for tail in all_matchings(rest[1:k] + rest[k + 1:]):
                yield ((first, rest[k]),) + tail

    # positions around the boundary of the rectangle
    pos = {("b", i): i for i in range(n)}
    pos.update({("t", i): 2 * n - 1 - i for i in range(n)})
    out = set()
    for m in all_matchings(pts):
        chords = [sorted((pos[a], pos[b])) for a, b in m]
        crossing = any(a < c < b < d or c < a < d < b
                       for i, (a, b) in enumerate(chords) for (c, d) in chords[i + 1:])
        if not crossing:
            out.add(frozenset(frozenset(arc) for arc in m))
    return out
