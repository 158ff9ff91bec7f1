"""Degree assignments on the generators and the degree of a diagram.

An assignment stores only the degrees of the two dots per color (``f_s`` for
the start dot, ``g_s`` for the end dot) and the degrees of a basis of V.
Everything else is derived:

* split: ``-g_s``, merge: ``-f_s``
* 2m-valent vertex with bottom word starting at ``s``: ``0`` if ``m`` is
  even, ``g_s - g_t`` if ``m`` is odd
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .abgroup import AbGroup, GroupElement, Hom, hom
from .coxeter import (CoxeterSystem, Realization, VGrading, root_degree, root_name,
                      validate_v_grading)
from .diagram import Atom, Diagram
from .polynomial import Polynomial


class InhomogeneousError(ValueError):
    """A polynomial box whose monomials have different degrees."""

    def __init__(self, poly, degrees):
        self.poly = poly
        self.degrees = degrees
        shown = ", ".join(d.as_combination() for d in degrees[:2])
        super().__init__(f"polynomial {poly} is not homogeneous: degrees {shown}")


class GradingError(ValueError):
    pass


def _poly_degree(p: Polynomial, deg_v: Mapping, zero: GroupElement) -> GroupElement:
    degs = []
    for mono, _ in p.terms():
        d = zero
        for v, e in mono:
            try:
                d = d + deg_v[v] * e
            except KeyError:
                raise GradingError(f"no degree assigned to variable {v!r}") from None
        if d not in degs:
            degs.append(d)
    if len(degs) > 1:
        raise InhomogeneousError(p, degs)
    return degs[0] if degs else zero


@dataclass(frozen=True)
class DegreeAssignment:
    system: CoxeterSystem
    group: AbGroup
    f: Mapping  # s -> degree of the start dot
    g: Mapping  # s -> degree of the end dot
    deg_v: Mapping = field(default_factory=dict)  # basis name -> degree

    def split(self, s) -> GroupElement:
        return -self.g[s]

    def merge(self, s) -> GroupElement:
        return -self.f[s]

    def vertex(self, s, t, m=None) -> GroupElement:
        if m is None:
            m = self.system.mst(s, t)
        if m % 2 == 0:
            return self.group.zero()
        return self.g[s] - self.g[t]

    def atom_degree(self, atom: Atom) -> GroupElement:
        k = atom.kind
        if k == "id":
            return self.group.zero()
        if k == "dot_in":
            return self.f[atom.color]
        if k == "dot_out":
            return self.g[atom.color]
        if k == "split":
            return self.split(atom.color)
        if k == "merge":
            return self.merge(atom.color)
        if k == "vertex":
            return self.vertex(atom.colors[0], atom.colors[1], atom.m)
        return self.poly_degree(atom.poly)

    def poly_degree(self, p: Polynomial) -> GroupElement:
        return _poly_degree(p, self.deg_v, self.group.zero())

    def table(self) -> "AtomDegrees":
        """Explicit per-generator table (for perturbation experiments)."""
        entries = {}
        for s in self.system.labels:
            entries[("dot_in", s)] = self.f[s]
            entries[("dot_out", s)] = self.g[s]
            entries[("split", s)] = self.split(s)
            entries[("merge", s)] = self.merge(s)
        for s, t in self.system.finite_pairs():
            entries[("vertex", s, t)] = self.vertex(s, t)
        return AtomDegrees(self.group, entries, dict(self.deg_v))

    def root_degree(self, s) -> GroupElement:
        return self.f[s] + self.g[s]


@dataclass(frozen=True)
class AtomDegrees:
    """Degrees given generator by generator, with no derived structure."""

    group: AbGroup
    entries: Mapping
    deg_v: Mapping

    def atom_degree(self, atom: Atom) -> GroupElement:
        if atom.kind == "id":
            return self.group.zero()
        if atom.kind == "poly":
            return _poly_degree(atom.poly, self.deg_v, self.group.zero())
        return self.entries[(atom.kind,) + tuple(atom.colors)]

    def replace(self, key, value) -> "AtomDegrees":
        if key[0] == "v":
            deg_v = dict(self.deg_v)
            deg_v[key[1]] = value
            return AtomDegrees(self.group, self.entries, deg_v)
        entries = dict(self.entries)
        entries[key] = value
        return AtomDegrees(self.group, entries, self.deg_v)

    def keys(self) -> list:
        return list(self.entries) + [("v", b) for b in self.deg_v]


def degree(d: Diagram, a) -> GroupElement:
    """Sum of the atom degrees of ``d``."""
    total = a.group.zero()
    for atom in d.atoms():
        total = total + a.atom_degree(atom)
    return total


# ---------------------------------------------------------------------------
# the three constructions

def _basis_names(system: CoxeterSystem, real: Realization | None) -> tuple:
    return real.basis if real is not None else tuple(root_name(s) for s in system.labels)


def bigrading(system: CoxeterSystem, real: Realization | None = None) -> DegreeAssignment:
    z2 = AbGroup.free(["a", "b"])
    f = {s: z2.element([1, 0]) for s in system.labels}
    g = {s: z2.element([0, 1]) for s in system.labels}
    deg_v = {b: z2.element([1, 1]) for b in _basis_names(system, real)}
    return DegreeAssignment(system, z2, f, g, deg_v)


def original_grading(system: CoxeterSystem, real: Realization | None = None) -> DegreeAssignment:
    z = AbGroup.free(["d"])
    one = z.element([1])
    return DegreeAssignment(system, z, {s: one for s in system.labels},
                            {s: one for s in system.labels},
                            {b: one * 2 for b in _basis_names(system, real)})


def total_degree_hom(z2: AbGroup | None = None) -> Hom:
    """``(m, n) -> m + n`` from the bigrading group to Z."""
    z2 = z2 or AbGroup.free(["a", "b"])
    return hom(z2, AbGroup.free(["d"]), [[1], [1]])


def lambda_generators(system: CoxeterSystem) -> list:
    gens = []
    for s in system.labels:
        gens += [f"f_{s}", f"g_{s}"]
    return gens


def lambda_relators(system: CoxeterSystem, ncols: int | None = None) -> list:
    n = ncols or 2 * system.rank
    rels = []
    for s, t in system.unordered_pairs():
        if system.mst(s, t) == 2:
            continue
        row = [0] * n
        i, j = system.index(s), system.index(t)
        row[2 * i] += 1
        row[2 * i + 1] += 1
        row[2 * j] -= 1
        row[2 * j + 1] -= 1
        rels.append(row)
    return rels


def universal_lambda(system: CoxeterSystem):
    """The universal grading group of the root realization and its assignment."""
    lam = AbGroup.presented(lambda_generators(system), lambda_relators(system))
    f = {s: lam.gen(f"f_{s}") for s in system.labels}
    g = {s: lam.gen(f"g_{s}") for s in system.labels}
    deg_v = {root_name(s): f[s] + g[s] for s in system.labels}
    return lam, DegreeAssignment(system, lam, f, g, deg_v)


def general_grading(system: CoxeterSystem, real: Realization, vg: VGrading):
    """``(Lambda x Gamma) / I`` with I generated by ``f_s + g_s - deg(alpha_s)``."""
    report = validate_v_grading(real, vg)
    if not report.ok:
        raise GradingError("invalid grading on V:\n" + str(report))
    lam, _ = universal_lambda(system)
    gamma = vg.target
    clash = set(lam.gens) & set(gamma.gens)
    if clash:
        raise GradingError(f"grading group generator names clash with {sorted(clash)}")
    prod = AbGroup.product(lam, gamma)
    nl = lam.ngens

    def embed_gamma(x: GroupElement) -> GroupElement:
        return prod.element((0,) * nl + tuple(x.coeffs))

    ideal = []
    for s in system.labels:
        ideal.append(prod.gen(f"f_{s}") + prod.gen(f"g_{s}")
                     - embed_gamma(root_degree(real, vg, s)))
    q, proj = prod.quotient(ideal)
    f = {s: q.gen(f"f_{s}") for s in system.labels}
    g = {s: q.gen(f"g_{s}") for s in system.labels}
    deg_v = {b: proj(embed_gamma(vg.deg_basis[b])) for b in real.basis}
    return q, DegreeAssignment(system, q, f, g, deg_v)


def specialize(a: DegreeAssignment, h: Hom) -> DegreeAssignment:
    if h.source != a.group:
        raise GradingError("homomorphism does not start at the assignment's group")
    return DegreeAssignment(a.system, h.target,
                            {s: h(x) for s, x in a.f.items()},
                            {s: h(x) for s, x in a.g.items()},
                            {b: h(x) for b, x in a.deg_v.items()})


def same_assignment(a: DegreeAssignment, b: DegreeAssignment) -> bool:
    if a.group != b.group:
        return False
    return (all(a.f[s] == b.f[s] and a.g[s] == b.g[s] for s in a.system.labels)
            and set(a.deg_v) == set(b.deg_v)
            and all(a.deg_v[v] == b.deg_v[v] for v in a.deg_v))


def phi(word, a) -> GroupElement:
    """Sum of ``g_c`` over the colors of ``word``."""
    total = a.group.zero()
    for c in word:
        total = total + a.g[c]
    return total
