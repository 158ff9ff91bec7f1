"""The relation catalog and everything that reads degrees off it.

Relations are stored as templates in ``data/relations.json`` and
instantiated per color, per pair of colors, and (for forcing) per probe
polynomial.  A relation is ``sum(scalar * diagram) == 0``; it is homogeneous
when, after expanding every polynomial box into monomials, all surviving
terms have the same degree.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from string import Template
from typing import Sequence

from .abgroup import (AbGroup, GroupElement, Hom, HomomorphismError, hermite_normal_form, hom,
                      same_lattice)
from .coxeter import (INF, CoxeterSystem, Realization, VGrading, alternating, demazure,
                      reflect, root_name)
from .diagram import Atom, Diagram, crossingless_matchings, parse_diagram, serialize_diagram
from .grading import (AtomDegrees, DegreeAssignment, GradingError, InhomogeneousError, degree,
                      general_grading, phi, universal_lambda)
from .polynomial import Polynomial


@dataclass(frozen=True)
class Relation:
    name: str
    terms: tuple  # ((Fraction, Diagram), ...)
    family: str = "custom"

    def __post_init__(self):
        if not self.terms:
            raise ValueError(f"relation {self.name} has no terms")
        b, t = self.terms[0][1].bottom, self.terms[0][1].top
        for _, d in self.terms[1:]:
            if d.bottom != b or d.top != t:
                raise ValueError(f"relation {self.name}: terms have different boundaries")

    @property
    def bottom(self):
        return self.terms[0][1].bottom

    @property
    def top(self):
        return self.terms[0][1].top

    def expanded(self) -> list:
        """Terms with every polynomial box split into monic monomials.

        Equal diagrams are merged and zero terms dropped.
        """
        acc: dict = {}
        order = []
        for scalar, d in self.terms:
            for c, diag in _expand_diagram(d):
                key = diag
                if key not in acc:
                    acc[key] = Fraction(0)
                    order.append(key)
                acc[key] += scalar * c
        return [(acc[k], k) for k in order if acc[k]]

    def to_json(self) -> dict:
        return {"name": self.name,
                "terms": [{"scalar": str(c), "diagram": serialize_diagram(d)} for c, d in self.terms]}


def _expand_diagram(d: Diagram):
    choices = []
    for k, sl in enumerate(d.slices):
        for j, atom in enumerate(sl):
            if atom.kind == "poly":
                opts = [(c, Atom("poly", (), poly=Polynomial({mono: 1}))) for mono, c in atom.poly.terms()]
                choices.append(((k, j), opts))
    if not choices:
        yield Fraction(1), d
        return
    for combo in product(*(opts for _, opts in choices)):
        slices = [list(sl) for sl in d.slices]
        coeff = Fraction(1)
        for ((k, j), _), (c, atom) in zip(choices, combo):
            slices[k][j] = atom
            coeff *= c
        yield coeff, Diagram(d.bottom, tuple(tuple(sl) for sl in slices))


# ---------------------------------------------------------------------------
# catalog

def _templates() -> list:
    text = resources.files("heckegrading").joinpath("data/relations.json").read_text(encoding="utf-8")
    return json.loads(text)["relations"]


def _diagram_text(spec) -> str:
    return "\n".join(spec) if isinstance(spec, list) else spec


def _instantiate(tpl: dict, subs: dict, system: CoxeterSystem) -> Relation:
    name = Template(tpl["name"]).substitute(subs)
    terms = []
    for term in tpl["terms"]:
        text = Template(_diagram_text(term["diagram"])).substitute(subs)
        terms.append((Fraction(term["scalar"]), parse_diagram(text, system)))
    return Relation(name, tuple(terms), tpl["family"])


def _two_color_subs(s, t, m) -> dict:
    w = alternating(s, t, m)
    wp = alternating(t, s, m)
    ids = lambda word: " ".join(f"id({c})" for c in word)
    return {"s": s, "t": t, "x": w[-1], "W": " ".join(w),
            "ids_W": ids(w), "ids_Winit": ids(w[:-1]), "ids_Wptail": ids(wp[1:])}


def forcing_probes(real: Realization, s: str) -> list:
    """Polynomials fed to the forcing relation for color ``s``."""
    probes = [real.alpha[t] for t in real.system.labels]
    probes.append(real.alpha[s] ** 2)
    for b in real.basis:
        v = Polynomial.var(b)
        if v not in probes:
            probes.append(v)
    return probes


def build_catalog(system: CoxeterSystem, real: Realization | None = None) -> list:
    """Instantiate every relation template for ``system``.

    Without a realization the forcing relations are skipped and the barbell
    uses the formal root variables ``a_s``.
    """
    out = []
    for tpl in _templates():
        arity = tpl["colors"]
        if arity == 1:
            for s in system.labels:
                alpha = real.alpha[s] if real is not None else Polynomial.var(root_name(s))
                if tpl.get("probe"):
                    if real is None:
                        continue
                    for f in forcing_probes(real, s):
                        subs = {"s": s, "f": str(f), "fname": str(f),
                                "sf": str(reflect(real, s, f)), "df": str(demazure(real, s, f))}
                        out.append(_instantiate(tpl, subs, system))
                else:
                    out.append(_instantiate(tpl, {"s": s, "alpha": str(alpha)}, system))
        elif arity == 2:
            for s, t in system.finite_pairs():
                out.append(_instantiate(tpl, _two_color_subs(s, t, system.mst(s, t)), system))
        elif arity == 3:
            req = tpl.get("requires", {})
            for s in system.labels:
                for t in system.labels:
                    for u in system.labels:
                        if len({s, t, u}) < 3:
                            continue
                        col = {"s": s, "t": t, "u": u}
                        if all(system.mst(col[k[0]], col[k[1]]) == v for k, v in req.items()):
                            out.append(_instantiate(tpl, col, system))
    return out


def load_catalog(path, system: CoxeterSystem) -> list:
    """Concrete relations from a JSON file (``[{"name", "terms": [...]}]``)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    rels = []
    for item in data:
        terms = tuple((Fraction(t["scalar"]), parse_diagram(_diagram_text(t["diagram"]), system))
                      for t in item["terms"])
        rels.append(Relation(item["name"], terms, item.get("family", "custom")))
    return rels


# ---------------------------------------------------------------------------
# homogeneity

@dataclass
class ReportEntry:
    relation: str
    homogeneous: bool
    degree: GroupElement | None = None
    witnesses: list = field(default_factory=list)  # [(degree, term text)]
    family: str = ""

    def to_json(self) -> dict:
        return {"relation": self.relation,
                "homogeneous": self.homogeneous,
                "degree": list(self.degree.coordinates()) if self.degree is not None else None,
                "witnesses": [{"degree": list(d.coordinates()) if isinstance(d, GroupElement) else d,
                               "term": text} for d, text in self.witnesses]}


@dataclass
class HomogeneityReport:
    entries: list

    @property
    def ok(self) -> bool:
        return all(e.homogeneous for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.homogeneous]

    def __getitem__(self, name) -> ReportEntry:
        for e in self.entries:
            if e.relation == name:
                return e
        raise KeyError(name)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def term_degrees(rel: Relation, a) -> list:
    """``[(degree, scalar, diagram)]`` over the expanded terms."""
    return [(degree(d, a), c, d) for c, d in rel.expanded()]


def check_homogeneity(rel: Relation, a) -> ReportEntry:
    distinct = []
    for deg, _, d in term_degrees(rel, a):
        if not any(deg == x for x, _ in distinct):
            distinct.append((deg, serialize_diagram(d)))
    if len(distinct) <= 1:
        return ReportEntry(rel.name, True, distinct[0][0] if distinct else None, [], rel.family)
    return ReportEntry(rel.name, False, None, distinct, rel.family)


def jw_delta(s, t, a) -> GroupElement:
    """Degree of an upward pitchfork; both colors must agree."""
    red, blue = a.f[t] - a.g[s], a.f[s] - a.g[t]
    if red != blue:
        raise GradingError(
            f"pitchfork degrees differ for ({s},{t}): {red.as_combination()} vs {blue.as_combination()}")
    return red


def jw_terms(s, t, m, a) -> list:
    """Crossingless matchings indexing the Jones-Wenzl terms, with degrees.

    A cup retracts to an upward pitchfork and a cap to a downward one.
    """
    matchings = crossingless_matchings(m)
    if m == 2:
        return [(mt, a.group.zero()) for mt in matchings]
    delta = jw_delta(s, t, a)
    return [(mt, delta * mt.cups - delta * mt.caps) for mt in matchings]


def jw_degree_check(s, t, m, a) -> bool:
    return all(d.is_zero() for _, d in jw_terms(s, t, m, a))


def telescoping_entries(system: CoxeterSystem, a, catalog: Sequence[Relation]) -> list:
    entries = []
    for s, t in system.finite_pairs():
        m = system.mst(s, t)
        d = Diagram(alternating(s, t, m), ((Atom("vertex", (s, t), m=m),),))
        want = phi(d.bottom, a) - phi(d.top, a)
        got = degree(d, a)
        ok = got == want
        entries.append(ReportEntry(f"telescoping({s},{t})", ok, got if ok else None,
                                   [] if ok else [(got, "vertex"), (want, "phi(bottom) - phi(top)")],
                                   "telescoping"))
    for rel in catalog:
        if all(atom.kind in ("id", "vertex") for _, d in rel.terms for atom in d.atoms()):
            want = phi(rel.bottom, a) - phi(rel.top, a)
            bad = [(deg, serialize_diagram(d)) for deg, _, d in term_degrees(rel, a) if deg != want]
            entries.append(ReportEntry(f"telescoping[{rel.name}]", not bad, None if bad else want,
                                       bad, "telescoping"))
    return entries


def verify_all(system: CoxeterSystem, real: Realization | None, a, extra=()) -> HomogeneityReport:
    catalog = build_catalog(system, real) + list(extra)
    entries = []
    for rel in catalog:
        try:
            entries.append(check_homogeneity(rel, a))
        except InhomogeneousError as exc:
            entries.append(ReportEntry(rel.name, False, None,
                                       [(d, f"box {exc.poly}") for d in exc.degrees], rel.family))
    if isinstance(a, DegreeAssignment):
        for s, t in system.unordered_pairs():
            m = system.mst(s, t)
            if m == INF:
                continue
            name = f"jones-wenzl({s},{t})"
            try:
                ok = jw_degree_check(s, t, m, a)
                entries.append(ReportEntry(name, ok, a.group.zero() if ok else None, [], "jones-wenzl"))
            except GradingError as exc:
                entries.append(ReportEntry(name, False, None, [(None, str(exc))], "jones-wenzl"))
        entries.extend(telescoping_entries(system, a, catalog))
    return HomogeneityReport(entries)


# ---------------------------------------------------------------------------
# constraint derivation

@dataclass
class ConstraintSystem:
    unknowns: list
    rows: list  # integer relator rows over the unknowns

    def group(self) -> AbGroup:
        return AbGroup.presented(self.unknowns, self.rows)

    def hnf(self) -> list:
        return hermite_normal_form(self.rows, len(self.unknowns))

    def renamed(self, mapping: dict) -> "ConstraintSystem":
        """Same lattice with unknowns renamed and reordered as ``mapping`` values."""
        new = [mapping[u] for u in self.unknowns]
        return ConstraintSystem(new, [list(r) for r in self.rows])

    def reordered(self, order: Sequence[str]) -> "ConstraintSystem":
        idx = [self.unknowns.index(u) for u in order]
        return ConstraintSystem(list(order), [[r[i] for i in idx] for r in self.rows])


def grading_unknowns(system: CoxeterSystem, basis: Sequence[str] | None) -> list:
    names = []
    for s in system.labels:
        names += [f"f_{s}", f"g_{s}", f"split_{s}", f"merge_{s}"]
    names += [f"h_{s},{t}" for s, t in system.finite_pairs()]
    if basis is not None:
        names += [f"v_{b}" for b in basis]
    return names


def _formal_degrees(free: AbGroup, system, deg_v):
    entries = {}
    for s in system.labels:
        entries[("dot_in", s)] = free.gen(f"f_{s}")
        entries[("dot_out", s)] = free.gen(f"g_{s}")
        entries[("split", s)] = free.gen(f"split_{s}")
        entries[("merge", s)] = free.gen(f"merge_{s}")
    for s, t in system.finite_pairs():
        entries[("vertex", s, t)] = free.gen(f"h_{s},{t}")
    return AtomDegrees(free, entries, deg_v)


def grading_constraints(system, catalog, formal) -> list:
    rows, seen = [], set()
    for rel in catalog:
        degs = [deg for deg, _, _ in term_degrees(rel, formal)]
        for d in degs[1:]:
            row = tuple((d - degs[0]).coeffs)
            if any(row) and row not in seen and tuple(-x for x in row) not in seen:
                seen.add(row)
                rows.append(list(row))
    return rows


@dataclass
class Certificate:
    target: AbGroup
    forward: Hom | None
    backward: Hom | None
    invariants_match: bool
    round_trips: bool
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.forward is not None and self.invariants_match and self.round_trips


@dataclass
class UniversalResult:
    group: AbGroup
    assignment: DegreeAssignment
    constraints: ConstraintSystem
    derived: dict  # equation name -> holds in the derived group
    certificate: Certificate | None
    reference: DegreeAssignment | None = None


def _is_root_realization(real: Realization) -> bool:
    labs = real.system.labels
    return (real.basis == tuple(root_name(s) for s in labs)
            and all(real.alpha[s] == Polynomial.var(root_name(s)) for s in labs))


def derive_universal(system: CoxeterSystem, real: Realization | None = None,
                     vg: VGrading | None = None) -> UniversalResult:
    """Universal grading group read off from the homogeneity constraints."""
    catalog = build_catalog(system, real)
    basis = real.basis if real is not None else tuple(root_name(s) for s in system.labels)
    if vg is None:
        unknowns = grading_unknowns(system, basis)
        free = AbGroup.free(unknowns)
        deg_v = {b: free.gen(f"v_{b}") for b in basis}
        extra_rows = []
    else:
        if real is None:
            raise GradingError("a grading on V needs a realization")
        gnames = list(vg.target.gens)
        unknowns = grading_unknowns(system, None) + gnames
        free = AbGroup.free(unknowns)
        off = len(unknowns) - len(gnames)
        embed = lambda x: free.element((0,) * off + tuple(x.coeffs))
        deg_v = {b: embed(vg.deg_basis[b]) for b in basis}
        extra_rows = [[0] * off + list(r) for r in vg.target.rels]
    formal = _formal_degrees(free, system, deg_v)
    rows = grading_constraints(system, catalog, formal)
    cs = ConstraintSystem(unknowns, rows + extra_rows)
    group = cs.group()

    lift = lambda x: group.element(x.coeffs)
    f = {s: group.gen(f"f_{s}") for s in system.labels}
    g = {s: group.gen(f"g_{s}") for s in system.labels}
    assignment = DegreeAssignment(system, group, f, g, {b: lift(x) for b, x in deg_v.items()})

    if vg is None:
        images = {}
        for u in unknowns:
            kind = u.split("_", 1)[0]
            images[u] = {"f": [1], "g": [1], "split": [-1], "merge": [-1], "h": [0], "v": [2]}[kind]
        try:
            hom(group, AbGroup.free(["d"]), images)
        except HomomorphismError as exc:
            raise GradingError(f"constraints contradict the original Z-grading: {exc}") from None

    derived = {}
    for s in system.labels:
        derived[f"split_{s} = -g_{s}"] = group.gen(f"split_{s}") == -g[s]
        derived[f"merge_{s} = -f_{s}"] = group.gen(f"merge_{s}") == -f[s]
        derived[f"deg(alpha_{s}) = f_{s} + g_{s}"] = assignment.poly_degree(
            real.alpha[s] if real is not None else Polynomial.var(root_name(s))) == f[s] + g[s]
    for s, t in system.finite_pairs():
        h = group.gen(f"h_{s},{t}")
        if system.mst(s, t) % 2 == 0:
            derived[f"h_{s},{t} = 0"] = h.is_zero()
        else:
            derived[f"h_{s},{t} = g_{s} - g_{t}"] = h == g[s] - g[t]

    reference = None
    if vg is not None:
        _, reference = general_grading(system, real, vg)
    elif real is None or _is_root_realization(real):
        _, reference = universal_lambda(system)
    cert = _certificate(group, unknowns, reference, system, vg) if reference is not None else None
    return UniversalResult(group, assignment, cs, derived, cert, reference)


def _certificate(group, unknowns, ref: DegreeAssignment, system, vg) -> Certificate:
    target = ref.group
    fwd_images = []
    for u in unknowns:
        kind, _, rest = u.partition("_")
        if kind == "f":
            fwd_images.append(ref.f[rest])
        elif kind == "g":
            fwd_images.append(ref.g[rest])
        elif kind == "split":
            fwd_images.append(ref.split(rest))
        elif kind == "merge":
            fwd_images.append(ref.merge(rest))
        elif kind == "h":
            s, t = rest.split(",")
            fwd_images.append(ref.vertex(s, t))
        elif kind == "v":
            fwd_images.append(ref.deg_v[rest])
        else:  # a generator of the grading group on V
            fwd_images.append(target.gen(u))
    back_images = []
    for name in target.gens:
        back_images.append(group.gen(name))
    try:
        forward = hom(group, target, fwd_images)
        backward = hom(target, group, back_images)
    except HomomorphismError as exc:
        return Certificate(target, None, None, False, False, str(exc))
    round_trips = (forward.then(backward).is_identity_on_generators()
                   and backward.then(forward).is_identity_on_generators())
    invariants = (group.invariant_factors == target.invariant_factors
                  and group.free_rank == target.free_rank)
    return Certificate(target, forward, backward, invariants, round_trips)


def universal_hom(result: UniversalResult, a: DegreeAssignment) -> Hom:
    """The homomorphism from the derived group carrying its assignment to ``a``.

    Raises HomomorphismError when ``a`` is not a grading.
    """
    images = []
    for u in result.constraints.unknowns:
        kind, _, rest = u.partition("_")
        if kind == "f":
            images.append(a.f[rest])
        elif kind == "g":
            images.append(a.g[rest])
        elif kind == "split":
            images.append(a.split(rest))
        elif kind == "merge":
            images.append(a.merge(rest))
        elif kind == "h":
            s, t = rest.split(",")
            images.append(a.vertex(s, t))
        elif kind == "v":
            images.append(a.deg_v[rest])
        else:
            raise GradingError(f"unknown {u!r} has no image in the target assignment")
    return hom(result.group, a.group, images)


# ---------------------------------------------------------------------------
# rescaling scalars

_SCALAR_NAMES = {"dot_in": "kappa", "dot_out": "lambda", "split": "sigma", "merge": "mu"}


def scalar_unknowns(system: CoxeterSystem, basis: Sequence[str]) -> list:
    names = []
    for s in system.labels:
        names += [f"{_SCALAR_NAMES[k]}_{s}" for k in ("dot_in", "dot_out", "split", "merge")]
    names += [f"eta_{s},{t}" for s, t in system.finite_pairs()]
    names += [f"nu_{b}" for b in basis]
    return names


def _scalar_monomial(d: Diagram) -> Counter:
    """Product of the rescaling parameters picked up by ``d``, as exponents."""
    out: Counter = Counter()
    for atom in d.atoms():
        if atom.kind == "id":
            continue
        if atom.kind == "vertex":
            out[f"eta_{atom.colors[0]},{atom.colors[1]}"] += 1
        elif atom.kind == "poly":
            # a rescaling acts on V by nu_b on each basis vector, multiplicatively on R
            for mono, _ in atom.poly.terms():
                for v, e in mono:
                    out[f"nu_{v}"] += e
        else:
            out[f"{_SCALAR_NAMES[atom.kind]}_{atom.color}"] += 1
    return out


def derive_scalar_constraints(system: CoxeterSystem, real: Realization | None = None) -> ConstraintSystem:
    """Multiplicative constraints on the rescaling parameters, in exponent form.

    A relation survives an object-fixing rescaling iff every term picks up
    the same product of parameters; each ratio gives one exponent row.
    """
    catalog = build_catalog(system, real)
    basis = real.basis if real is not None else tuple(root_name(s) for s in system.labels)
    unknowns = scalar_unknowns(system, basis)
    index = {u: i for i, u in enumerate(unknowns)}
    rows, seen = [], set()
    for rel in catalog:
        monos = [_scalar_monomial(d) for _, d in rel.expanded()]
        for mono in monos[1:]:
            row = [0] * len(unknowns)
            for k, e in mono.items():
                row[index[k]] += e
            for k, e in monos[0].items():
                row[index[k]] -= e
            key = tuple(row)
            if any(row) and key not in seen and tuple(-x for x in row) not in seen:
                seen.add(key)
                rows.append(row)
    return ConstraintSystem(unknowns, rows)


def scalar_to_grading_names(system: CoxeterSystem, basis: Sequence[str]) -> dict:
    mapping = {}
    for s in system.labels:
        mapping[f"kappa_{s}"] = f"f_{s}"
        mapping[f"lambda_{s}"] = f"g_{s}"
        mapping[f"sigma_{s}"] = f"split_{s}"
        mapping[f"mu_{s}"] = f"merge_{s}"
    for s, t in system.finite_pairs():
        mapping[f"eta_{s},{t}"] = f"h_{s},{t}"
    for b in basis:
        mapping[f"nu_{b}"] = f"v_{b}"
    return mapping


def compare_lattices(scalar: ConstraintSystem, grading: ConstraintSystem, mapping: dict) -> dict:
    """Row spaces and Smith invariants of the two constraint systems, side by side."""
    aligned = scalar.renamed(mapping).reordered(grading.unknowns)
    ga, gb = aligned.group(), grading.group()
    return {
        "same_row_space": same_lattice(aligned.rows, grading.rows, len(grading.unknowns)),
        "same_invariants": (ga.diagonal == gb.diagonal),
        "scalar_invariants": (ga.invariant_factors, ga.free_rank),
        "grading_invariants": (gb.invariant_factors, gb.free_rank),
    }
