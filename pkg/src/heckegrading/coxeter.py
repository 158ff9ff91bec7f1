"""Coxeter systems, realizations and the polynomial ring R = Sym(V).

A realization is stored by the simple roots (linear forms in a chosen basis
of V) and the coroots (linear functionals given by their values on that
basis).  The reflection ``s`` acts on V by ``v -> v - <coroot_s, v> alpha_s``
and on R multiplicatively.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .abgroup import AbGroup, GroupElement
from .polynomial import Polynomial

INF = math.inf

# m -> (a_st, a_ts) with a_st * a_ts = 4cos^2(pi/m); rational only for these m
_STANDARD_CARTAN = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}


class CoxeterError(ValueError):
    pass


def _parse_m(x):
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "∞")):
        return INF
    if isinstance(x, float) and math.isinf(x):
        return INF
    if isinstance(x, float) and not x.is_integer():
        raise CoxeterError(f"non-integer Coxeter matrix entry {x}")
    return int(x)


def alternating(a: str, b: str, length: int) -> tuple:
    """The word ``a b a b ...`` of the given length."""
    return tuple(a if i % 2 == 0 else b for i in range(length))


@dataclass(frozen=True)
class CoxeterSystem:
    labels: tuple
    m: tuple  # symmetric matrix, INF for no relation

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise CoxeterError(f"duplicate labels in {self.labels}")
        for lab in self.labels:
            if not isinstance(lab, str) or not lab or not (lab.replace("_", "a").isalnum()):
                raise CoxeterError(f"label {lab!r} must be a nonempty identifier")
        if len(self.m) != n or any(len(row) != n for row in self.m):
            raise CoxeterError(f"Coxeter matrix must be {n}x{n}")
        for i in range(n):
            if self.m[i][i] != 1:
                raise CoxeterError(f"m_{self.labels[i]}{self.labels[i]} = {self.m[i][i]}, expected 1")
            for j in range(n):
                if self.m[i][j] != self.m[j][i]:
                    raise CoxeterError(f"Coxeter matrix is not symmetric at ({i},{j})")
                if i != j and self.m[i][j] < 2:
                    raise CoxeterError(
                        f"m_{self.labels[i]}{self.labels[j]} = {self.m[i][j]}, expected >= 2")

    def index(self, s: str) -> int:
        try:
            return self.labels.index(s)
        except ValueError:
            raise CoxeterError(f"unknown color {s!r}") from None

    def mst(self, s: str, t: str):
        return self.m[self.index(s)][self.index(t)]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def finite_pairs(self):
        """Ordered pairs ``(s, t)``, ``s != t``, with finite ``m_st``."""
        return [(s, t) for s in self.labels for t in self.labels
                if s != t and self.mst(s, t) != INF]

    def unordered_pairs(self):
        return [(s, t) for i, s in enumerate(self.labels) for t in self.labels[i + 1:]]

    def to_json(self) -> dict:
        return {"labels": list(self.labels),
                "m": [["inf" if x == INF else x for x in row] for row in self.m]}


def new_coxeter_system(labels: Sequence[str], matrix) -> CoxeterSystem:
    labels = tuple(labels)
    if len(matrix) != len(labels) or any(len(r) != len(labels) for r in matrix):
        raise CoxeterError(f"matrix must be square of size {len(labels)}")
    return CoxeterSystem(labels, tuple(tuple(_parse_m(x) for x in row) for row in matrix))


def connected_components(system: CoxeterSystem) -> list:
    """Components of the graph with an edge whenever ``m_st >= 3``."""
    parent = {s: s for s in system.labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in system.unordered_pairs():
        if system.mst(s, t) >= 3:
            parent[find(s)] = find(t)
    groups: dict = {}
    for s in system.labels:
        groups.setdefault(find(s), []).append(s)
    return [tuple(g) for g in groups.values()]


def root_name(s: str) -> str:
    return f"a_{s}"


@dataclass(frozen=True)
class Realization:
    system: CoxeterSystem
    basis: tuple
    alpha: Mapping  # s -> Polynomial (linear form in basis)
    coroot: Mapping  # s -> {basis name: Fraction}

    def __post_init__(self):
        sys_ = self.system
        if set(self.alpha) != set(sys_.labels) or set(self.coroot) != set(sys_.labels):
            raise CoxeterError("roots and coroots must be given for every simple reflection")
        for s in sys_.labels:
            extra = self.alpha[s].variables() - set(self.basis)
            if extra:
                raise CoxeterError(f"alpha_{s} uses unknown basis elements {sorted(extra)}")
            if set(self.coroot[s]) - set(self.basis):
                raise CoxeterError(f"coroot of {s} uses unknown basis elements")
        for s in sys_.labels:
            for t in sys_.labels:
                a = self.pairing(s, self.alpha[t])
                if s == t and a != 2:
                    raise CoxeterError(f"<coroot_{s}, alpha_{s}> = {a}, expected 2")
                if s != t and (a == 0) != (sys_.mst(s, t) == 2):
                    raise CoxeterError(
                        f"<coroot_{s}, alpha_{t}> = {a} but m_{s}{t} = {sys_.mst(s, t)}: "
                        "the pairing must vanish exactly when m = 2")

    def pairing(self, s: str, linear: Polynomial) -> Fraction:
        cr = self.coroot[s]
        return sum((c * cr.get(v, Fraction(0)) for v, c in linear.linear_coefficients().items()),
                   Fraction(0))

    def cartan(self) -> list:
        labs = self.system.labels
        return [[self.pairing(s, self.alpha[t]) for t in labs] for s in labs]

    def check_variables(self, p: Polynomial) -> None:
        unknown = p.variables() - set(self.basis)
        if unknown:
            raise CoxeterError(f"unknown variable(s) {sorted(unknown)}")

    def reflection_images(self, s: str) -> dict:
        a = self.alpha[s]
        cr = self.coroot[s]
        return {b: Polynomial.var(b) - a * cr.get(b, Fraction(0)) for b in self.basis}


def root_realization(system: CoxeterSystem, cartan=None) -> Realization:
    """Realization with basis the simple roots ``a_s``; ``cartan[s][t] = <coroot_s, alpha_t>``.

    Without an explicit Cartan matrix the standard crystallographic values
    are used; for ``m_st`` in {4, 6} the longer root sits on the earlier label.
    """
    labs = system.labels
    n = len(labs)
    if cartan is None:
        cartan = [[Fraction(2) if i == j else None for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m = system.m[i][j]
                if m == INF:
                    raise CoxeterError(
                        f"m_{labs[i]}{labs[j]} = inf: supply a Cartan matrix explicitly")
                if m not in _STANDARD_CARTAN:
                    raise CoxeterError(
                        f"m_{labs[i]}{labs[j]} = {m} has no rational Cartan entries; "
                        "supply a rational Cartan matrix explicitly")
                a, b = _STANDARD_CARTAN[m]
                cartan[i][j], cartan[j][i] = Fraction(a), Fraction(b)
    else:
        cartan = [[_rational(x) for x in row] for row in cartan]
        if len(cartan) != n or any(len(r) != n for r in cartan):
            raise CoxeterError(f"Cartan matrix must be {n}x{n}")
        for i in range(n):
            if cartan[i][i] != 2:
                raise CoxeterError(f"Cartan diagonal entry for {labs[i]} is {cartan[i][i]}, expected 2")
    basis = tuple(root_name(s) for s in labs)
    alpha = {s: Polynomial.var(root_name(s)) for s in labs}
    coroot = {s: {root_name(t): cartan[i][j] for j, t in enumerate(labs)}
              for i, s in enumerate(labs)}
    return Realization(system, basis, alpha, coroot)


def reflect(real: Realization, s: str, p: Polynomial) -> Polynomial:
    real.check_variables(p)
    if not p.variables():
        return p
    return p.substitute(real.reflection_images(s))


def demazure(real: Realization, s: str, p: Polynomial) -> Polynomial:
    """``(p - s(p)) / alpha_s``."""
    return (p - reflect(real, s, p)).divide_linear(real.alpha[s])


# ---------------------------------------------------------------------------
# gradings on V

@dataclass(frozen=True)
class VGrading:
    target: AbGroup
    deg_basis: Mapping  # basis name -> GroupElement of target

    def degree_of_monomial(self, mono) -> GroupElement:
        out = self.target.zero()
        for v, e in mono:
            out = out + self.deg_basis[v] * e
        return out

    def degrees(self, p: Polynomial) -> list:
        """Distinct degrees of the monomials of ``p``, in term order."""
        seen = []
        for mono, _ in p.terms():
            d = self.degree_of_monomial(mono)
            if d not in seen:
                seen.append(d)
        return seen


@dataclass
class CheckResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)


@dataclass
class ValidationReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        lines = []
        for c in self.checks:
            lines.append(f"{'ok  ' if c.passed else 'FAIL'} {c.name}")
            lines.extend(f"     {w}" for w in c.witnesses)
        return "\n".join(lines)


def root_degree(real: Realization, vg: VGrading, s: str):
    """Degree of alpha_s, or None if alpha_s is not homogeneous."""
    degs = vg.degrees(real.alpha[s])
    return degs[0] if len(degs) == 1 else None


def validate_v_grading(real: Realization, vg: VGrading) -> ValidationReport:
    if set(vg.deg_basis) != set(real.basis):
        missing = set(real.basis) - set(vg.deg_basis)
        return ValidationReport([CheckResult("basis coverage", False,
                                             [f"missing degrees for {sorted(missing)}"])])
    labs = real.system.labels

    homog = CheckResult("roots homogeneous", True)
    for s in labs:
        degs = vg.degrees(real.alpha[s])
        if len(degs) > 1:
            homog.passed = False
            homog.witnesses.append(
                f"alpha_{s} = {real.alpha[s]} has degrees {[d.as_combination() for d in degs]}")

    equal = CheckResult("deg(alpha_s) = deg(alpha_t) when m_st != 2", True)
    for s, t in real.system.unordered_pairs():
        if real.system.mst(s, t) == 2:
            continue
        ds, dt = root_degree(real, vg, s), root_degree(real, vg, t)
        if ds is None or dt is None or ds != dt:
            equal.passed = False
            show = lambda d: "inhomogeneous" if d is None else d.as_combination()
            equal.witnesses.append(
                f"m_{s}{t} = {real.system.mst(s, t)}: deg(alpha_{s}) = {show(ds)}, "
                f"deg(alpha_{t}) = {show(dt)}")

    winv = CheckResult("W-invariant", True)
    for s in labs:
        images = real.reflection_images(s)
        for b in real.basis:
            target = vg.deg_basis[b]
            bad = [d for d in vg.degrees(images[b]) if d != target]
            if bad:
                winv.passed = False
                winv.witnesses.append(
                    f"{s}({b}) = {images[b]} has a term of degree {bad[0].as_combination()}, "
                    f"expected {target.as_combination()}")
    return ValidationReport([homog, equal, winv])


def uniform_v_grading(real: Realization, gamma: AbGroup | None = None, value=None) -> VGrading:
    """Every basis vector of V in the same degree (default: 1 in Z)."""
    if gamma is None:
        gamma = AbGroup.free(["gamma"])
    if value is None:
        value = gamma.gen(0)
    elif not isinstance(value, GroupElement):
        value = gamma.element(value)
    return VGrading(gamma, {b: value for b in real.basis})


# ---------------------------------------------------------------------------
# JSON input

def _rational(x) -> Fraction:
    return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)


def system_from_json(data: Mapping) -> CoxeterSystem:
    return new_coxeter_system(data["labels"], data["m"])


def realization_from_json(data: Mapping, system: CoxeterSystem | None = None):
    """Realization described by a Coxeter JSON document, or None.

    ``cartan`` gives a root realization; ``basis``/``alpha``/``coroot`` give a
    general one.  With neither, the standard root realization is attempted and
    None is returned when it does not exist (group-level work only).
    """
    system = system or system_from_json(data)
    if "basis" in data:
        basis = tuple(data["basis"])
        alpha = {s: Polynomial.linear({b: _rational(c) for b, c in data["alpha"][s].items()})
                 for s in system.labels}
        coroot = {s: {b: _rational(c) for b, c in data["coroot"][s].items()}
                  for s in system.labels}
        return Realization(system, basis, alpha, coroot)
    if "cartan" in data and data["cartan"] is not None:
        return root_realization(system, data["cartan"])
    try:
        return root_realization(system)
    except CoxeterError:
        return None


def load_coxeter(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    system = system_from_json(data)
    return system, realization_from_json(data, system)
