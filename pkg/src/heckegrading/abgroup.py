"""Finitely presented abelian groups over the integers.

A group is given by named generators and a matrix of relators (one row per
relator).  Everything is canonicalised through the Smith normal form of the
relator matrix, computed once at construction time.

>>> G = AbGroup.presented(["x", "y"], [[2, 0], [0, 3]])
>>> G.invariant_factors, G.free_rank
((6,), 0)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

IntMatrix = list  # list[list[int]]


# ---------------------------------------------------------------------------
# integer matrix helpers

def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix, inner: int | None = None) -> IntMatrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(m: IntMatrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries and ``D[i][i]`` divides ``D[i+1][i+1]``.  The pivot at each stage
    is the entry of smallest nonzero absolute value in the remaining block,
    ties going to the first in row-major order.

    ``ncols`` is only needed when ``m`` has no rows.
    """
    rows = len(m)
    cols = len(m[0]) if rows else (ncols or 0)
    d = [[int(x) for x in r] for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        d[dst] = [a + k * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        for r in d:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if not dirty:
                # divisibility: any entry of the block not divisible by p
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if d[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # a remainder survived; move the smallest entry of row/col t to the pivot
            best = (t, t)
            for i in range(t + 1, rows):
                if d[i][t] and abs(d[i][t]) < abs(d[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, cols):
                if d[t][j] and abs(d[t][j]) < abs(d[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                swap_rows(t, best[0])
            elif best[1] != t:
                swap_cols(t, best[1])
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Row-style Hermite normal form with zero rows removed.

    Two integer matrices have the same row lattice iff their HNFs are equal.
    """
    pool = [[int(x) for x in r] for r in rows if any(r)]
    out: IntMatrix = []
    for col in range(ncols):
        while True:
            nz = [i for i, r in enumerate(pool) if r[col]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda i: abs(pool[i][col]))
            for i in nz:
                if i != p:
                    q = pool[i][col] // pool[p][col]
                    pool[i] = [x - q * y for x, y in zip(pool[i], pool[p])]
        if nz:
            pivot = pool.pop(nz[0])
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            for i, r in enumerate(out):
                q = r[col] // pivot[col]
                out[i] = [x - q * y for x, y in zip(r, pivot)]
            out.append(pivot)
        pool = [r for r in pool if any(r)]
    return out


# ---------------------------------------------------------------------------
# groups

class HomomorphismError(ValueError):
    """Generator images do not kill every relator."""


@dataclass(frozen=True)
class AbGroup:
    """Abelian group ``Z^gens / rowspace(rels)``.

    Two groups are equal when their presentations agree (same generator
    names, same relator rows); isomorphism is a separate question.
    """

    gens: tuple
    rels: tuple  # tuple of relator rows
    _snf: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.gens)
        if len(set(self.gens)) != n:
            raise ValueError(f"duplicate generator names in {self.gens}")
        for r in self.rels:
            if len(r) != n:
                raise ValueError(f"relator {list(r)} has {len(r)} entries, expected {n}")
        object.__setattr__(self, "_snf", smith_normal_form([list(r) for r in self.rels], n))

    @classmethod
    def presented(cls, gens, rels=()) -> "AbGroup":
        if isinstance(gens, int):
            gens = [f"x{i}" for i in range(gens)]
        return cls(tuple(gens), tuple(tuple(int(x) for x in r) for r in rels))

    @classmethod
    def free(cls, gens) -> "AbGroup":
        return cls.presented(gens, ())

    @classmethod
    def product(cls, *groups: "AbGroup") -> "AbGroup":
        gens, rels, offset = [], [], 0
        total = sum(len(g.gens) for g in groups)
        for g in groups:
            gens.extend(g.gens)
            for r in g.rels:
                rels.append([0] * offset + list(r) + [0] * (total - offset - len(r)))
            offset += len(g.gens)
        return cls.presented(gens, rels)

    # -- structure ----------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.gens)

    @cached_property
    def diagonal(self) -> tuple:
        """Diagonal of the Smith form, padded with zeros to ``ngens``."""
        _, d, _ = self._snf
        diag = [d[i][i] for i in range(min(len(d), self.ngens))]
        return tuple(diag + [0] * (self.ngens - len(diag)))

    @property
    def invariant_factors(self) -> tuple:
        """Torsion invariant factors (entries > 1 of the Smith diagonal)."""
        return tuple(x for x in self.diagonal if x > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for x in self.diagonal if x == 0)

    @property
    def snf(self):
        return self._snf

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) or "0"

    # -- elements -----------------------------------------------------------
    def element(self, coeffs) -> "GroupElement":
        if isinstance(coeffs, Mapping):
            vec = [0] * self.ngens
            for name, c in coeffs.items():
                vec[self.index(name)] += int(c)
            coeffs = vec
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.ngens:
            raise ValueError(f"expected {self.ngens} coefficients, got {len(coeffs)}")
        return GroupElement(self, coeffs)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def gen(self, name_or_index) -> "GroupElement":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return GroupElement(self, tuple(int(j == i) for j in range(self.ngens)))

    def generators(self) -> list:
        return [self.gen(i) for i in range(self.ngens)]

    def index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None

    def canonical(self, coeffs) -> tuple:
        """Unique representative: SNF coordinates, reduced mod the invariant factors."""
        _, _, v = self._snf
        y = [sum(coeffs[k] * v[k][j] for k in range(self.ngens)) for j in range(self.ngens)]
        out = []
        for yj, dj in zip(y, self.diagonal):
            if dj == 0:
                out.append(yj)
            else:
                out.append(yj % dj)
        return tuple(out)

    def coordinates(self, coeffs) -> tuple:
        """Canonical form with the always-zero (unit factor) slots dropped."""
        can = self.canonical(coeffs)
        return tuple(c for c, d in zip(can, self.diagonal) if d != 1)

    # -- constructions ------------------------------------------------------
    def quotient(self, elems) -> tuple:
        """Quotient by the subgroup generated by ``elems``.

        Returns ``(Q, projection)`` where the projection sends each generator
        to the generator of the same name.
        """
        rows = [list(r) for r in self.rels]
        for e in elems:
            if e.group != self:
                raise ValueError("element does not belong to this group")
            rows.append(list(e.coeffs))
        q = AbGroup.presented(self.gens, rows)
        return q, Hom(self, q, tuple(q.generators()))

    def to_json(self) -> dict:
        return {"gens": list(self.gens), "rels": [list(r) for r in self.rels]}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbGroup":
        gens = data["gens"]
        return cls.presented(gens, data.get("rels", []))

    def __repr__(self):
        return f"AbGroup({self.describe()}, gens={list(self.gens)})"


def presented_group(n_gens, rels=()) -> AbGroup:
    return AbGroup.presented(n_gens, rels)


def quotient(group: AbGroup, elems):
    return group.quotient(elems)


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: AbGroup
    coeffs: tuple

    @cached_property
    def canonical(self) -> tuple:
        return self.group.canonical(self.coeffs)

    def _check(self, other):
        if not isinstance(other, GroupElement):
            return False
        if other.group != self.group:
            raise ValueError("elements of different groups")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int):
        return GroupElement(self.group, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash((self.group.gens, self.canonical))

    def is_zero(self) -> bool:
        return not any(self.canonical)

    def coordinates(self) -> tuple:
        return self.group.coordinates(self.coeffs)

    def as_combination(self) -> str:
        """Readable form in generator names, e.g. ``g_s - g_t``."""
        parts = []
        for name, c in zip(self.group.gens, self.coeffs):
            if not c:
                continue
            body = name if abs(c) == 1 else f"{abs(c)}*{name}"
            sign = "-" if c < 0 else "+"
            parts.append(("-" + body) if (not parts and c < 0) else body if not parts else f"{sign} {body}")
        return " ".join(parts) or "0"

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coordinates()) + ")"

    def __repr__(self):
        return f"GroupElement({self.as_combination()} in {self.group.describe()})"


@dataclass(frozen=True, eq=False)
class Hom:
    """Homomorphism given by the images of the source generators."""

    source: AbGroup
    target: AbGroup
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise ValueError(f"need {self.source.ngens} images, got {len(self.images)}")
        for im in self.images:
            if im.group != self.target:
                raise ValueError("image outside the target group")
        for rel in self.source.rels:
            if not self._apply(rel).is_zero():
                raise HomomorphismError(
                    f"not a homomorphism: relator {list(rel)} maps to {self._apply(rel).as_combination()}")

    def _apply(self, coeffs) -> GroupElement:
        out = [0] * self.target.ngens
        for c, im in zip(coeffs, self.images):
            if c:
                for j, x in enumerate(im.coeffs):
                    out[j] += c * x
        return GroupElement(self.target, tuple(out))

    def __call__(self, elem: GroupElement) -> GroupElement:
        if elem.group != self.source:
            raise ValueError("element outside the source group")
        return self._apply(elem.coeffs)

    def then(self, other: "Hom") -> "Hom":
        """``other ∘ self``."""
        if other.source != self.target:
            raise ValueError("composition: groups do not match")
        return Hom(self.source, other.target, tuple(other(im) for im in self.images))

    def is_identity_on_generators(self) -> bool:
        return self.source == self.target and all(
            self(g) == g for g in self.source.generators())


def hom(source: AbGroup, target: AbGroup, gen_images) -> Hom:
    """Validated homomorphism; ``gen_images`` is a list or a name-keyed map.

    Images may be GroupElements of ``target`` or raw coefficient vectors.
    """
    if isinstance(gen_images, Mapping):
        gen_images = [gen_images[name] for name in source.gens]
    images = tuple(im if isinstance(im, GroupElement) else target.element(im) for im in gen_images)
    return Hom(source, target, images)


def generates_whole_group(group: AbGroup, elems) -> tuple:
    """Decide whether ``elems`` generate ``group``.

    Returns ``(answer, certificate)`` where the certificate is the quotient
    group by the subgroup generated; the answer is True iff it is trivial.
    """
    q, _ = group.quotient(elems)
    return q.is_trivial(), q


def same_lattice(rows_a, rows_b, ncols: int) -> bool:
    return hermite_normal_form(rows_a, ncols) == hermite_normal_form(rows_b, ncols)

