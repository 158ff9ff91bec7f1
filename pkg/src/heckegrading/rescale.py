"""Characters of grading groups and the rescalings they define.

A character sends each generator of a grading group to a nonzero rational
and every relator to 1.  The rescaling attached to a character multiplies a
homogeneous morphism by the character's value on its degree; it is
represented only through these scalars.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .abgroup import AbGroup, GroupElement, Hom, generates_whole_group
from .diagram import Diagram
from .grading import degree
from .relations import Relation, term_degrees


class CharacterError(ValueError):
    pass


def _power(x: Fraction, n: int) -> Fraction:
    return x ** n if n >= 0 else (1 / x) ** (-n)


@dataclass(frozen=True)
class Character:
    domain: AbGroup
    images: tuple  # one nonzero Fraction per generator

    def __post_init__(self):
        if len(self.images) != self.domain.ngens:
            raise CharacterError(f"need {self.domain.ngens} images, got {len(self.images)}")
        if any(x == 0 for x in self.images):
            raise CharacterError("character values must be nonzero")
        for rel in self.domain.rels:
            value = self._eval(rel)
            if value != 1:
                raise CharacterError(f"relator {list(rel)} maps to {value}, not 1")

    def _eval(self, coeffs) -> Fraction:
        out = Fraction(1)
        for c, x in zip(coeffs, self.images):
            if c:
                out *= _power(x, c)
        return out

    def __call__(self, elem: GroupElement) -> Fraction:
        if elem.group != self.domain:
            raise CharacterError("element outside the character's domain")
        return self._eval(elem.coeffs)

    def is_trivial(self) -> bool:
        return all(x == 1 for x in self.images)

    def pullback(self, h: Hom) -> "Character":
        """``self ∘ h``."""
        if h.target != self.domain:
            raise CharacterError("homomorphism does not land in the character's domain")
        return Character(h.source, tuple(self(im) for im in h.images))

    def image_map(self) -> dict:
        return dict(zip(self.domain.gens, self.images))

    def to_json(self) -> dict:
        return {"images": {g: str(x) for g, x in self.image_map().items()}}


def character(group: AbGroup, images) -> Character:
    """Validated character; ``images`` is a list or a generator-name map."""
    if isinstance(images, Mapping):
        missing = [g for g in group.gens if g not in images]
        if missing:
            raise CharacterError(f"no image given for {missing}")
        images = [images[g] for g in group.gens]
    return Character(group, tuple(Fraction(x) for x in images))


def trivial_character(group: AbGroup) -> Character:
    return Character(group, (Fraction(1),) * group.ngens)


@dataclass(frozen=True)
class ScaledMorphism:
    scalar: Fraction
    diagram: Diagram

    def __post_init__(self):
        if self.scalar == 0:
            raise CharacterError("a rescaled morphism has a nonzero scalar")


def theta_apply(chi: Character, d: Diagram, a) -> ScaledMorphism:
    if chi.domain != a.group:
        raise CharacterError("character and grading live on different groups")
    return ScaledMorphism(chi(degree(d, a)), d)


def relation_preserved(chi: Character, rel: Relation, a) -> bool:
    scalars = {chi(deg) for deg, _, _ in term_degrees(rel, a)}
    return len(scalars) <= 1


# ---------------------------------------------------------------------------
# classification

@dataclass
class CharacterStructure:
    free_rank: int
    torsion: tuple  # invariant factors
    torsion_choices: tuple  # number of admissible signs per torsion factor
    group: AbGroup

    @property
    def finite_count(self) -> int | None:
        """Number of characters when there is no free part."""
        if self.free_rank:
            return None
        out = 1
        for c in self.torsion_choices:
            out *= c
        return out

    def parameter_slots(self) -> list:
        """``(index, kind)`` for each Smith coordinate that carries a choice."""
        slots = []
        for i, d in enumerate(self.group.diagonal):
            if d == 0:
                slots.append((i, "free"))
            elif d > 1:
                slots.append((i, "sign" if d % 2 == 0 else "fixed"))
        return slots

    def character(self, params: Sequence) -> Character:
        """Character from one value per entry of :meth:`parameter_slots`.

        Free slots take any nonzero rational, sign slots take +-1, fixed
        slots must be 1.
        """
        slots = self.parameter_slots()
        if len(params) != len(slots):
            raise CharacterError(f"need {len(slots)} parameters, got {len(params)}")
        values = [Fraction(1)] * self.group.ngens
        for (i, kind), p in zip(slots, params):
            p = Fraction(p)
            if kind == "sign" and p not in (1, -1):
                raise CharacterError("torsion of even order admits only +-1")
            if kind == "fixed" and p != 1:
                raise CharacterError("torsion of odd order admits only 1")
            if p == 0:
                raise CharacterError("parameters must be nonzero")
            values[i] = p
        # generator j has Smith coordinates given by row j of V
        _, _, v = self.group.snf
        images = []
        for j in range(self.group.ngens):
            x = Fraction(1)
            for i in range(self.group.ngens):
                if v[j][i]:
                    x *= _power(values[i], v[j][i])
            images.append(x)
        return Character(self.group, tuple(images))

    def random_character(self, rng: random.Random, max_num: int = 7) -> Character:
        params = []
        for _, kind in self.parameter_slots():
            if kind == "free":
                num = rng.randint(1, max_num) * rng.choice((1, -1))
                params.append(Fraction(num, rng.randint(1, max_num)))
            elif kind == "sign":
                params.append(rng.choice((1, -1)))
            else:
                params.append(1)
        return self.character(params)

    def summary(self) -> str:
        parts = [f"free rank {self.free_rank}"]
        if self.torsion:
            parts.append("torsion " + " x ".join(f"Z/{d}" for d in self.torsion))
        desc = f"rational characters: {self.free_rank} free parameters"
        signs = sum(1 for c in self.torsion_choices if c == 2)
        if signs:
            desc += f" x {signs} sign choices"
        if not self.free_rank:
            desc = f"rational characters: exactly {self.finite_count}"
        return "; ".join(parts) + "; " + desc


def classify_characters(group: AbGroup) -> CharacterStructure:
    """Characters into the nonzero rationals, whose torsion is {+1, -1}."""
    torsion = group.invariant_factors
    return CharacterStructure(group.free_rank, torsion,
                              tuple(2 if d % 2 == 0 else 1 for d in torsion), group)


# ---------------------------------------------------------------------------
# identity criterion

def _hypothesis_elements(group: AbGroup, labels, gamma_gens) -> list:
    return [group.gen(f"f_{s}") for s in labels] + [group.gen(g) for g in gamma_gens]


def identity_criterion(group: AbGroup, labels, gamma_gens, chi: Character) -> bool:
    """For a character fixing every start dot and every degree of V, is it trivial?"""
    if chi.domain != group:
        raise CharacterError("character domain does not match the grading group")
    for e in _hypothesis_elements(group, labels, gamma_gens):
        if chi(e) != 1:
            raise CharacterError(f"hypothesis fails: character is {chi(e)} on {e.as_combination()}")
    return chi.is_trivial() and all(chi(g) == 1 for g in group.generators())


def identity_criterion_universal(group: AbGroup, labels, gamma_gens) -> tuple:
    """Whether every character satisfying the hypotheses is trivial.

    True iff the start-dot degrees and the degrees of V generate the whole
    group.  Returns ``(answer, quotient)``.
    """
    return generates_whole_group(group, _hypothesis_elements(group, labels, gamma_gens))


def characters_fixing(group: AbGroup, labels, gamma_gens):
    """Structure of the characters satisfying the hypotheses, with the projection.

    These are exactly the characters of the quotient by the hypothesis
    elements, pulled back along the projection.
    """
    q, proj = group.quotient(_hypothesis_elements(group, labels, gamma_gens))
    return classify_characters(q), proj
