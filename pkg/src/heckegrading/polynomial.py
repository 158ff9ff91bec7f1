"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials are immutable and hashable.  Variables are plain strings (the
names of a basis of V); a monomial is stored as a sorted tuple of
``(variable, exponent)`` pairs.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

_ONE: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_key(m: Monomial):
    # graded, then lexicographic on the sorted variable list
    return (sum(e for _, e in m), m)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a Fraction."""
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                mono = tuple(sorted((v, e) for v, e in mono if e))
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls({_ONE: c})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): 1})

    @classmethod
    def linear(cls, coeffs: Mapping[str, Scalar]) -> "Polynomial":
        return cls({((v, 1),): c for v, c in coeffs.items()})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return _Parser(text).parse()

    # -- inspection --------------------------------------------------------
    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        for m in sorted(self._terms, key=_mono_key):
            yield m, self._terms[m]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Polynomial degree (each variable counts 1)."""
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def linear_coefficients(self) -> dict[str, Fraction]:
        """Coefficients of a homogeneous linear form."""
        out = {}
        for m, c in self._terms.items():
            if len(m) != 1 or m[0][1] != 1:
                raise ValueError(f"{self} is not a linear form")
            out[m[0][0]] = c
        return out

    def monomials(self) -> list["Polynomial"]:
        """The polynomial split into its nonzero terms."""
        return [Polynomial({m: c}) for m, c in self.terms()]

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        out = Polynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending each variable ``v`` to ``images[v]``.

        Variables missing from ``images`` are left unchanged.
        """
        out = Polynomial()
        for mono, c in self._terms.items():
            term = Polynomial.constant(c)
            for v, e in mono:
                term = term * images.get(v, Polynomial.var(v)) ** e
            out = out + term
        return out

    def divide_linear(self, form: "Polynomial") -> "Polynomial":
        """Exact quotient by a nonzero linear form.

        Raises ValueError if the division leaves a remainder.
        """
        coeffs = form.linear_coefficients()
        if not coeffs:
            raise ZeroDivisionError("division by the zero form")
        x = min(coeffs)
        lead = coeffs[x]
        quotient = Polynomial()
        rem = dict(self._terms)
        while True:
            with_x = [m for m in rem if dict(m).get(x, 0) > 0]
            if not with_x:
                break
            mono = max(with_x, key=lambda m: (dict(m)[x], _mono_key(m)))
            exps = dict(mono)
            exps[x] -= 1
            t = Polynomial({tuple(sorted(exps.items())): rem[mono] / lead})
            quotient = quotient + t
            rem = dict((Polynomial(rem) - t * form)._terms)
        if rem:
            raise ValueError(f"{self} is not divisible by {form}; remainder {Polynomial(rem)}")
        return quotient

    # -- comparison / display ------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    return NotImplemented


def poly_sum(items: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial()
    for p in items:
        out = out + p
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """Recursive descent for ``expr := term (('+'|'-') term)*``,
    ``term := factor ('*' factor)*``, ``factor := atom ('^' int)?``."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", num, m.start(1)))
            elif name is not None:
                self.tokens.append(("var", name, m.start(2)))
            elif op is not None and not op.isspace():
                self.tokens.append(("op", op, m.start(3)))
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, msg):
        tok = self._peek()
        where = tok[2] if tok else len(self.text)
        raise ValueError(f"polynomial syntax error at column {where} in {self.text!r}: {msg}")

    def _accept(self, op):
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == op:
            self.pos += 1
            return True
        return False

    def parse(self) -> Polynomial:
        if not self.tokens:
            self._fail("empty expression")
        p = self._expr()
        if self._peek() is not None:
            self._fail("unexpected token")
        return p

    def _expr(self):
        if self._accept("-"):
            p = -self._term()
        else:
            self._accept("+")
            p = self._term()
        while True:
            if self._accept("+"):
                p = p + self._term()
            elif self._accept("-"):
                p = p - self._term()
            else:
                return p

    def _term(self):
        p = self._factor()
        while self._accept("*"):
            p = p * self._factor()
        return p

    def _factor(self):
        tok = self._peek()
        if tok is None:
            self._fail("unexpected end")
        if tok[0] == "num":
            self.pos += 1
            base = Polynomial.constant(parse_rational(tok[1]))
        elif tok[0] == "var":
            self.pos += 1
            base = Polynomial.var(tok[1])
        elif self._accept("("):
            base = self._expr()
            if not self._accept(")"):
                self._fail("expected ')'")
        else:
            self._fail(f"unexpected {tok[1]!r}")
        if self._accept("^"):
            tok = self._peek()
            if tok is None or tok[0] != "num" or "/" in tok[1]:
                self._fail("exponent must be a non-negative integer")
            self.pos += 1
            base = base ** int(tok[1])
        return base
