"""Partitions, graded polynomials with exact coefficients, and the s_I polynomials.

s_I(sigma_1, ..., sigma_n) is the unique polynomial with s_I(sigma(t)) = sum t^I. It is
found by expanding the monomial symmetric polynomial in n variables and solving for
its coordinates in the basis of sigma-monomials of weight n.

Coefficients are kept as Fraction keyed by sparse monomials; products, powers,
substitution and evaluation run through sympy.Poly over QQ.
"""

from __future__ import annotations

import logging
import operator
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

import sympy
from sympy.polys.specialpolys import symmetric_poly
from sympy.utilities.iterables import multiset_permutations, partitions

from .errors import InvalidInput, ParseError
from .exactnum import format_rational, from_sympy, rank, solve_linear, to_sympy


logger = logging.getLogger("exotica.symmpoly")

# Sparse monomial: sorted (variable index, exponent) pairs with exponent > 0.
Monomial = tuple[tuple[int, int], ...]

PARTITION_RE = re.compile(r"^\(?\s*(\d+(?:\s*,\s*\d+)*)?\s*,?\s*\)?$")


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(p <= 0 for p in self.parts):
            raise InvalidInput(f"partition parts must be positive: {self.parts}")
        if list(self.parts) != sorted(self.parts):
            raise InvalidInput(f"partition parts must be nondecreasing: {self.parts}")

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(sorted(parts)))

    @classmethod
    def parse(cls, text: str) -> Partition:
        m = PARTITION_RE.match(text.strip())
        if not m:
            raise ParseError(f"not a partition: {text!r}")
        body = m.group(1)
        if not body:
            return cls()
        return cls.of(*(int(p) for p in body.split(",")))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, sorted lexicographically on their nondecreasing parts."""
    if n < 0:
        raise InvalidInput(f"cannot partition a negative number: {n}")
    if n == 0:
        return [Partition()]
    # sympy reuses the yielded dict, so each one is flattened before the next
    found = [Partition.of(*(part for part, count in p.items() for _ in range(count))) for p in partitions(n)]
    return sorted(found)


@dataclass(frozen=True, eq=False)
class GradedPolynomial:
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert len(self.variables) == len(self.weights), "one weight per variable"
        cleaned = {mono: Fraction(c) for mono, c in self.terms.items() if c != 0}
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def constant(cls, value: Fraction | int, variables: tuple[str, ...] = (), weights: tuple[int, ...] = ()) -> GradedPolynomial:
        return cls(variables, weights, {(): Fraction(value)})

    @classmethod
    def zero(cls, variables: tuple[str, ...] = (), weights: tuple[int, ...] = ()) -> GradedPolynomial:
        return cls(variables, weights, {})

    @classmethod
    def variable(cls, name: str, variables: tuple[str, ...], weights: tuple[int, ...]) -> GradedPolynomial:
        index = variables.index(name)
        return cls(variables, weights, {((index, 1),): Fraction(1)})

    @property
    def gens(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(name) for name in self.variables)

    def as_poly(self) -> sympy.Poly:
        assert self.variables, "a polynomial over no variables has no sympy form"
        coefficients = {self.exponents(mono): to_sympy(c) for mono, c in self.terms.items()}
        return sympy.Poly.from_dict(coefficients, *self.gens, domain=sympy.QQ)

    def from_poly(self, poly: sympy.Poly) -> GradedPolynomial:
        """Read a sympy polynomial over this ring's generators back into sparse form."""
        assert poly.gens == self.gens, f"generators {poly.gens} do not match {self.variables}"
        terms = {
            tuple((i, e) for i, e in enumerate(exponents) if e): from_sympy(c) for exponents, c in poly.terms()
        }
        return self._like(terms)

    def _like(self, terms: Mapping[Monomial, Fraction]) -> GradedPolynomial:
        return GradedPolynomial(self.variables, self.weights, terms)

    def _coerce(self, other: GradedPolynomial | Fraction | int) -> GradedPolynomial:
        if isinstance(other, GradedPolynomial):
            if other.variables != self.variables:
                if not other.terms or set(other.terms) == {()}:
                    return self._like(other.terms)
                raise InvalidInput(f"polynomials over different variables: {self.variables} vs {other.variables}")
            return other
        return self._like({(): Fraction(other)})

    def _combine(self, other: GradedPolynomial | Fraction | int, op: Callable) -> GradedPolynomial:
        other = self._coerce(other)
        if not self.variables:
            return self._like({(): op(self.terms.get((), Fraction(0)), other.terms.get((), Fraction(0)))})
        return self.from_poly(op(self.as_poly(), other.as_poly()))

    def __add__(self, other: GradedPolynomial | Fraction | int) -> GradedPolynomial:
        return self._combine(other, operator.add)

    __radd__ = __add__

    def __neg__(self) -> GradedPolynomial:
        return self._like({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other: GradedPolynomial | Fraction | int) -> GradedPolynomial:
        return self._combine(other, operator.sub)

    def __rsub__(self, other: Fraction | int) -> GradedPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other: GradedPolynomial | Fraction | int) -> GradedPolynomial:
        return self._combine(other, operator.mul)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> GradedPolynomial:
        assert exponent >= 0, "only nonnegative powers"
        if not self.variables:
            return self._like({(): self.terms.get((), Fraction(0)) ** exponent})
        return self.from_poly(self.as_poly() ** exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._like({(): Fraction(other)})
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        constant_only = all(not mono for mono in self.terms)
        return self.terms == other.terms and (self.variables == other.variables or constant_only)

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self, mono: Monomial) -> tuple[int, ...]:
        dense = [0] * len(self.variables)
        for index, exp in mono:
            dense[index] = exp
        return tuple(dense)

    def weighted_degree(self, mono: Monomial) -> int:
        return sum(self.weights[index] * exp for index, exp in mono)

    def is_homogeneous(self, weight: int | None = None) -> bool:
        degrees = {self.weighted_degree(mono) for mono in self.terms}
        if weight is None:
            return len(degrees) <= 1
        return degrees <= {weight}

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        mono = tuple(sorted((self.variables.index(name), e) for name, e in exponents.items() if e > 0))
        return self.terms.get(mono, Fraction(0))

    def _used(self) -> set[str]:
        return {self.variables[index] for mono in self.terms for index, _ in mono}

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        missing = sorted(self._used() - set(values))
        if missing:
            raise InvalidInput(f"no value supplied for {missing[0]}")
        if not self.variables:
            return self.terms.get((), Fraction(0))
        point = {sympy.Symbol(name): to_sympy(values[name]) for name in self._used()}
        return from_sympy(self.as_poly().as_expr().xreplace(point))

    def substitute(self, mapping: Mapping[str, GradedPolynomial]) -> GradedPolynomial:
        """Replace each variable by a polynomial; all images must share one ring."""
        missing = sorted(self._used() - set(mapping))
        if missing:
            raise InvalidInput(f"no image supplied for {missing[0]}")
        images = list(mapping.values())
        if not images:
            return self
        target = images[0]
        if not self._used():
            return GradedPolynomial.constant(self.terms.get((), Fraction(0)), target.variables, target.weights)
        replacements = {sympy.Symbol(name): image.as_poly().as_expr() for name, image in mapping.items()}
        expr = self.as_poly().as_expr().xreplace(replacements)
        return target.from_poly(sympy.Poly(expr, *target.gens, domain=sympy.QQ))

    def sorted_monomials(self) -> list[Monomial]:
        """Graded reverse-lexicographic order: last variable's exponent decides first, smaller first."""
        return sorted(self.terms, key=lambda mono: (self.weighted_degree(mono), self.exponents(mono)[::-1]))

    def format_monomial(self, mono: Monomial, descending: bool = False) -> str:
        pieces = [(self.variables[i], e) for i, e in mono]
        if descending:
            pieces.reverse()
        return "*".join(name if e == 1 else f"{name}^{e}" for name, e in pieces)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"GradedPolynomial({format_polynomial(self)!r})"


def _join_terms(terms: Sequence[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out: list[str] = []
    for position, (c, body) in enumerate(terms):
        magnitude = abs(c)
        if not body:
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_rational(magnitude)}*{body}"
        if position == 0:
            out.append(f"-{text}" if c < 0 else text)
        else:
            out.append(f" - {text}" if c < 0 else f" + {text}")
    return "".join(out)


def format_polynomial(poly: GradedPolynomial) -> str:
    return _join_terms([(poly.terms[mono], poly.format_monomial(mono)) for mono in poly.sorted_monomials()])


def sigma_ring(n: int, prefix: str = "s") -> tuple[tuple[str, ...], tuple[int, ...]]:
    """Variables prefix1..prefixn with weight(prefix_i) = i."""
    return tuple(f"{prefix}{i}" for i in range(1, n + 1)), tuple(range(1, n + 1))


def elementary_symmetric(k: int, variables: Sequence[str]) -> GradedPolynomial:
    names = tuple(variables)
    ring = GradedPolynomial.zero(names, (1,) * len(names))
    if k > len(names):
        return ring
    if not names:
        return GradedPolynomial.constant(1)
    return ring.from_poly(sympy.Poly(symmetric_poly(k, *ring.gens), *ring.gens, domain=sympy.QQ))


def monomial_symmetric_oracle(partition: Partition, variables: Sequence[str]) -> GradedPolynomial:
    names = tuple(variables)
    if len(names) < partition.weight:
        raise InvalidInput(
            f"{partition} needs at least {partition.weight} variables, got {len(names)}",
            kind="insufficient-variables",
        )
    pattern = list(partition.parts) + [0] * (len(names) - len(partition))
    terms = {tuple((i, e) for i, e in enumerate(perm) if e): Fraction(1) for perm in multiset_permutations(pattern)}
    return GradedPolynomial(names, (1,) * len(names), terms)


@lru_cache(maxsize=None)
def _elementary_products(n: int) -> dict[Partition, GradedPolynomial]:
    tvars = tuple(f"t{i}" for i in range(1, n + 1))
    e = [elementary_symmetric(k, tvars) for k in range(n + 1)]
    out: dict[Partition, GradedPolynomial] = {}
    for basis in partitions_of(n):
        product = GradedPolynomial.constant(1, tvars, (1,) * n)
        for part in basis:
            product = product * e[part]
        out[basis] = product
    return out


def _leading_monomial(shape: Partition) -> Monomial:
    return tuple((i, e) for i, e in enumerate(reversed(shape.parts)))


@lru_cache(maxsize=None)
def s_polynomial(partition: Partition, prefix: str = "s") -> GradedPolynomial:
    n = partition.weight
    variables, weights = sigma_ring(n, prefix)
    if n == 0:
        return GradedPolynomial.constant(1, variables, weights)

    tvars = tuple(f"t{i}" for i in range(1, n + 1))
    target = monomial_symmetric_oracle(partition, tvars)
    products = _elementary_products(n)
    basis = partitions_of(n)
    # A symmetric polynomial is fixed by its coefficients on one monomial per shape.
    shapes = [_leading_monomial(shape) for shape in basis]
    matrix = [[products[b].terms.get(mono, Fraction(0)) for b in basis] for mono in shapes]
    rhs = [target.terms.get(mono, Fraction(0)) for mono in shapes]
    coords = solve_linear(matrix, rhs)

    # sigma_I for the basis partition I is the monomial prod sigma_i over its parts
    terms = {tuple(sorted(Counter(i - 1 for i in b.parts).items())): c for b, c in zip(basis, coords)}
    result = GradedPolynomial(variables, weights, terms)
    assert result.is_homogeneous(n), f"s_{partition} is not homogeneous of weight {n}"
    logger.debug("s_%s = %s", partition, result)
    return result


def sigma_substitution(n: int, variables: Sequence[str], prefix: str = "s") -> dict[str, GradedPolynomial]:
    """sigma_i -> e_i(variables) for i = 1..n."""
    names, _ = sigma_ring(n, prefix)
    return {name: elementary_symmetric(i, variables) for i, name in enumerate(names, start=1)}


def coefficient_rank(polys: Sequence[GradedPolynomial]) -> int:
    monomials = sorted({mono for p in polys for mono in p.terms})
    return rank([[p.terms.get(mono, Fraction(0)) for mono in monomials] for p in polys])
