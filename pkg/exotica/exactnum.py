"""Exact integers and rationals, binomials, Bernoulli numbers and a little exact linear algebra.

All rational values are `fractions.Fraction`, which is always stored reduced with the
sign on the numerator. The wire format is "p/q", or "p" when q = 1. Matrix work goes
through sympy over Q and comes back as Fraction.
"""

from __future__ import annotations

import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .errors import InvalidInput, ParseError


logger = logging.getLogger("exotica.exactnum")

Rational = Fraction

RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise InvalidInput(f"binomial needs nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n from the closed double sum

        B_n = -sum_{1<=k<=n+1} ((-1)^k / k) C(n+1, k) sum_{1<=j<=k} j^n

    evaluated in exact rationals. The sum yields B_1 = +1/2; the printed tables use
    B_1 = -1/2, so that single index is returned with the negative sign.
    """
    if n < 0:
        raise InvalidInput(f"bernoulli needs n >= 0, got {n}")
    if n == 1:
        return Fraction(-1, 2)
    total = Fraction(0)
    power_sum = 0
    for k in range(1, n + 2):
        power_sum += k**n
        total += Fraction((-1) ** k * math.comb(n + 1, k) * power_sum, k)
    value = -total
    logger.debug("bernoulli(%d) = %s", n, value)
    return value


def bernoulli_table(n: int) -> list[Fraction]:
    return [bernoulli(i) for i in range(n + 1)]


def to_double(value: Fraction) -> float:
    return float(value)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    m = RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}")
    denominator = int(m.group(2)) if m.group(2) else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), denominator)


def to_sympy(value: Fraction | int) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy(value: sympy.Expr) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def exact_matrix(matrix: Sequence[Sequence[Fraction | int]]) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in matrix])


def row_echelon(matrix: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    if not matrix:
        return [], []
    reduced, pivots = exact_matrix(matrix).rref()
    return [[from_sympy(x) for x in reduced.row(i)] for i in range(reduced.rows)], list(pivots)


def rank(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    if not matrix:
        return 0
    return exact_matrix(matrix).rank()


def solve_linear(matrix: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    assert all(len(row) == n for row in matrix), "solve_linear expects a square matrix"
    system = exact_matrix(matrix)
    if system.rank() < n:
        raise InvalidInput("linear system is singular")
    solution = system.LUsolve(sympy.Matrix([to_sympy(b) for b in rhs]))
    return [from_sympy(x) for x in solution]


def determinant(matrix: Sequence[Sequence[Fraction | int]]) -> Fraction:
    n = len(matrix)
    assert all(len(row) == n for row in matrix), "determinant expects a square matrix"
    if n == 0:
        return Fraction(1)
    return from_sympy(exact_matrix(matrix).det(method="bareiss"))
