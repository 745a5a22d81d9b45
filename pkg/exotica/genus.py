"""Multiplicative sequences and the L-genus.

A multiplicative sequence is fixed by its coefficients lambda_k: K_n = sum over
partitions I of n of lambda_I s_I(p_1, ..., p_n), with lambda_I the product of the
lambda_{i_j}. The L-sequence has characteristic series sqrt(z)/tanh(sqrt(z)).
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InvalidInput
from .exactnum import bernoulli, format_rational
from .symmpoly import GradedPolynomial, Partition, partitions_of, s_polynomial, sigma_ring


logger = logging.getLogger("exotica.genus")

PONTRJAGIN_PREFIX = "p"


@dataclass(frozen=True)
class FormalPowerSeries:
    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __str__(self) -> str:
        pieces: list[str] = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            body = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            magnitude = abs(c)
            text = format_rational(magnitude) if not body else (body if magnitude == 1 else f"{format_rational(magnitude)}*{body}")
            if not pieces:
                pieces.append(f"-{text}" if c < 0 else text)
            else:
                pieces.append(f" - {text}" if c < 0 else f" + {text}")
        return "".join(pieces) or "0"


@dataclass(frozen=True, eq=False)
class MultiplicativeSequence:
    name: str
    rule: Callable[[int], Fraction]
    _polys: dict[int, GradedPolynomial] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def lam(self, k: int) -> Fraction:
        if k == 0:
            return Fraction(1)
        return Fraction(self.rule(k))

    def lambda_of(self, partition: Partition) -> Fraction:
        value = Fraction(1)
        for part in partition:
            value *= self.lam(part)
        return value

    def polynomial(self, n: int) -> GradedPolynomial:
        if n < 0:
            raise InvalidInput(f"sequence index must be >= 0, got {n}")
        cached = self._polys.get(n)
        if cached is not None:
            return cached
        variables, weights = sigma_ring(n, PONTRJAGIN_PREFIX)
        poly = GradedPolynomial.constant(1, variables, weights) if n == 0 else GradedPolynomial.zero(variables, weights)
        if n > 0:
            for partition in partitions_of(n):
                coeff = self.lambda_of(partition)
                if coeff:
                    poly = poly + coeff * s_polynomial(partition, PONTRJAGIN_PREFIX)
        with self._lock:
            # Concurrent builders produce equal polynomials; first writer wins.
            poly = self._polys.setdefault(n, poly)
        logger.debug("%s_%d = %s", self.name, n, poly)
        return poly

    def characteristic_series(self, order: int) -> FormalPowerSeries:
        return FormalPowerSeries(tuple(self.lam(k) for k in range(order + 1)))


def l_lambda(k: int) -> Fraction:
    """lambda_k = (-1)^(k-1) 2^(2k) |B_2k| / (2k)!, with lambda_0 = 1."""
    if k < 0:
        raise InvalidInput(f"l_lambda needs k >= 0, got {k}")
    if k == 0:
        return Fraction(1)
    return (-1) ** (k - 1) * Fraction(2 ** (2 * k)) * abs(bernoulli(2 * k)) / math.factorial(2 * k)


def l_series(order: int) -> FormalPowerSeries:
    """Coefficients of sqrt(z)/tanh(sqrt(z)) = sum 2^(2k) B_2k z^k / (2k)! through z^order."""
    if order < 0:
        raise InvalidInput(f"series order must be >= 0, got {order}")
    coefficients = tuple(Fraction(2 ** (2 * k)) * bernoulli(2 * k) / math.factorial(2 * k) for k in range(order + 1))
    return FormalPowerSeries(coefficients)


L_SEQUENCE = MultiplicativeSequence("L", l_lambda)


def l_polynomial(k: int) -> GradedPolynomial:
    if k < 1:
        raise InvalidInput(f"l_polynomial needs k >= 1, got {k}")
    poly = L_SEQUENCE.polynomial(k)
    assert poly.is_homogeneous(k), f"L_{k} is not homogeneous"
    return poly


def linear_sequence(scale: Fraction | int) -> MultiplicativeSequence:
    """K_n(t_1, ..., t_n) = scale^n t_n, the sequence with series 1 + scale*z."""
    scale = Fraction(scale)
    return MultiplicativeSequence(f"linear({scale})", lambda k: scale if k == 1 else Fraction(0))


def geometric_sequence(base: Fraction | int) -> MultiplicativeSequence:
    base = Fraction(base)
    return MultiplicativeSequence(f"geometric({base})", lambda k: base**k)


def apply_sequence(seq: MultiplicativeSequence, a: Sequence[Fraction | int], weight: int) -> Fraction:
    """K_w(a_1, ..., a_w) for a graded element with components a_1..a_m."""
    if weight < 0:
        raise InvalidInput(f"weight must be >= 0, got {weight}")
    if weight == 0:
        return Fraction(1)
    if weight > len(a):
        raise InvalidInput(
            f"weight {weight} needs components a_1..a_{weight}, got {len(a)}",
            kind="missing-components",
        )
    values = {f"{PONTRJAGIN_PREFIX}{i}": Fraction(a[i - 1]) for i in range(1, weight + 1)}
    return seq.polynomial(weight).evaluate(values)


def apply_total(seq: MultiplicativeSequence, a: Sequence[Fraction | int], order: int) -> list[Fraction]:
    """Components K_0(a), ..., K_order(a) of K(a) = 1 + K_1(a_1) + K_2(a_1, a_2) + ..."""
    return [apply_sequence(seq, a, w) for w in range(order + 1)]


def graded_product(a: Sequence[Fraction | int], b: Sequence[Fraction | int]) -> list[Fraction]:
    """(ab)_n = sum_{i+j=n} a_i b_j with a_0 = b_0 = 1, truncated at the shorter input."""
    order = min(len(a), len(b))
    full_a = [Fraction(1)] + [Fraction(x) for x in a[:order]]
    full_b = [Fraction(1)] + [Fraction(x) for x in b[:order]]
    return [sum((full_a[i] * full_b[n - i] for i in range(n + 1)), Fraction(0)) for n in range(1, order + 1)]


def format_over_denominator(poly: GradedPolynomial) -> str:
    """Single fraction with an integer numerator, highest-index variables leading.

    L_2 prints as "(7*p2 - p1^2)/45" and L_1 as "p1/3".
    """
    if poly.is_zero():
        return "0"
    denominator = math.lcm(*(c.denominator for c in poly.terms.values()))
    monomials = list(reversed(poly.sorted_monomials()))
    pieces: list[str] = []
    for position, mono in enumerate(monomials):
        c = poly.terms[mono] * denominator
        assert c.denominator == 1
        body = poly.format_monomial(mono, descending=True)
        magnitude = abs(c.numerator)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if position == 0:
            pieces.append(f"-{text}" if c < 0 else text)
        else:
            pieces.append(f" - {text}" if c < 0 else f" + {text}")
    numerator = "".join(pieces)
    if denominator == 1:
        return numerator
    if len(monomials) > 1:
        numerator = f"({numerator})"
    return f"{numerator}/{denominator}"
