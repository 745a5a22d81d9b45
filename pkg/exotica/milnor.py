"""Milnor's exotic 7-spheres: 4-plane bundles over S^4, their sphere bundles, and the
integrality test on p_2 that the signature theorem forces.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .bordism import FiniteAbelianGroup
from .errors import InvalidInput
from .exactnum import binomial, format_rational
from .genus import l_polynomial
from .symmpoly import Monomial, Partition, partitions_of


logger = logging.getLogger("exotica.milnor")


@dataclass(frozen=True)
class BundleData:
    euler: int
    pontrjagin1: int

    def __post_init__(self) -> None:
        if (self.pontrjagin1 - 2 * self.euler) % 4:
            raise InvalidInput(
                f"p1 = {self.pontrjagin1} and chi = {self.euler} violate p1 = 2 chi (mod 4)",
                kind="inconsistent-input",
            )


def classify_bundle_pair(a: int, b: int) -> BundleData:
    """Invert omega -> ((2 chi + p1)/4, (2 chi - p1)/4)."""
    return BundleData(euler=a + b, pontrjagin1=2 * (a - b))


def bundle_to_pair(bundle: BundleData) -> tuple[int, int]:
    twice = 2 * bundle.euler
    return (twice + bundle.pontrjagin1) // 4, (twice - bundle.pontrjagin1) // 4


def sphere_bundle_homology(euler: int) -> list[FiniteAbelianGroup]:
    """H_0..H_7 of the 3-sphere bundle over S^4 with Euler number chi.

    H_3 = coker(chi: Z -> Z) and H_4 = ker(chi: Z -> Z).
    """
    groups = [FiniteAbelianGroup.trivial() for _ in range(8)]
    groups[0] = FiniteAbelianGroup(free_rank=1)
    groups[7] = FiniteAbelianGroup(free_rank=1)
    if euler == 0:
        groups[3] = FiniteAbelianGroup(free_rank=1)
        groups[4] = FiniteAbelianGroup(free_rank=1)
    else:
        groups[3] = FiniteAbelianGroup(torsion=(abs(euler),))
    return groups


def pontrjagin_cp(n: int) -> list[int]:
    """p_j(CP^n) = C(n+1, j) for j = 1..floor(n/2)."""
    if n < 1:
        raise InvalidInput(f"CP^n needs n >= 1, got {n}")
    return [binomial(n + 1, j) for j in range(1, n // 2 + 1)]


@dataclass(frozen=True)
class PontrjaginNumbers:
    dimension: int
    values: Mapping[Partition, int]

    def __post_init__(self) -> None:
        if self.dimension < 0 or self.dimension % 4:
            raise InvalidInput(f"Pontrjagin numbers live in dimensions 4k, got {self.dimension}")
        k = self.dimension // 4
        for key in self.values:
            if key.weight != k:
                raise InvalidInput(f"partition {key} does not partition {k}")

    @property
    def k(self) -> int:
        return self.dimension // 4


def cp_pontrjagin_numbers(k: int) -> PontrjaginNumbers:
    """p_I[CP^{2k}] = prod_j C(2k+1, i_j): the cohomology ring has one generator."""
    if k < 1:
        raise InvalidInput(f"CP^(2k) needs k >= 1, got {k}")
    values = {I: math.prod(binomial(2 * k + 1, i) for i in I) for I in partitions_of(k)}
    return PontrjaginNumbers(dimension=4 * k, values=values)


def _partition_monomial(partition: Partition) -> Monomial:
    counts: dict[int, int] = {}
    for part in partition:
        counts[part - 1] = counts.get(part - 1, 0) + 1
    return tuple(sorted(counts.items()))


def hirzebruch_terms(pn: PontrjaginNumbers) -> tuple[list[int], int]:
    """Integer numerator terms over the common denominator of L_k, in printed term order."""
    if pn.k == 0:
        return [1], 1
    poly = l_polynomial(pn.k)
    denominator = math.lcm(*(c.denominator for c in poly.terms.values()))
    by_monomial = {_partition_monomial(I): I for I in partitions_of(pn.k)}
    terms: list[int] = []
    for mono in reversed(poly.sorted_monomials()):
        partition = by_monomial[mono]
        if partition not in pn.values:
            raise InvalidInput(f"missing Pontrjagin number for {partition}", kind="incomplete-data")
        scaled = poly.terms[mono] * denominator
        terms.append(scaled.numerator * pn.values[partition])
    return terms, denominator


def hirzebruch_signature(pn: PontrjaginNumbers) -> Fraction:
    """<L_k(p_1, ..., p_k), [M]> for a 4k-manifold."""
    missing = [I for I in partitions_of(pn.k) if I not in pn.values] if pn.k else []
    if missing:
        raise InvalidInput(
            f"missing Pontrjagin numbers for {', '.join(str(I) for I in missing)}",
            kind="incomplete-data",
        )
    terms, denominator = hirzebruch_terms(pn)
    return Fraction(sum(terms), denominator)


class Verdict(str, Enum):
    EXOTIC = "Exotic"
    STANDARD_CONSISTENT = "StandardConsistent"


@dataclass(frozen=True)
class MilnorResult:
    k: int
    p1: int
    p2: Fraction
    verdict: Verdict

    def to_json(self) -> dict[str, object]:
        return {"k": self.k, "p1": self.p1, "p2": format_rational(self.p2), "verdict": self.verdict.value}


def milnor_detect(k: int) -> MilnorResult:
    """Closing the sphere bundle with (chi, p1) = (1, 2k) into an 8-manifold with
    signature 1 forces p2 = (45 + 4k^2)/7. A non-integral p2 proves the boundary exotic.
    """
    if k % 2 == 0:
        raise InvalidInput(f"k must be odd, got {k}")
    p1 = 2 * k
    p2 = Fraction(45 + 4 * k * k, 7)
    assert p2 == Fraction(4 * (k * k - 1), 7) + 7
    verdict = Verdict.STANDARD_CONSISTENT if p2.denominator == 1 else Verdict.EXOTIC
    logger.debug("milnor k=%d p2=%s verdict=%s", k, p2, verdict.value)
    return MilnorResult(k=k, p1=p1, p2=p2, verdict=verdict)


def signature_constraint(k: int) -> str:
    """7 p2 - p1^2 = 45 with the values for k substituted."""
    result = milnor_detect(k)
    lhs = 7 * result.p2 - result.p1**2
    assert lhs == 45
    return f"7*({format_rational(result.p2)}) - ({result.p1})^2 = {format_rational(lhs)}"
