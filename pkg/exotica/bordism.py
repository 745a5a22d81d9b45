"""Finite abelian group values: bordism formulas, the homotopy-sphere table, bP orders."""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from . import reference
from .errors import InvalidInput, NotTabulated, ParseError
from .exactnum import bernoulli
from .symmpoly import partitions_of


logger = logging.getLogger("exotica.bordism")

ROWS = tuple(reference.THETA_ROWS)

# Indices k with bP_{4k+2} = 0; the Kervaire invariant problem leaves k = 31 open.
KERVAIRE_ONE = frozenset({0, 1, 3, 7, 15})
KERVAIRE_OPEN = frozenset({31})


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Canonical torsion d_1 | d_2 | ... (ascending) for a sum of cyclic groups."""
    exponents: dict[int, list[int]] = defaultdict(list)
    for m in orders:
        for p, e in sympy.factorint(m).items():
            exponents[int(p)].append(int(e))
    if not exponents:
        return ()
    length = max(len(es) for es in exponents.values())
    factors = [1] * length
    for p, es in exponents.items():
        for i, e in enumerate(sorted(es, reverse=True)):
            factors[i] *= p**e
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z^free_rank plus torsion, kept in invariant-factor form d_1 | d_2 | ... (ascending).

    The torsion is a sorted multiset of cyclic orders, and isomorphic inputs land on the
    same one: Z_2 + Z_3 is stored as [6], Z_2 + Z_4 as [2, 4].
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise InvalidInput(f"free rank must be >= 0, got {self.free_rank}")
        if any(m < 1 for m in self.torsion):
            raise InvalidInput(f"cyclic orders must be positive: {self.torsion}")
        object.__setattr__(self, "torsion", invariant_factors([m for m in self.torsion if m > 1]))

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls()

    @classmethod
    def cyclic(cls, m: int) -> FiniteAbelianGroup:
        """Z_m; m = 0 reads as Z, following Z/0Z."""
        if m == 0:
            return cls(free_rank=1)
        return cls(torsion=(m,))

    @classmethod
    def z2_vector_space(cls, dim: int) -> FiniteAbelianGroup:
        return cls(torsion=(2,) * dim)

    @classmethod
    def from_json(cls, document: object) -> FiniteAbelianGroup:
        if not isinstance(document, dict):
            raise ParseError("group JSON must be an object")
        return cls(free_rank=int(document.get("free_rank", 0)), torsion=tuple(document.get("torsion", ())))

    def to_json(self) -> dict[str, object]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InvalidInput(f"{self} is infinite")
        return math.prod(self.torsion)

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.torsion) <= 1

    def __add__(self, other: FiniteAbelianGroup) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        return format_group(self.to_json())


def format_group(document: dict[str, object]) -> str:
    """Pretty form "Z^r ⊕ Z_m1 ⊕ ...", computed from the JSON form."""
    free_rank = int(document.get("free_rank", 0))  # type: ignore[arg-type]
    torsion = list(document.get("torsion", []))  # type: ignore[arg-type]
    pieces: list[str] = []
    if free_rank == 1:
        pieces.append("Z")
    elif free_rank > 1:
        pieces.append(f"Z^{free_rank}")
    pieces.extend(f"Z_{m}" for m in torsion)
    return " ⊕ ".join(pieces) if pieces else "0"


def unoriented_bordism_rank(s: int) -> int:
    """dim over Z_2 of Omega_s: partitions of s with no part of the form 2^j - 1."""
    if s < 0:
        raise InvalidInput(f"bordism degree must be >= 0, got {s}")
    return sum(1 for p in partitions_of(s) if not any((part + 1) & part == 0 for part in p))


def singular_integral_bordism(h_ranks: Sequence[int]) -> FiniteAbelianGroup:
    """Direct sum over r + s = n of H_r(M; Z_2) tensor Omega_s."""
    if not h_ranks:
        raise InvalidInput("need Z_2-ranks for degrees 0..n")
    if any(r < 0 for r in h_ranks):
        raise InvalidInput(f"ranks must be >= 0: {list(h_ranks)}")
    n = len(h_ranks) - 1
    dim = sum(rank * unoriented_bordism_rank(n - r) for r, rank in enumerate(h_ranks))
    return FiniteAbelianGroup.z2_vector_space(dim)


def sphere_ranks(n: int) -> list[int]:
    ranks = [0] * (n + 1)
    ranks[0] += 1
    ranks[n] += 1
    return ranks


def homotopy_sphere_bordism(n: int) -> FiniteAbelianGroup:
    if n < 1:
        raise InvalidInput(f"homotopy sphere bordism needs n >= 1, got {n}")
    group = FiniteAbelianGroup.z2_vector_space(unoriented_bordism_rank(n)) + FiniteAbelianGroup.z2_vector_space(1)
    assert group == singular_integral_bordism(sphere_ranks(n)), f"bordism formulas disagree at n={n}"
    return group


def table_entry(row: str, n: int) -> FiniteAbelianGroup:
    if row not in reference.THETA_ROWS:
        raise InvalidInput(f"unknown table row {row!r}; expected one of {', '.join(ROWS)}")
    if n == 0 and row in ("stable_stem", "coker_j"):
        return FiniteAbelianGroup(free_rank=1)
    if n == 0 and row == "j_image":
        return FiniteAbelianGroup.trivial()
    values = reference.THETA_ROWS[row]
    if n not in values:
        raise NotTabulated(f"{reference.ROW_LABELS[row]} is not tabulated for n={n}")
    value = values[n]
    if value is None:
        raise NotTabulated(f"{reference.ROW_LABELS[row]} is printed as '-' for n={n}")
    return FiniteAbelianGroup.cyclic(value) if value else FiniteAbelianGroup.trivial()


def theta(n: int) -> FiniteAbelianGroup:
    return table_entry("theta", n)


def bp(m: int) -> FiniteAbelianGroup:
    """bP_m, tabulated as the column n = m - 1."""
    return table_entry("bp", m - 1)


def theta_mod_bp(n: int) -> FiniteAbelianGroup:
    return table_entry("theta_mod_bp", n)


def coker_j(n: int) -> FiniteAbelianGroup:
    return table_entry("coker_j", n)


def stable_stem(n: int) -> FiniteAbelianGroup:
    return table_entry("stable_stem", n)


def j_image(n: int) -> FiniteAbelianGroup:
    return table_entry("j_image", n)


def groups_column(n: int) -> dict[str, FiniteAbelianGroup | None]:
    out: dict[str, FiniteAbelianGroup | None] = {}
    for row in ROWS:
        try:
            out[row] = table_entry(row, n)
        except NotTabulated:
            out[row] = None
    return out


def exactness_check(n: int) -> bool:
    """|Theta_n| = |bP_{n+1}| |Theta_n / bP_{n+1}|."""
    return theta(n).order == bp(n + 1).order * theta_mod_bp(n).order


def injection_check(n: int) -> bool:
    """Theta_n/bP_{n+1} embeds in pi^s_n/J, with equality unless n = 2^j - 2."""
    quotient = theta_mod_bp(n).order
    target = coker_j(n).order
    if target % quotient:
        return False
    if ((n + 2) & (n + 1)) == 0:
        return True
    return quotient == target


def stem_exactness_check(n: int) -> bool:
    """|pi^s_n| = |J| |pi^s_n / J|."""
    return stable_stem(n).order == j_image(n).order * coker_j(n).order


def bp_order(m: int) -> int:
    """Order of bP_{4m}: 2^(2m-2) (2^(2m-1) - 1) numerator(4 |B_2m| / m)."""
    if m < 2:
        raise InvalidInput(f"bp_order needs m >= 2, got {m}")
    factor = Fraction(4) * abs(bernoulli(2 * m)) / m
    return 2 ** (2 * m - 2) * (2 ** (2 * m - 1) - 1) * factor.numerator


def bp_order_as_printed(m: int) -> int:
    """The typeset variant (3-(-1)^m)/2 2^(2m-2) (2^(2m-1) - 1) Numerator(B_4m / 4m)."""
    if m < 2:
        raise InvalidInput(f"bp_order_as_printed needs m >= 2, got {m}")
    prefactor = (3 - (-1) ** m) // 2
    return prefactor * 2 ** (2 * m - 2) * (2 ** (2 * m - 1) - 1) * abs((bernoulli(4 * m) / (4 * m)).numerator)


def bp_formula(m: int) -> FiniteAbelianGroup:
    """bP_m from the Kervaire-Milnor rules rather than the table."""
    if m < 2:
        raise InvalidInput(f"bp_formula needs m >= 2, got {m}")
    if m % 2:
        return FiniteAbelianGroup.trivial()
    if m % 4 == 0:
        k = m // 4
        return FiniteAbelianGroup.trivial() if k == 1 else FiniteAbelianGroup.cyclic(bp_order(k))
    k = (m - 2) // 4
    if k in KERVAIRE_OPEN:
        raise NotTabulated(f"bP_{m} depends on the open Kervaire invariant case in dimension {m - 2}")
    return FiniteAbelianGroup.trivial() if k in KERVAIRE_ONE else FiniteAbelianGroup.cyclic(2)


def l_group(n: int) -> FiniteAbelianGroup:
    if n < 0:
        raise InvalidInput(f"L-group index must be >= 0, got {n}")
    free_rank, torsion = reference.L_GROUPS_MOD4[n % 4]
    return FiniteAbelianGroup(free_rank, torsion)


def p_group(n: int) -> FiniteAbelianGroup:
    """Almost framed surgery obstruction group: P_{2k+1} = 0, and L-periodic in even degrees."""
    if n < 0:
        raise InvalidInput(f"P-group index must be >= 0, got {n}")
    if n % 2:
        return FiniteAbelianGroup.trivial()
    return l_group(n)


def sphere_parallelizable(n: int) -> bool:
    if n < 1:
        raise InvalidInput(f"sphere dimension must be >= 1, got {n}")
    return n in (1, 3, 7)


def annotation(row: str, n: int) -> str | None:
    literature = reference.LITERATURE_GROUPS.get((row, n))
    if literature is None:
        return None
    printed = table_entry(row, n)
    known = FiniteAbelianGroup(torsion=literature)
    assert known.order == printed.order
    return f"{reference.ROW_LABELS[row]} (n={n}) printed {printed}; commonly listed as {known} (same order)"


def annotations(row: str | None = None, n: int | None = None) -> list[str]:
    out: list[str] = []
    for (r, k) in sorted(reference.LITERATURE_GROUPS, key=lambda key: (ROWS.index(key[0]), key[1])):
        if (row is None or r == row) and (n is None or k == n):
            text = annotation(r, k)
            if text:
                out.append(text)
    return out
