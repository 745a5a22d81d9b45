"""Euler characteristic calculus on descriptors: combination rules, surgery, handles,
the Kervaire semicharacteristic and the curvatura integra.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Sequence, Union

from .errors import InvalidInput


logger = logging.getLogger("exotica.eulercalc")


@dataclass(frozen=True)
class ChiManifold:
    chi: int
    dim: int
    closed: bool = True
    orientable: bool | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise InvalidInput(f"dimension must be >= 0, got {self.dim}")
        if self.closed and self.dim % 2 and self.chi != 0:
            raise InvalidInput(
                f"closed odd-dimensional manifold must have chi = 0, got {self.chi}",
                kind="inconsistent-input",
            )


def chi_sphere(n: int) -> int:
    if n < 0:
        raise InvalidInput(f"sphere dimension must be >= 0, got {n}")
    return 2 if n % 2 == 0 else 0


def chi_surface(orientable: bool, genus: int) -> int:
    """2 - 2g for oriented surfaces, 2 - kappa for nonorientable ones."""
    if genus < 0:
        raise InvalidInput(f"genus must be >= 0, got {genus}")
    return 2 - 2 * genus if orientable else 2 - genus


def point() -> ChiManifold:
    return ChiManifold(1, 0, name="pt")


def sphere(n: int) -> ChiManifold:
    return ChiManifold(chi_sphere(n), n, orientable=True, name=f"S^{n}")


def circle() -> ChiManifold:
    return sphere(1)


def disk(n: int) -> ChiManifold:
    return ChiManifold(1, n, closed=n == 0, orientable=True, name=f"D^{n}")


def torus(n: int) -> ChiManifold:
    return ChiManifold(0 if n else 1, n, orientable=True, name=f"T^{n}")


def real_projective_space(n: int) -> ChiManifold:
    return ChiManifold(1 if n % 2 == 0 else 0, n, orientable=n % 2 == 1, name=f"RP^{n}")


def klein_bottle() -> ChiManifold:
    return ChiManifold(0, 2, orientable=False, name="Klein bottle")


def mobius_strip() -> ChiManifold:
    return ChiManifold(0, 2, closed=False, orientable=False, name="Moebius strip")


def cross_cap() -> ChiManifold:
    return replace(mobius_strip(), name="cross-cap")


def surface(orientable: bool, genus: int) -> ChiManifold:
    return ChiManifold(chi_surface(orientable, genus), 2, orientable=orientable)


def chi_polyhedron(vertices: int, edges: int, faces: int) -> int:
    return vertices - edges + faces


@dataclass(frozen=True)
class DisjointUnion:
    arity = 2


@dataclass(frozen=True)
class Product:
    arity = 2


@dataclass(frozen=True)
class Excision:
    """chi(M u N) from chi(M), chi(N), chi(M n N)."""

    arity = 3


@dataclass(frozen=True)
class Covering:
    sheets: int
    arity = 1

    def __post_init__(self) -> None:
        if self.sheets < 1:
            raise InvalidInput(f"a covering needs at least one sheet, got {self.sheets}")


@dataclass(frozen=True)
class Fibration:
    """chi(V) = chi(F) chi(M) with arguments (fibre, base)."""

    arity = 2


Rule = Union[DisjointUnion, Product, Excision, Covering, Fibration]
ChiArg = Union[ChiManifold, int]


def _chi(value: ChiArg) -> int:
    return value.chi if isinstance(value, ChiManifold) else int(value)


def chi_combine(rule: Rule, args: Sequence[ChiArg]) -> int:
    if len(args) != rule.arity:
        raise InvalidInput(
            f"{type(rule).__name__} takes {rule.arity} arguments, got {len(args)}",
            kind="invalid-arguments",
        )
    values = [_chi(a) for a in args]
    if isinstance(rule, DisjointUnion):
        return values[0] + values[1]
    if isinstance(rule, Excision):
        return values[0] + values[1] - values[2]
    if isinstance(rule, Covering):
        return rule.sheets * values[0]
    # Product and Fibration are both multiplicative.
    return values[0] * values[1]


def chi_surgery(chi: int, p: int) -> int:
    """chi after p-surgery on an even-dimensional manifold: +2 for odd p, -2 for even p."""
    if p < 0:
        raise InvalidInput(f"surgery index must be >= 0, got {p}")
    return chi + 2 if p % 2 else chi - 2


@dataclass(frozen=True)
class SurgerySteps:
    complement: int
    handle: int
    gluing: int
    result: int


def chi_surgery_steps(chi: int, dim: int, p: int) -> SurgerySteps:
    """Excision bookkeeping for p-surgery on a closed manifold of even dimension dim.

    complement = M minus S^p x D^(dim-p), handle = D^(p+1) x S^(dim-p-1),
    gluing = S^p x S^(dim-p-1), result = complement + handle - gluing.
    """
    if dim % 2:
        raise InvalidInput(f"surgery formula needs an even dimension, got {dim}")
    if not 0 <= p < dim:
        raise InvalidInput(f"surgery index must lie in 0..{dim - 1}, got {p}")
    gluing = chi_sphere(p) * chi_sphere(dim - p - 1)
    complement = chi - chi_sphere(p) + gluing
    handle = chi_sphere(dim - p - 1)
    result = complement + handle - gluing
    assert result == chi_surgery(chi, p)
    return SurgerySteps(complement=complement, handle=handle, gluing=gluing, result=result)


def chi_connected_sum(chi_m: int, chi_n: int, n: int) -> int:
    """chi(M # N) = chi(M) + chi(N) - chi(S^n)."""
    return chi_m + chi_n - chi_sphere(n)


def chi_from_betti(betti: Sequence[int]) -> int:
    if any(b < 0 for b in betti):
        raise InvalidInput(f"Betti numbers must be >= 0: {list(betti)}")
    return sum((-1) ** k * b for k, b in enumerate(betti))


def boundary_parity_check(chi_m: int, dim_m: int, chi_v: int) -> bool:
    """M = boundary of V with dim M even forces chi(M) = 2 chi(V)."""
    if dim_m % 2:
        raise InvalidInput(f"boundary parity needs an even dimension, got {dim_m}")
    return chi_m == 2 * chi_v


@dataclass(frozen=True)
class HandleComplex:
    dim: int
    counts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise InvalidInput(f"dimension must be >= 0, got {self.dim}")
        counts = tuple(self.counts) + (0,) * (self.dim + 1 - len(self.counts))
        if len(counts) != self.dim + 1:
            raise InvalidInput(f"{len(self.counts)} handle counts for a {self.dim}-dimensional complex")
        if any(k < 0 for k in counts):
            raise InvalidInput(f"handle counts must be >= 0: {counts}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, *counts: int) -> HandleComplex:
        return cls(dim=max(len(counts) - 1, 0), counts=counts)


def handle_chi(h: HandleComplex) -> int:
    return sum((-1) ** i * k for i, k in enumerate(h.counts))


def attach(h: HandleComplex, index: int) -> HandleComplex:
    if not 0 <= index <= h.dim:
        raise InvalidInput(f"handle index must lie in 0..{h.dim}, got {index}")
    counts = list(h.counts)
    counts[index] += 1
    return HandleComplex(h.dim, tuple(counts))


def semicharacteristic(betti_mod2: Sequence[int]) -> int:
    """Kervaire semicharacteristic: sum of dim H_j over j <= (n-1)/2, mod 2."""
    if any(b < 0 for b in betti_mod2):
        raise InvalidInput(f"dimensions must be >= 0: {list(betti_mod2)}")
    return sum(betti_mod2) % 2


def curvatura_integra(n: int, chi: int, semichar: int = 0, hopf: int = 0) -> int:
    """Hopf(M) + chi/2 in Z for even n; Hopf(M) + semicharacteristic in Z_2 for odd n."""
    if n < 1:
        raise InvalidInput(f"dimension must be >= 1, got {n}")
    if n % 2 == 0:
        if chi % 2:
            raise InvalidInput(f"even n={n} needs an even chi, got {chi}", kind="inconsistent-input")
        return hopf + chi // 2
    return (hopf + semichar) % 2
