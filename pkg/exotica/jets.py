from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .exactnum import binomial


def _fibre_dim(n: int) -> int:
    # symmetric 2-tensors on an n-manifold
    return n * (n + 1) // 2


def _check(n: int, s: int) -> None:
    if n < 1:
        raise InvalidInput(f"manifold dimension must be >= 1, got {n}")
    if s < 0:
        raise InvalidInput(f"prolongation order must be >= 0, got {s}")


def dim_jet_space(n: int, s: int) -> int:
    """dim JD^{2+s}(E) = n + 1 + sum_{0<=r<=2+s} N C(n+r, r), N = n(n+1)/2."""
    _check(n, s)
    return n + 1 + sum(_fibre_dim(n) * binomial(n + r, r) for r in range(3 + s))


def dim_rf_prolongation(n: int, s: int) -> int:
    """dim (RF)_{+s} = n + 1 + N [sum_{r<=2+s} C(n+r, r) - sum_{r'<=s} C(n+r', r')]."""
    _check(n, s)
    jets = sum(binomial(n + r, r) for r in range(3 + s))
    equations = sum(binomial(n + r, r) for r in range(s + 1))
    return n + 1 + _fibre_dim(n) * (jets - equations)


def dim_symbol(n: int, s: int) -> int:
    """dim g_{2+s} = N [C(n+2+s, 2+s) - C(n+s, s)]."""
    _check(n, s)
    return _fibre_dim(n) * (binomial(n + 2 + s, 2 + s) - binomial(n + s, s))


@dataclass(frozen=True)
class JetDims:
    n: int
    s: int
    dim_jet: int
    dim_rf: int
    dim_symbol: int
    recurrence_ok: bool | None

    def to_json(self) -> dict[str, object]:
        return {
            "s": self.s,
            "dim_jet": self.dim_jet,
            "dim_rf": self.dim_rf,
            "dim_symbol": self.dim_symbol,
            "recurrence_ok": self.recurrence_ok,
        }


def jet_dims(n: int, s: int) -> JetDims:
    rf = dim_rf_prolongation(n, s)
    symbol = dim_symbol(n, s)
    recurrence = None if s == 0 else rf == dim_rf_prolongation(n, s - 1) + symbol
    return JetDims(n=n, s=s, dim_jet=dim_jet_space(n, s), dim_rf=rf, dim_symbol=symbol, recurrence_ok=recurrence)


def jet_table(n: int, smax: int) -> list[JetDims]:
    if smax < 0:
        raise InvalidInput(f"smax must be >= 0, got {smax}")
    return [jet_dims(n, s) for s in range(smax + 1)]


def applicability_check(n: int) -> bool:
    """dim (RF) > 2(n+1) + 1."""
    return dim_rf_prolongation(n, 0) > 2 * (n + 1) + 1
