"""Explicit Ricci flow on periodic grids and the conservation-law bracket.

Fields are numpy arrays of shape (*grid, n, n) with the grid axes first. Derivatives
are periodic centered differences: first derivatives (f[+1] - f[-1]) / 2h, same-axis
second derivatives (f[+1] - 2f + f[-1]) / h^2, mixed derivatives D_a D_b.

With |y| = det g and C = |y| g^{-1} the cofactor matrix,

    S_jl = (1/2) |y| C^{ik} (g_il,jk + g_jk,il - g_jl,ik - g_ik,jl)
           + C^{ik} C^{rs} ([jk,r][il,s] - [jl,r][ik,s])

so S = |y|^2 Ric and the solved form g_t = -(2/|y|^2) S is g_t = -2 Ric. The operator
R(g) in g_t + kappa R(g) = 0 is therefore 2 Ric / kappa.

The printed differential polynomial has no 1/2 on the second-derivative bracket. Without
it S is not a multiple of Ric and the conformal oracle fails; see
reference.DISCREPANCIES["ricci-half"].
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import InitialCondition, RicciRunConfig
from .errors import FlowDegeneration, InvalidInput, NearDegenerateMetric
from .trace import TraceLogger


logger = logging.getLogger("exotica.ricci")

DEFAULT_DET_FLOOR = 1e-9
DEFAULT_STABILITY_C = 0.1
CSV_COLUMNS = ("step", "max_abs_S", "min_det_g", "residual_norm")


@dataclass(frozen=True, eq=False)
class SymmetricField:
    values: np.ndarray
    h: float

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if values.ndim < 3 or values.shape[-1] != values.shape[-2]:
            raise InvalidInput(f"field must have shape (*grid, n, n), got {values.shape}")
        n = values.shape[-1]
        if values.ndim != n + 2:
            raise InvalidInput(f"a field with {n}x{n} components needs {n} grid axes, got {values.ndim - 2}")
        if self.h <= 0:
            raise InvalidInput(f"grid spacing must be positive, got {self.h}")
        if not np.array_equal(values, np.swapaxes(values, -1, -2)):
            raise InvalidInput("field components are not symmetric")

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return self.values.shape[:-2]

    @property
    def cell_volume(self) -> float:
        return self.h**self.n

    def det(self) -> np.ndarray:
        return np.linalg.det(self.values)


class MetricField(SymmetricField):
    """g_ij on the grid; det g must stay positive."""


class CotensorField(SymmetricField):
    """phi^{ij} on the grid."""


def _d1(f: np.ndarray, axis: int, h: float) -> np.ndarray:
    return (np.roll(f, -1, axis) - np.roll(f, 1, axis)) / (2.0 * h)


def _d2(f: np.ndarray, axis: int, h: float) -> np.ndarray:
    return (np.roll(f, -1, axis) - 2.0 * f + np.roll(f, 1, axis)) / (h * h)


def _first_derivatives(field: SymmetricField) -> np.ndarray:
    """dg[..., a, i, j] = d_a g_ij."""
    return np.stack([_d1(field.values, a, field.h) for a in range(field.n)], axis=-3)


def _second_derivatives(field: SymmetricField) -> np.ndarray:
    """ddg[..., a, b, i, j] = d_a d_b g_ij."""
    n, h = field.n, field.h
    out = np.empty(field.grid_shape + (n, n, n, n))
    first = [_d1(field.values, a, h) for a in range(n)]
    for a in range(n):
        out[..., a, a, :, :] = _d2(field.values, a, h)
        for b in range(a + 1, n):
            mixed = _d1(first[a], b, h)
            out[..., a, b, :, :] = mixed
            out[..., b, a, :, :] = mixed
    return out


def christoffel_first(field: SymmetricField) -> np.ndarray:
    """[ij,r] = (d_i g_jr + d_j g_ir - d_r g_ij) / 2, indexed [..., i, j, r]."""
    dg = _first_derivatives(field)
    return 0.5 * (dg + np.swapaxes(dg, -3, -2) - np.moveaxis(dg, -3, -1))


def _checked_det(field: SymmetricField, det_floor: float) -> np.ndarray:
    det = field.det()
    low = float(det.min())
    if low < det_floor:
        raise NearDegenerateMetric(f"min det g = {low:.3e} is below the floor {det_floor:.1e}")
    return det


def ricci_source(field: SymmetricField, det_floor: float = DEFAULT_DET_FLOOR) -> np.ndarray:
    det = _checked_det(field, det_floor)
    ginv = np.linalg.inv(field.values)
    cof = det[..., None, None] * ginv
    dd = _second_derivatives(field)
    chris = christoffel_first(field)

    second = (
        np.einsum("...ik,...jkil->...jl", cof, dd)
        + np.einsum("...ik,...iljk->...jl", cof, dd)
        - np.einsum("...ik,...ikjl->...jl", cof, dd)
        - np.einsum("...ik,...jlik->...jl", cof, dd)
    )
    quadratic = np.einsum("...ik,...rs,...jkr,...ils->...jl", cof, cof, chris, chris, optimize=True) - np.einsum(
        "...ik,...rs,...jlr,...iks->...jl", cof, cof, chris, chris, optimize=True
    )
    source = 0.5 * det[..., None, None] * second + quadratic
    return 0.5 * (source + np.swapaxes(source, -1, -2))


def ricci_tensor(field: SymmetricField, det_floor: float = DEFAULT_DET_FLOOR) -> np.ndarray:
    det = _checked_det(field, det_floor)
    return ricci_source(field, det_floor) / (det**2)[..., None, None]


def ricci_operator(field: SymmetricField, kappa: float = 1.0, det_floor: float = DEFAULT_DET_FLOOR) -> np.ndarray:
    """R(g) with g_t + kappa R(g) = 0 equivalent to the solved form."""
    return 2.0 * ricci_tensor(field, det_floor) / kappa


def flow_velocity(field: MetricField, det_floor: float = DEFAULT_DET_FLOOR) -> np.ndarray:
    """-(2/|y|^2) S."""
    det = _checked_det(field, det_floor)
    return -2.0 * ricci_source(field, det_floor) / (det**2)[..., None, None]


def stability_bound(field: SymmetricField, c: float = DEFAULT_STABILITY_C) -> float:
    return c * field.h**2 * float(field.det().min())


def flow_step(
    field: MetricField,
    dt: float,
    *,
    stability_c: float = DEFAULT_STABILITY_C,
    det_floor: float = DEFAULT_DET_FLOOR,
) -> MetricField:
    if dt <= 0:
        raise InvalidInput(f"dt must be positive, got {dt}")
    bound = stability_bound(field, stability_c)
    if dt > bound:
        raise InvalidInput(f"dt = {dt:.3e} exceeds the stability bound {bound:.3e}")
    updated = field.values + dt * flow_velocity(field, det_floor)
    stepped = MetricField(updated, field.h)
    low = float(stepped.det().min())
    if low <= 0:
        raise FlowDegeneration(f"det g reached {low:.3e} after the step")
    return stepped


def conservation_residual(
    g: SymmetricField,
    phi: SymmetricField,
    g_t: np.ndarray,
    phi_t: np.ndarray,
    kappa: float = 1.0,
    det_floor: float = DEFAULT_DET_FLOOR,
) -> np.ndarray:
    """(g_t + kappa R(g))_ij phi^ij + g_ij (phi_t - kappa R(phi))^ij at every node.

    R(phi) applies the same second-order operator to phi's components.
    """
    if g.values.shape != phi.values.shape or g.values.shape != np.shape(g_t) or g.values.shape != np.shape(phi_t):
        raise InvalidInput("all four fields must live on the same grid")
    r_g = ricci_operator(g, kappa, det_floor)
    r_phi = ricci_operator(phi, kappa, det_floor)
    return np.einsum("...ij,...ij->...", g_t + kappa * r_g, phi.values) + np.einsum(
        "...ij,...ij->...", g.values, phi_t - kappa * r_phi
    )


def coevolution_rates(
    g: SymmetricField, phi: SymmetricField, kappa: float = 1.0, det_floor: float = DEFAULT_DET_FLOOR
) -> tuple[np.ndarray, np.ndarray]:
    """g_t = -kappa R(g), phi_t = +kappa R(phi)."""
    return -kappa * ricci_operator(g, kappa, det_floor), kappa * ricci_operator(phi, kappa, det_floor)


def conserved_integral(g: SymmetricField, phi: SymmetricField) -> float:
    """Sum of g_ij phi^ij h^n over the grid."""
    return float(np.sum(g.values * phi.values)) * g.cell_volume


def integral_drift(
    g: MetricField,
    phi: CotensorField,
    dt: float,
    steps: int,
    kappa: float = 1.0,
    det_floor: float = DEFAULT_DET_FLOOR,
) -> float:
    """Change of the conserved integral over `steps` explicit Euler steps of the co-evolution."""
    start = conserved_integral(g, phi)
    for _ in range(steps):
        g_t, phi_t = coevolution_rates(g, phi, kappa, det_floor)
        g = MetricField(g.values + dt * g_t, g.h)
        phi = CotensorField(phi.values + dt * phi_t, phi.h)
    return conserved_integral(g, phi) - start


def grid_angles(n: int, m: int) -> list[np.ndarray]:
    """Periodic coordinates 2 pi k / m broadcast over an m^n grid."""
    axis = 2.0 * np.pi * np.arange(m) / m
    return list(np.meshgrid(*([axis] * n), indexing="ij"))


def initial_metric(initial: InitialCondition, n: int, m: int, h: float | None = None) -> MetricField:
    spacing = h if h is not None else 2.0 * math.pi / m
    eye = np.eye(n)
    if initial.name == "flat":
        values = np.broadcast_to(eye, (m,) * n + (n, n)).copy()
    elif initial.name == "conformal-sine":
        angles = grid_angles(n, m)
        u = initial.epsilon * np.prod(np.sin(np.stack(angles)), axis=0)
        values = np.exp(2.0 * u)[..., None, None] * eye
    elif initial.name == "random-perturbation":
        rng = np.random.default_rng(initial.seed)
        angles = grid_angles(n, m)
        values = np.broadcast_to(eye, (m,) * n + (n, n)).copy()
        for i in range(n):
            for j in range(i, n):
                amplitude = rng.uniform(-1.0, 1.0, size=n)
                phase = rng.uniform(0.0, 2.0 * np.pi, size=n)
                wave = sum(amplitude[a] * np.sin(angles[a] + phase[a]) for a in range(n)) / n
                values[..., i, j] += initial.epsilon * wave
                if i != j:
                    values[..., j, i] = values[..., i, j]
    else:
        raise InvalidInput(f"unknown initial condition {initial.name!r}")
    return MetricField(values, spacing)


def perturbation_norm(field: SymmetricField) -> float:
    """RMS deviation of the components from their grid mean."""
    axes = tuple(range(field.n))
    mean = field.values.mean(axis=axes, keepdims=True)
    return float(np.sqrt(np.mean((field.values - mean) ** 2)))


@dataclass(frozen=True)
class StepRecord:
    step: int
    max_abs_s: float
    min_det_g: float
    residual_norm: float
    conserved: float

    def csv_row(self) -> list[str]:
        return [str(self.step), repr(self.max_abs_s), repr(self.min_det_g), repr(self.residual_norm)]


@dataclass(frozen=True)
class RunResult:
    dt: float
    records: list[StepRecord]
    csv_path: Path
    dump_path: Path | None
    final: MetricField


def _check_invariants(field: SymmetricField, det_floor: float) -> None:
    assert np.array_equal(field.values, np.swapaxes(field.values, -1, -2)), "metric lost symmetry"
    low = float(field.det().min())
    if low < det_floor:
        raise FlowDegeneration(f"min det g = {low:.3e} fell below {det_floor:.1e}")


def _record(step: int, g: MetricField, phi: CotensorField, kappa: float, det_floor: float) -> StepRecord:
    source = ricci_source(g, det_floor)
    g_t, phi_t = coevolution_rates(g, phi, kappa, det_floor)
    residual = conservation_residual(g, phi, g_t, phi_t, kappa, det_floor)
    return StepRecord(
        step=step,
        max_abs_s=float(np.abs(source).max()),
        min_det_g=float(g.det().min()),
        residual_norm=float(np.sqrt(np.mean(residual**2))),
        conserved=conserved_integral(g, phi),
    )


def run_flow(config: RicciRunConfig, output_dir: Path, tracer: TraceLogger | None = None) -> RunResult:
    """Co-evolve g (forward) and phi (backward, phi(0) = g(0)) and write the time series."""
    g = initial_metric(config.initial, config.n, config.m, config.spacing)
    phi = CotensorField(g.values.copy(), g.h)
    dt = config.dt if config.dt is not None else stability_bound(g, config.stability_c)
    logger.info(
        "ricci run n=%d m=%d steps=%d dt=%.4g initial=%s", config.n, config.m, config.steps, dt, config.initial
    )
    if tracer:
        tracer.log(
            "run_start",
            {"n": config.n, "m": config.m, "steps": config.steps, "dt": dt, "initial": str(config.initial)},
        )

    records: list[StepRecord] = []
    for step in range(config.steps + 1):
        if config.check_every_step:
            _check_invariants(g, config.det_floor)
        record = _record(step, g, phi, config.kappa, config.det_floor)
        records.append(record)
        logger.debug("step %d max|S|=%.3e min det=%.6f", step, record.max_abs_s, record.min_det_g)
        if tracer:
            tracer.log("step", {"step": step, "max_abs_S": record.max_abs_s, "min_det_g": record.min_det_g,
                                "residual_norm": record.residual_norm, "conserved": record.conserved})
        if step == config.steps:
            break
        _, phi_t = coevolution_rates(g, phi, config.kappa, config.det_floor)
        g = flow_step(g, dt, stability_c=config.stability_c, det_floor=config.det_floor)
        phi = CotensorField(phi.values + dt * phi_t, phi.h)

    output_dir.mkdir(parents=True, exist_ok=True)
    csv_path = output_dir / "ricci_timeseries.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(record.csv_row())

    dump_path = dump_field(g, output_dir / "metric.f64", config.steps) if config.dump_fields else None
    if tracer:
        tracer.log("run_end", {"csv": str(csv_path), "dump": str(dump_path) if dump_path else None})
    return RunResult(dt=dt, records=records, csv_path=csv_path, dump_path=dump_path, final=g)


def dump_field(field: SymmetricField, path: Path, step: int) -> Path:
    """Raw little-endian doubles in row-major node order, plus a JSON sidecar."""
    path.parent.mkdir(parents=True, exist_ok=True)
    field.values.astype("<f8").tofile(path)
    sidecar = {
        "file": path.name,
        "dtype": "float64",
        "byte_order": "little",
        "order": "C",
        "shape": list(field.values.shape),
        "axes": [f"x{a}" for a in range(field.n)] + ["i", "j"],
        "h": field.h,
        "step": step,
    }
    path.with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    return path


def load_field(path: Path) -> MetricField:
    sidecar = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
    values = np.fromfile(path, dtype="<f8").reshape(sidecar["shape"])
    return MetricField(values, float(sidecar["h"]))


def conformal_ricci_exact(n: int, m: int, epsilon: float = 0.1) -> np.ndarray:
    """Ric of g = exp(2u) delta with u = eps prod sin x_a.

    Ric = -(n-2)(Hess u - du du) - (lap u + (n-2)|du|^2) delta; for n = 2 this is
    2u delta.
    """
    angles = grid_angles(n, m)
    sines = [np.sin(a) for a in angles]
    cosines = [np.cos(a) for a in angles]
    u = epsilon * math.prod(sines)
    du = np.stack(
        [epsilon * cosines[a] * math.prod(sines[k] for k in range(n) if k != a) for a in range(n)], axis=-1
    )
    hess = np.empty(u.shape + (n, n))
    for a in range(n):
        hess[..., a, a] = -u
        for b in range(a + 1, n):
            mixed = epsilon * cosines[a] * cosines[b] * math.prod(sines[k] for k in range(n) if k not in (a, b))
            hess[..., a, b] = mixed
            hess[..., b, a] = mixed
    outer = du[..., :, None] * du[..., None, :]
    scalar = -n * u + (n - 2) * np.sum(du * du, axis=-1)
    return -(n - 2) * (hess - outer) - scalar[..., None, None] * np.eye(n)


def conformal_ricci_error(m: int, epsilon: float = 0.1, n: int = 2) -> float:
    field = initial_metric(InitialCondition("conformal-sine", epsilon), n, m)
    return float(np.abs(ricci_tensor(field) - conformal_ricci_exact(n, m, epsilon)).max())


def christoffel_error(m: int, epsilon: float = 0.1) -> float:
    """Max error of [11,1] against (eps/2) cos x for g = (1 + eps sin x) delta."""
    x, _ = grid_angles(2, m)
    values = (1.0 + epsilon * np.sin(x))[..., None, None] * np.eye(2)
    chris = christoffel_first(MetricField(values, 2.0 * math.pi / m))
    return float(np.abs(chris[..., 0, 0, 0] - 0.5 * epsilon * np.cos(x)).max())


def convergence_orders(errors: Sequence[float], ratio: float = 2.0) -> list[float]:
    return [math.log(errors[i] / errors[i + 1], ratio) for i in range(len(errors) - 1)]


def richardson_orders(values: Sequence[float], ratio: float = 2.0) -> list[float]:
    """Observed orders from successive differences, for a limit that is not known."""
    return convergence_orders([abs(values[i] - values[i + 1]) for i in range(len(values) - 1)], ratio)


@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    h: float
    ricci_error: float
    christoffel_error: float


def convergence_study(
    grids: Sequence[int] = (16, 32, 64), epsilon: float = 0.1, n: int = 2
) -> list[ConvergenceRow]:
    return [
        ConvergenceRow(m=m, h=2.0 * math.pi / m, ricci_error=conformal_ricci_error(m, epsilon, n),
                       christoffel_error=christoffel_error(m, epsilon))
        for m in grids
    ]


@dataclass(frozen=True)
class DriftRow:
    m: int
    dt: float
    steps: int
    drift: float


def grid_drift_study(
    grids: Sequence[int] = (24, 48, 96), epsilon: float = 0.3, horizon: float = 4e-3, steps: int = 40
) -> list[DriftRow]:
    """Drift of sum tr g h^2 from a 2D conformal bump with phi the flat cotensor.

    phi = delta has R(phi) = 0, and the continuum integral is twice the area, which the
    2D flow keeps fixed on a torus. Any drift is discretisation error, O(h^2) at fixed dt.
    """
    dt = horizon / steps
    rows = []
    for m in grids:
        g = initial_metric(InitialCondition("conformal-sine", epsilon), 2, m)
        flat = CotensorField(np.broadcast_to(np.eye(2), g.values.shape).copy(), g.h)
        rows.append(DriftRow(m=m, dt=dt, steps=steps, drift=integral_drift(g, flat, dt, steps)))
    return rows


def time_drift_study(
    step_counts: Sequence[int] = (16, 32, 64, 128), epsilon: float = 0.3, m: int = 16, horizon: float = 0.016
) -> list[DriftRow]:
    """Drift of sum g_ij phi^ij h^2 with phi(0) = g(0), one grid, dt halved each row.

    The Euler drift approaches the semi-discrete one at O(dt); `richardson_orders` on
    the drifts recovers that order without knowing the limit.
    """
    g = initial_metric(InitialCondition("conformal-sine", epsilon), 2, m)
    phi = CotensorField(g.values.copy(), g.h)
    return [
        DriftRow(m=m, dt=horizon / steps, steps=steps, drift=integral_drift(g, phi, horizon / steps, steps))
        for steps in step_counts
    ]
