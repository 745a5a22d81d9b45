import csv
import json
from pathlib import Path

import numpy as np
import pytest

from exotica.config import InitialCondition, RicciRunConfig
from exotica.errors import InvalidInput, NearDegenerateMetric
from exotica.ricci import (
    CotensorField,
    MetricField,
    christoffel_error,
    coevolution_rates,
    conformal_ricci_error,
    conformal_ricci_exact,
    conservation_residual,
    conserved_integral,
    convergence_orders,
    convergence_study,
    flow_step,
    grid_drift_study,
    initial_metric,
    integral_drift,
    load_field,
    perturbation_norm,
    richardson_orders,
    ricci_source,
    ricci_tensor,
    run_flow,
    stability_bound,
    time_drift_study,
)
from exotica.trace import TraceLogger


def conformal(m: int = 16, epsilon: float = 0.1) -> MetricField:
    return initial_metric(InitialCondition("conformal-sine", epsilon), 2, m)


@pytest.mark.parametrize("n,m", [(2, 16), (3, 6)])
def test_flat_torus_is_stationary(n, m):
    g = initial_metric(InitialCondition("flat"), n, m)
    start = g.values.copy()
    assert np.abs(ricci_source(g)).max() == 0.0
    dt = stability_bound(g)
    for _ in range(100 if n == 2 else 5):
        g = flow_step(g, dt)
    assert np.abs(g.values - start).max() <= 1e-12


def test_conformal_oracle_converges_at_second_order():
    rows = convergence_study((16, 32, 64))
    errors = [row.ricci_error for row in rows]
    assert errors[0] > errors[1] > errors[2]
    assert min(convergence_orders(errors)) >= 1.8


def test_christoffel_symbols_converge_at_second_order():
    errors = [christoffel_error(m) for m in (16, 32, 64)]
    assert min(convergence_orders(errors)) >= 1.8


def test_ricci_tensor_is_symmetric():
    g = initial_metric(InitialCondition("random-perturbation", 0.05, 7), 2, 12)
    ric = ricci_tensor(g)
    assert np.array_equal(ric, np.swapaxes(ric, -1, -2))


def test_conservation_residual_vanishes_on_the_coevolution():
    g = conformal()
    phi = CotensorField(g.values.copy(), g.h)
    g_t, phi_t = coevolution_rates(g, phi, kappa=1.5)
    residual = conservation_residual(g, phi, g_t, phi_t, kappa=1.5)
    assert np.abs(residual).max() <= 1e-12


def test_conservation_residual_detects_a_wrong_rate():
    g = conformal()
    phi = CotensorField(g.values.copy(), g.h)
    g_t, phi_t = coevolution_rates(g, phi)
    residual = conservation_residual(g, phi, np.zeros_like(g_t), phi_t)
    assert np.abs(residual).max() > 1e-3


def test_conservation_residual_needs_matching_grids():
    g = conformal(16)
    other = conformal(8)
    phi = CotensorField(other.values, other.h)
    with pytest.raises(InvalidInput):
        conservation_residual(g, phi, g.values, phi.values)


def test_conserved_integral_sums_over_nodes():
    g = initial_metric(InitialCondition("flat"), 2, 8)
    phi = CotensorField(2.0 * g.values, g.h)
    # tr(2 delta) = 4 at each of 64 nodes
    assert conserved_integral(g, phi) == pytest.approx(4.0 * 64 * g.h**2)


def test_integral_drift_is_zero_for_flat_pairs():
    g = initial_metric(InitialCondition("flat"), 3, 6)
    phi = CotensorField(g.values.copy(), g.h)
    assert integral_drift(g, phi, 1e-3, 3) == 0.0


def test_conserved_integral_drift_is_second_order_in_h():
    rows = grid_drift_study()
    drifts = [abs(row.drift) for row in rows]
    assert drifts[0] > drifts[1] > drifts[2] > 0.0
    assert min(convergence_orders(drifts)) >= 1.8


def test_conserved_integral_drift_is_first_order_in_dt():
    rows = time_drift_study()
    assert [row.steps for row in rows] == [16, 32, 64, 128]
    orders = richardson_orders([row.drift for row in rows])
    assert all(order == pytest.approx(1.0, abs=0.2) for order in orders)


def test_conformal_oracle_in_three_dimensions():
    errors = [conformal_ricci_error(m, n=3) for m in (8, 16, 32)]
    assert errors[0] > errors[1] > errors[2]
    assert min(convergence_orders(errors)) >= 1.7


def test_conformal_oracle_reduces_to_2u_in_two_dimensions():
    x, y = np.meshgrid(*([2.0 * np.pi * np.arange(8) / 8] * 2), indexing="ij")
    exact = conformal_ricci_exact(2, 8, 0.2)
    assert np.allclose(exact[..., 0, 0], 0.4 * np.sin(x) * np.sin(y))
    assert np.all(exact[..., 0, 1] == 0.0)


def test_flow_step_rejects_unstable_dt():
    g = conformal()
    with pytest.raises(InvalidInput):
        flow_step(g, 2.0 * stability_bound(g))
    with pytest.raises(InvalidInput):
        flow_step(g, 0.0)


def test_conformal_bump_flattens_under_the_flow():
    g = conformal()
    dt = stability_bound(g)
    stepped = g
    for _ in range(20):
        stepped = flow_step(stepped, dt)
    assert perturbation_norm(stepped) < perturbation_norm(g)
    assert np.array_equal(stepped.values, np.swapaxes(stepped.values, -1, -2))


def test_near_degenerate_metric_is_refused():
    values = np.broadcast_to(1e-6 * np.eye(2), (8, 8, 2, 2)).copy()
    with pytest.raises(NearDegenerateMetric):
        ricci_source(MetricField(values, 0.5))


def test_field_validation():
    values = np.broadcast_to(np.eye(2), (8, 8, 2, 2)).copy()
    values[0, 0, 0, 1] = 0.5
    with pytest.raises(InvalidInput):
        MetricField(values, 0.5)
    with pytest.raises(InvalidInput):
        MetricField(np.ones((8, 2, 2)), 0.5)
    with pytest.raises(InvalidInput):
        MetricField(np.broadcast_to(np.eye(2), (8, 8, 2, 2)), 0.0)


def test_random_perturbation_is_seeded():
    a = initial_metric(InitialCondition("random-perturbation", 0.1, 3), 2, 8)
    b = initial_metric(InitialCondition("random-perturbation", 0.1, 3), 2, 8)
    c = initial_metric(InitialCondition("random-perturbation", 0.1, 4), 2, 8)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_run_flow_writes_outputs(tmp_path: Path):
    config = RicciRunConfig(n=2, m=16, steps=3, initial=InitialCondition("conformal-sine", 0.1), dump_fields=True)
    tracer = TraceLogger(tmp_path / "trace.jsonl")
    result = run_flow(config, tmp_path / "out", tracer)

    assert [r.step for r in result.records] == [0, 1, 2, 3]
    assert all(r.residual_norm <= 1e-12 for r in result.records)
    assert result.records[-1].max_abs_s < result.records[0].max_abs_s

    with result.csv_path.open(encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["step", "max_abs_S", "min_det_g", "residual_norm"]
    assert len(rows) == 5

    sidecar = json.loads(result.dump_path.with_suffix(".json").read_text(encoding="utf-8"))
    assert sidecar["shape"] == [16, 16, 2, 2]
    assert sidecar["step"] == 3
    assert np.array_equal(load_field(result.dump_path).values, result.final.values)

    events = [json.loads(line)["event"] for line in tracer.path.read_text(encoding="utf-8").splitlines()]
    assert events == ["run_start", "step", "step", "step", "step", "run_end"]


def test_run_flow_without_dump(tmp_path: Path):
    config = RicciRunConfig(n=2, m=8, steps=0)
    result = run_flow(config, tmp_path)
    assert result.dump_path is None
    assert len(result.records) == 1
    assert result.records[0].max_abs_s == 0.0
