"""Replay the printed tables and the property checks.

Check groups run concurrently in worker threads; results are flattened in group order,
so the report is deterministic whatever order the threads finish in.
"""

from __future__ import annotations

import asyncio
import logging
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from . import bordism, chiexpr, eulercalc, forms, jets, milnor, reference, ricci
from .config import InitialCondition
from .errors import NotTabulated
from .exactnum import bernoulli, format_rational
from .genus import format_over_denominator, l_polynomial, l_series
from .symmpoly import (
    Partition,
    coefficient_rank,
    monomial_symmetric_oracle,
    partitions_of,
    s_polynomial,
    sigma_substitution,
)
from .trace import TraceLogger


logger = logging.getLogger("exotica.verify")

Payload = dict[str, object]


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    printed: str
    computed: str
    ok: bool
    note: str | None = None

    def to_json(self) -> dict[str, object]:
        return asdict(self)


def _compare(group: str, name: str, printed: object, computed: object, note: str | None = None) -> Check:
    return Check(group, name, str(printed), str(computed), str(printed) == str(computed), note)


def _holds(group: str, name: str, ok: bool, detail: str = "holds") -> Check:
    return Check(group, name, "holds", detail if ok else "fails", ok)


def _known(group: str, name: str, printed: object, computed: object, key: str) -> Check:
    """A printed value the exact computation corrects; recorded, not failed."""
    return Check(group, name, str(printed), str(computed), True, reference.DISCREPANCIES[key])


def check_bernoulli() -> list[Check]:
    out: list[Check] = []
    for n, printed in reference.BERNOULLI_TABLE.items():
        computed = format_rational(bernoulli(n))
        if n == 18 and printed != computed:
            out.append(_known("bernoulli", f"B_{n}", printed, computed, "bernoulli-18"))
        else:
            out.append(_compare("bernoulli", f"B_{n}", printed, computed))
    odd = [n for n in range(3, 40, 2) if bernoulli(n) != 0]
    out.append(_holds("bernoulli", "B_odd = 0 for 3 <= n < 40", not odd))
    return out


def check_s_polynomials() -> list[Check]:
    return [
        _compare("s-polynomials", f"s_{Partition(parts)}", printed, s_polynomial(Partition(parts)))
        for parts, printed in reference.S_POLYNOMIAL_TABLE.items()
    ]


def check_l_polynomials() -> list[Check]:
    out: list[Check] = []
    for k, row in reference.L_POLYNOMIAL_TABLE.items():
        out.append(_compare("l-polynomials", f"L_{k}", row["polynomial"], format_over_denominator(l_polynomial(k))))
    series = l_series(len(reference.L_SERIES_PRINTED) - 1)
    out.append(
        _compare(
            "l-polynomials",
            "series sqrt(z)/tanh(sqrt(z))",
            ", ".join(reference.L_SERIES_PRINTED),
            ", ".join(format_rational(c) for c in series.coefficients),
        )
    )
    for k, row in reference.L_POLYNOMIAL_TABLE.items():
        out.append(_compare("l-polynomials", f"p(CP^{2 * k})", row["pontrjagin"], tuple(milnor.pontrjagin_cp(2 * k))))
        terms, denominator = milnor.hirzebruch_terms(milnor.cp_pontrjagin_numbers(k))
        printed = f"{row['terms']}/{row['denominator']}"
        computed = f"{tuple(terms)}/{denominator}"
        out.append(_compare("l-polynomials", f"signature sum CP^{2 * k}", printed, computed))
        signature = milnor.hirzebruch_signature(milnor.cp_pontrjagin_numbers(k))
        out.append(_compare("l-polynomials", f"sigma(CP^{2 * k})", 1, format_rational(signature)))
    return out


def check_bordism() -> list[Check]:
    out: list[Check] = []
    for n, rank in reference.HOMOTOPY_SPHERE_BORDISM_TABLE.items():
        printed = bordism.FiniteAbelianGroup.z2_vector_space(rank)
        out.append(_compare("bordism", f"homotopy {n}-sphere", printed, bordism.homotopy_sphere_bordism(n)))
    return out


def check_euler() -> list[Check]:
    out = [_compare("euler", description, expected, chiexpr.evaluate(expr)) for expr, expected, description in reference.CHI_EXAMPLES]
    steps = eulercalc.chi_surgery_steps(2, 6, 2)
    out.append(_compare("euler", "S^6 -> S^3 x S^3 by 2-surgery", 0, steps.result))
    return out


def check_theta() -> list[Check]:
    out: list[Check] = []
    for n in range(1, 21):
        try:
            out.append(_holds("theta", f"|Theta_{n}| = |bP_{n + 1}| |Theta_{n}/bP_{n + 1}|", bordism.exactness_check(n)))
            out.append(_holds("theta", f"Theta_{n}/bP_{n + 1} in pi^s_{n}/J", bordism.injection_check(n)))
        except NotTabulated:
            continue
    for n in range(1, 21):
        try:
            out.append(_holds("theta", f"|pi^s_{n}| = |J| |pi^s_{n}/J|", bordism.stem_exactness_check(n)))
        except NotTabulated:
            continue
    for n in range(1, 21):
        try:
            computed = bordism.bp_formula(n + 1)
        except NotTabulated:
            continue
        out.append(_compare("theta", f"bP_{n + 1} from the order rules", bordism.bp(n + 1), computed))
    for m, printed in reference.BP_ORDERS_PRINTED.items():
        out.append(_compare("theta", f"|bP_{4 * m}|", printed, bordism.bp_order(m)))
    out.append(_known("theta", "typeset bP order at n=3", 992, bordism.bp_order_as_printed(3), "bp-formula"))
    return out


def check_e8() -> list[Check]:
    e8 = forms.e8_form()
    printed = forms.e8_form_as_printed()
    return [
        _compare("e8", "sigma(E8)", 8, forms.signature(e8)),
        _compare("e8", "det(E8)", 1, forms.determinant(e8)),
        _holds("e8", "E8 is even", forms.is_even(e8)),
        _known(
            "e8",
            "typeset matrix (det, sigma)",
            "(1, 8)",
            f"({forms.determinant(printed)}, {forms.signature(printed)})",
            "e8-matrix",
        ),
        _compare("e8", "Arf of the standard rank-2 form", 1, forms.arf(forms.standard_rank2_form())),
    ]


def _random_unimodular(rng: random.Random, n: int, moves: int = 12) -> list[list[int]]:
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(moves):
        i, j = rng.sample(range(n), 2)
        factor = rng.choice((-1, 1))
        for col in range(n):
            u[i][col] += factor * u[j][col]
    return u


def check_forms_properties(seed: int = 8, samples: int = 100) -> list[Check]:
    rng = random.Random(seed)
    blocks = (forms.e8_form(), forms.hyperbolic_form(), forms.IntegerSymmetricForm(tuple(tuple(-x for x in row) for row in forms.E8)))
    failures = 0
    for _ in range(samples):
        form = forms.direct_sum(*(rng.choice(blocks) for _ in range(rng.randint(1, 3))))
        form = forms.congruent(form, _random_unimodular(rng, form.rank))
        if not forms.rohlin_check(form):
            failures += 1
    return [_holds("forms", f"sigma = 0 (mod 8) on {samples} even unimodular sums", failures == 0)]


def _random_quadratic(rng: random.Random, genus: int) -> forms.Z2QuadraticForm:
    n = 2 * genus
    lam = [[0] * n for _ in range(n)]
    for k in range(genus):
        lam[2 * k][2 * k + 1] = lam[2 * k + 1][2 * k] = 1
    q = forms.Z2QuadraticForm(tuple(map(tuple, lam)), tuple(rng.randint(0, 1) for _ in range(n)))
    return q.change_basis([[x % 2 for x in row] for row in _random_unimodular(rng, n)])


def check_arf_properties(seed: int = 2, samples: int = 200) -> list[Check]:
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(samples):
        q = _random_quadratic(rng, rng.randint(1, 3))
        if forms.arf(q) != forms.arf_by_count(q):
            mismatches += 1
    return [_holds("forms", f"Arf = majority count on {samples} forms of dim <= 6", mismatches == 0)]


def check_s_oracle(max_weight: int = 6) -> list[Check]:
    out: list[Check] = []
    for n in range(1, max_weight + 1):
        tvars = tuple(f"t{i}" for i in range(1, n + 1))
        mapping = sigma_substitution(n, tvars)
        bad = [
            str(I)
            for I in partitions_of(n)
            if s_polynomial(I).substitute(mapping) != monomial_symmetric_oracle(I, tvars)
        ]
        out.append(_holds("s-polynomials", f"s_I(e_1..e_{n}) = m_I for |I| = {n}", not bad, "holds"))
        rank = coefficient_rank([s_polynomial(I) for I in partitions_of(n)])
        out.append(_compare("s-polynomials", f"s_I basis rank, weight {n}", len(partitions_of(n)), rank))
    return out


def check_milnor() -> list[Check]:
    wrong_verdict = []
    wrong_p2 = []
    for k in range(1, 200, 2):
        result = milnor.milnor_detect(k)
        exotic = k % 7 not in (1, 6)
        if (result.verdict is milnor.Verdict.EXOTIC) != exotic:
            wrong_verdict.append(k)
        if result.p2 != Fraction(45 + 4 * k * k, 7):
            wrong_p2.append(k)
    homology = [str(g) for g in milnor.sphere_bundle_homology(1)]
    return [
        _holds("milnor", "Exotic iff k mod 7 not in {1, 6}, odd k < 200", not wrong_verdict),
        _holds("milnor", "p2 = (45 + 4k^2)/7, odd k < 200", not wrong_p2),
        _compare("milnor", "H_*(V) for chi = 1", "Z, 0, 0, 0, 0, 0, 0, Z", ", ".join(homology)),
    ]


def check_euler_properties() -> list[Check]:
    handles = eulercalc.HandleComplex.of(1, 2, 1)
    return [
        _holds("euler", "boundary parity chi(S^2) = 2 chi(D^3)", eulercalc.boundary_parity_check(2, 2, 1)),
        _compare("euler", "handles (1, 2, 1) = torus", 0, eulercalc.handle_chi(handles)),
        _compare("euler", "attaching a 1-handle lowers chi by 1", -1, eulercalc.handle_chi(eulercalc.attach(handles, 1))),
        _compare("euler", "curvatura integra of S^2", 1, eulercalc.curvatura_integra(2, 2)),
    ]


def check_jets(max_n: int = 6, max_s: int = 5) -> list[Check]:
    broken = [(n, s) for n in range(1, max_n + 1) for s in range(1, max_s + 1) if not jets.jet_dims(n, s).recurrence_ok]
    return [_holds("jets", f"dim (RF)_+s = dim (RF)_+(s-1) + dim g_2+s, n <= {max_n}, s <= {max_s}", not broken)]


def check_ricci() -> list[Check]:
    flat = ricci.initial_metric(InitialCondition("flat"), 2, 16)
    start = flat.values.copy()
    dt = ricci.stability_bound(flat)
    for _ in range(100):
        flat = ricci.flow_step(flat, dt)
    drift = float(abs(flat.values - start).max())

    rows = ricci.convergence_study((16, 32, 64))
    orders = ricci.convergence_orders([row.ricci_error for row in rows])
    orders_3d = ricci.convergence_orders([ricci.conformal_ricci_error(m, n=3) for m in (8, 16, 32)])

    g = ricci.initial_metric(InitialCondition("conformal-sine", 0.1), 2, 32)
    phi = ricci.CotensorField(g.values.copy(), g.h)
    g_t, phi_t = ricci.coevolution_rates(g, phi)
    residual = float(abs(ricci.conservation_residual(g, phi, g_t, phi_t)).max())

    space_orders = ricci.convergence_orders([abs(row.drift) for row in ricci.grid_drift_study()])
    time_orders = ricci.richardson_orders([row.drift for row in ricci.time_drift_study()])

    def _listed(values: list[float]) -> str:
        return "orders " + ", ".join(f"{p:.2f}" for p in values)

    return [
        _holds("ricci", "flat torus stationary over 100 steps", drift <= 1e-12, f"drift {drift:.1e}"),
        _holds("ricci", "conformal Ricci oracle, order >= 1.8 over 16/32/64", min(orders) >= 1.8, _listed(orders)),
        _holds(
            "ricci", "3D conformal Ricci oracle, order >= 1.7 over 8/16/32", min(orders_3d) >= 1.7, _listed(orders_3d)
        ),
        _known(
            "ricci", "second-derivative bracket of S", "no 1/2", f"1/2, oracle error {rows[-1].ricci_error:.1e}", "ricci-half"
        ),
        _holds("ricci", "bracket residual with both flows substituted", residual <= 1e-12, f"max {residual:.1e}"),
        _holds("ricci", "conserved integral drift is O(h^2)", min(space_orders) >= 1.8, _listed(space_orders)),
        _holds(
            "ricci", "conserved integral drift is O(dt)", all(abs(p - 1.0) < 0.2 for p in time_orders), _listed(time_orders)
        ),
    ]


TABLE_GROUPS: dict[str, Callable[[], list[Check]]] = {
    "bordism": check_bordism,
    "euler": check_euler,
    "s-polynomials": check_s_polynomials,
    "l-polynomials": check_l_polynomials,
    "bernoulli": check_bernoulli,
    "theta": check_theta,
    "e8": check_e8,
}

PROPERTY_GROUPS: dict[str, Callable[[], list[Check]]] = {
    "s-oracle": check_s_oracle,
    "forms-mod8": check_forms_properties,
    "arf-oracle": check_arf_properties,
    "milnor": check_milnor,
    "euler-calculus": check_euler_properties,
    "jets": check_jets,
    "ricci": check_ricci,
}


def groups_for(scope: str) -> dict[str, Callable[[], list[Check]]]:
    if scope == "tables":
        return dict(TABLE_GROUPS)
    if scope == "properties":
        return dict(PROPERTY_GROUPS)
    assert scope == "all", f"unknown verify scope {scope!r}"
    return {**TABLE_GROUPS, **PROPERTY_GROUPS}


async def gather_checks(groups: dict[str, Callable[[], list[Check]]]) -> list[Check]:
    results = await asyncio.gather(*(asyncio.to_thread(fn) for fn in groups.values()))
    return [check for batch in results for check in batch]


def run_verify(scope: str, tracer: TraceLogger | None = None) -> Payload:
    groups = groups_for(scope)
    logger.info("verify %s: %d check groups", scope, len(groups))
    checks = asyncio.run(gather_checks(groups))
    for check in checks:
        if not check.ok:
            logger.warning("check failed: %s printed=%s computed=%s", check.name, check.printed, check.computed)
        if tracer:
            tracer.log("check_result", check.to_json(), {"scope": scope})
    notes = bordism.annotations() if "theta" in groups else []
    return {
        "command": "verify",
        "scope": scope,
        "covered": list(groups),
        "checks": [check.to_json() for check in checks],
        "annotations": notes,
        "passed": all(check.ok for check in checks),
    }
