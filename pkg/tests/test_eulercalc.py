import pytest

from exotica import chiexpr, eulercalc as ec, reference
from exotica.errors import InvalidInput, ParseError


@pytest.mark.parametrize("expr,expected,description", reference.CHI_EXAMPLES)
def test_printed_examples(expr, expected, description):
    assert chiexpr.evaluate(expr) == expected, description


def test_basic_descriptors():
    assert ec.chi_sphere(0) == 2
    assert ec.sphere(7).chi == 0
    assert ec.circle().chi == 0
    assert ec.klein_bottle().chi == 0
    assert ec.real_projective_space(6).chi == 1
    assert not ec.real_projective_space(2).orientable
    assert ec.mobius_strip().closed is False
    assert ec.cross_cap().name == "cross-cap"
    assert ec.surface(True, 3).chi == -4
    assert ec.chi_surface(False, 1) == 1


def test_sphere_dimension_must_be_nonnegative():
    assert [ec.chi_sphere(n) for n in range(4)] == [2, 0, 2, 0]
    assert isinstance(ec.chi_sphere(6), int)
    with pytest.raises(InvalidInput):
        ec.chi_sphere(-1)
    with pytest.raises(InvalidInput):
        ec.chi_connected_sum(2, 2, -2)
    with pytest.raises(InvalidInput):
        chiexpr.evaluate("sphere(0 - 1)")


def test_closed_odd_manifold_needs_zero_chi():
    with pytest.raises(InvalidInput) as excinfo:
        ec.ChiManifold(chi=2, dim=3)
    assert excinfo.value.kind == "inconsistent-input"
    assert ec.ChiManifold(chi=1, dim=3, closed=False).chi == 1


def test_chi_combine_rules():
    s2 = ec.sphere(2)
    assert ec.chi_combine(ec.DisjointUnion(), [s2, s2]) == 4
    assert ec.chi_combine(ec.Product(), [s2, ec.sphere(4)]) == 4
    assert ec.chi_combine(ec.Excision(), [ec.disk(2), ec.disk(2), ec.circle()]) == 2
    assert ec.chi_combine(ec.Covering(3), [s2]) == 6
    assert ec.chi_combine(ec.Fibration(), [ec.circle(), s2]) == 0
    assert ec.chi_combine(ec.Product(), [2, 3]) == 6


def test_chi_combine_arity():
    with pytest.raises(InvalidInput) as excinfo:
        ec.chi_combine(ec.Excision(), [1, 2])
    assert excinfo.value.kind == "invalid-arguments"
    with pytest.raises(InvalidInput):
        ec.Covering(0)


def test_surgery_changes_chi_by_two():
    assert ec.chi_surgery(2, 2) == 0
    assert ec.chi_surgery(2, 1) == 4
    with pytest.raises(InvalidInput):
        ec.chi_surgery(2, -1)


def test_surgery_steps_on_six_sphere():
    steps = ec.chi_surgery_steps(2, 6, 2)
    assert steps == ec.SurgerySteps(complement=0, handle=0, gluing=0, result=0)
    assert ec.chi_surgery_steps(2, 2, 0).result == 0
    with pytest.raises(InvalidInput):
        ec.chi_surgery_steps(0, 3, 1)
    with pytest.raises(InvalidInput):
        ec.chi_surgery_steps(2, 4, 4)


def test_surgery_steps_agree_with_formula():
    for dim in (2, 4, 6, 8):
        for p in range(dim):
            for chi in (-2, 0, 2, 4):
                assert ec.chi_surgery_steps(chi, dim, p).result == ec.chi_surgery(chi, p)


def test_connected_sum():
    assert ec.chi_connected_sum(0, 0, 2) == -2
    assert ec.chi_connected_sum(1, 1, 2) == 0
    assert ec.chi_connected_sum(0, 0, 3) == 0


def test_betti_and_boundary_parity():
    assert ec.chi_from_betti([1, 2, 1]) == 0
    assert ec.chi_from_betti([1, 0, 0, 0, 1]) == 2
    with pytest.raises(InvalidInput):
        ec.chi_from_betti([1, -1])
    assert ec.boundary_parity_check(2, 2, 1)
    assert not ec.boundary_parity_check(2, 2, 2)
    with pytest.raises(InvalidInput):
        ec.boundary_parity_check(0, 3, 0)


def test_handle_complexes():
    torus = ec.HandleComplex.of(1, 2, 1)
    assert torus.dim == 2
    assert ec.handle_chi(torus) == 0
    assert ec.handle_chi(ec.attach(torus, 1)) == -1
    assert ec.handle_chi(ec.attach(torus, 2)) == 1
    assert ec.HandleComplex(3, (1,)).counts == (1, 0, 0, 0)
    with pytest.raises(InvalidInput):
        ec.attach(torus, 3)
    with pytest.raises(InvalidInput):
        ec.HandleComplex(1, (1, 1, 1))


def test_semicharacteristic_and_curvatura_integra():
    assert ec.semicharacteristic([1, 0, 1]) == 0
    assert ec.semicharacteristic([1, 1, 1]) == 1
    assert ec.curvatura_integra(2, 2) == 1
    assert ec.curvatura_integra(4, -2, hopf=3) == 2
    assert ec.curvatura_integra(5, 0, semichar=1, hopf=0) == 1
    assert ec.curvatura_integra(5, 0, semichar=1, hopf=1) == 0
    with pytest.raises(InvalidInput):
        ec.curvatura_integra(2, 1)


def test_expression_arithmetic():
    assert chiexpr.evaluate("2*sphere(2) - 1") == 3
    assert chiexpr.evaluate("-(sphere(4))") == -2
    assert chiexpr.evaluate("product(sphere(2), sphere(3))") == 0
    assert chiexpr.evaluate("betti(1, 2, 1)") == 0
    assert chiexpr.evaluate("handles(1, 2, 1)") == 0
    assert chiexpr.evaluate("connected_sum(surface(1), surface(1), 2)") == -2


@pytest.mark.parametrize("source", ["", "sphere(2", "sphere 2", "nosuch(1)", "2 $ 3", "sphere(2))"])
def test_expression_parse_errors(source):
    with pytest.raises(ParseError):
        chiexpr.evaluate(source)


def test_expression_arity_errors():
    with pytest.raises(InvalidInput) as excinfo:
        chiexpr.evaluate("sphere(1, 2)")
    assert excinfo.value.kind == "invalid-arguments"
    with pytest.raises(InvalidInput):
        chiexpr.evaluate("union(sphere(2))")
