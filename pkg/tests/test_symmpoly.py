from fractions import Fraction

import pytest
import sympy

from exotica import reference
from exotica.errors import InvalidInput, ParseError
from exotica.symmpoly import (
    GradedPolynomial,
    Partition,
    coefficient_rank,
    elementary_symmetric,
    monomial_symmetric_oracle,
    partitions_of,
    s_polynomial,
    sigma_ring,
    sigma_substitution,
)


def test_partitions_of_small_weights():
    assert partitions_of(0) == [Partition()]
    assert [len(partitions_of(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]
    assert [str(p) for p in partitions_of(4)] == ["(1,1,1,1)", "(1,1,2)", "(1,3)", "(2,2)", "(4)"]


def test_partitions_have_the_right_weight():
    for n in range(1, 8):
        assert all(p.weight == n for p in partitions_of(n))
        assert len(set(partitions_of(n))) == len(partitions_of(n))


def test_partition_validation_and_parse():
    assert Partition.of(2, 1, 1) == Partition((1, 1, 2))
    assert Partition.parse("(2, 1)") == Partition((1, 2))
    assert Partition.parse("()") == Partition()
    with pytest.raises(InvalidInput):
        Partition((2, 1))
    with pytest.raises(InvalidInput):
        Partition((0, 1))
    with pytest.raises(ParseError):
        Partition.parse("(1;2)")


def test_s_polynomials_match_printed_table():
    for parts, printed in reference.S_POLYNOMIAL_TABLE.items():
        assert str(s_polynomial(Partition(parts))) == printed


def test_s_polynomial_of_all_ones_is_top_elementary():
    for n in range(1, 6):
        poly = s_polynomial(Partition((1,) * n))
        assert str(poly) == f"s{n}"


@pytest.mark.parametrize("weight", [1, 2, 3, 4, 5])
def test_s_polynomial_reproduces_monomial_symmetric_function(weight):
    tvars = tuple(f"t{i}" for i in range(1, weight + 1))
    mapping = sigma_substitution(weight, tvars)
    for partition in partitions_of(weight):
        assert s_polynomial(partition).substitute(mapping) == monomial_symmetric_oracle(partition, tvars)


def test_s_polynomials_form_a_basis():
    for n in range(1, 7):
        basis = partitions_of(n)
        assert coefficient_rank([s_polynomial(p) for p in basis]) == len(basis)


def test_s_polynomials_are_homogeneous():
    for n in range(1, 6):
        for partition in partitions_of(n):
            assert s_polynomial(partition).is_homogeneous(n)


def test_oracle_needs_enough_variables():
    with pytest.raises(InvalidInput) as excinfo:
        monomial_symmetric_oracle(Partition.of(1, 2), ("t1", "t2"))
    assert excinfo.value.kind == "insufficient-variables"


def test_oracle_with_extra_variables():
    poly = monomial_symmetric_oracle(Partition.of(2), ("t1", "t2", "t3"))
    assert str(poly) == "t1^2 + t2^2 + t3^2"


def test_elementary_symmetric():
    e2 = elementary_symmetric(2, ("a", "b", "c"))
    assert len(e2.terms) == 3
    assert e2.evaluate({"a": 1, "b": 2, "c": 3}) == 11


def test_graded_polynomial_arithmetic():
    names, weights = sigma_ring(2)
    s1 = GradedPolynomial.variable("s1", names, weights)
    s2 = GradedPolynomial.variable("s2", names, weights)
    square = (s1 + s2) ** 2
    assert square.coefficient({"s1": 1, "s2": 1}) == 2
    assert square - s1 * s1 - 2 * s1 * s2 == s2**2
    assert not square.is_homogeneous()
    assert (s1 * s1 - 2 * s2).is_homogeneous(2)
    assert (s1 - s1).is_zero()
    assert (s1 * Fraction(1, 3)).evaluate({"s1": 6}) == 2


def test_constants_compare_across_rings():
    names, weights = sigma_ring(3)
    assert GradedPolynomial.constant(1, names, weights) == GradedPolynomial.constant(1)
    assert GradedPolynomial.constant(1, names, weights) == 1


def test_mixing_rings_is_rejected():
    a = GradedPolynomial.variable("s1", *sigma_ring(1))
    b = GradedPolynomial.variable("p1", *sigma_ring(1, "p"))
    with pytest.raises(InvalidInput):
        a + b


def test_s_polynomial_as_sympy_expression():
    s1, s2, s3, s4 = sympy.symbols("s1:5")
    poly = s_polynomial(Partition.of(2, 2))
    assert poly.as_poly().as_expr() == s2**2 - 2 * s1 * s3 + 2 * s4


def test_substitute_into_another_ring():
    names, weights = sigma_ring(2)
    square = GradedPolynomial.variable("s1", names, weights) ** 2 - 2 * GradedPolynomial.variable("s2", names, weights)
    power_sum = square.substitute(sigma_substitution(2, ("a", "b")))
    assert str(power_sum) == "a^2 + b^2"
    with pytest.raises(InvalidInput):
        square.substitute({"s1": elementary_symmetric(1, ("a", "b"))})
