import random
from fractions import Fraction

import pytest

from exotica import reference
from exotica.errors import InvalidInput
from exotica.genus import (
    L_SEQUENCE,
    apply_sequence,
    apply_total,
    format_over_denominator,
    geometric_sequence,
    graded_product,
    l_lambda,
    l_polynomial,
    l_series,
    linear_sequence,
)


def test_l_lambda_values():
    assert l_lambda(0) == 1
    assert l_lambda(1) == Fraction(1, 3)
    assert l_lambda(2) == Fraction(-1, 45)
    assert l_lambda(3) == Fraction(2, 945)
    with pytest.raises(InvalidInput):
        l_lambda(-1)


def test_l_series_matches_printed_coefficients():
    series = l_series(2)
    assert [str(c) for c in series.coefficients] == list(reference.L_SERIES_PRINTED)
    assert str(series) == "1 + 1/3*z - 1/45*z^2"


def test_l_series_agrees_with_lambdas():
    series = l_series(8)
    assert all(series[k] == l_lambda(k) for k in range(9))
    assert L_SEQUENCE.characteristic_series(8) == series


def test_l_polynomials_match_printed_table():
    for k, row in reference.L_POLYNOMIAL_TABLE.items():
        assert format_over_denominator(l_polynomial(k)) == row["polynomial"]


def test_l_polynomial_one_variable_specialization():
    # With only p_1 nonzero, L_k reduces to lambda_k p_1^k.
    for k in range(1, 5):
        values = {f"p{i}": 0 for i in range(1, k + 1)}
        values["p1"] = 1
        assert l_polynomial(k).evaluate(values) == l_lambda(k)


def test_l_polynomial_rejects_weight_zero():
    with pytest.raises(InvalidInput):
        l_polynomial(0)


def test_apply_sequence_on_cp2():
    assert apply_sequence(L_SEQUENCE, [3], 1) == 1
    assert apply_sequence(L_SEQUENCE, [5, 10], 2) == 1


def test_apply_sequence_edge_cases():
    assert apply_sequence(L_SEQUENCE, [], 0) == 1
    with pytest.raises(InvalidInput) as excinfo:
        apply_sequence(L_SEQUENCE, [1], 2)
    assert excinfo.value.kind == "missing-components"


def test_linear_sequence_picks_the_top_component():
    seq = linear_sequence(3)
    assert str(seq.polynomial(2)) == "9*p2"
    assert apply_sequence(seq, [5, 7], 2) == 63
    assert apply_sequence(seq, [5, 7, 11], 3) == 27 * 11


@pytest.mark.parametrize("seq", [L_SEQUENCE, geometric_sequence(2), linear_sequence(Fraction(1, 2))])
def test_sequences_are_multiplicative(seq):
    rng = random.Random(4)
    for _ in range(5):
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        ka = apply_total(seq, a, 4)
        kb = apply_total(seq, b, 4)
        kab = apply_total(seq, graded_product(a, b), 4)
        for w in range(5):
            assert kab[w] == sum(ka[i] * kb[w - i] for i in range(w + 1))


def test_graded_product():
    assert graded_product([1, 2], [3, 4]) == [4, 4 + 3 + 2]
