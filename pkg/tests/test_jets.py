import pytest

from exotica.errors import InvalidInput
from exotica.jets import (
    applicability_check,
    dim_jet_space,
    dim_rf_prolongation,
    dim_symbol,
    jet_dims,
    jet_table,
)


def test_small_dimensions():
    assert dim_jet_space(1, 0) == 8
    assert dim_symbol(1, 0) == 2
    assert dim_symbol(2, 1) == 21
    assert dim_rf_prolongation(1, 0) == 7
    assert dim_rf_prolongation(2, 0) == 30


def test_prolongation_recurrence():
    for n in range(1, 7):
        rows = jet_table(n, 5)
        assert rows[0].recurrence_ok is None
        assert all(row.recurrence_ok for row in rows[1:])


def test_jet_dims_json():
    assert jet_dims(2, 1).to_json() == {
        "s": 1,
        "dim_jet": dim_jet_space(2, 1),
        "dim_rf": dim_rf_prolongation(2, 1),
        "dim_symbol": 21,
        "recurrence_ok": True,
    }


def test_applicability():
    assert all(applicability_check(n) for n in range(1, 10))


@pytest.mark.parametrize("n,s", [(0, 0), (2, -1)])
def test_invalid_arguments(n, s):
    with pytest.raises(InvalidInput):
        dim_jet_space(n, s)


def test_jet_table_rejects_negative_order():
    with pytest.raises(InvalidInput):
        jet_table(2, -1)
