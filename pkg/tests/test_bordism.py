import pytest

from exotica import bordism, reference
from exotica.bordism import FiniteAbelianGroup
from exotica.errors import InvalidInput, NotTabulated


def test_unoriented_bordism_ranks():
    assert [bordism.unoriented_bordism_rank(s) for s in range(6)] == [1, 0, 1, 0, 2, 1]
    with pytest.raises(InvalidInput):
        bordism.unoriented_bordism_rank(-1)


def test_homotopy_sphere_bordism_matches_printed_ranks():
    for n, rank in reference.HOMOTOPY_SPHERE_BORDISM_TABLE.items():
        assert bordism.homotopy_sphere_bordism(n) == FiniteAbelianGroup.z2_vector_space(rank)


def test_singular_bordism_of_a_point_class():
    # H_*(pt; Z_2) in degrees 0..4
    assert bordism.singular_integral_bordism([1, 0, 0, 0, 0]) == FiniteAbelianGroup.z2_vector_space(2)
    with pytest.raises(InvalidInput):
        bordism.singular_integral_bordism([])
    with pytest.raises(InvalidInput):
        bordism.singular_integral_bordism([1, -1])


def test_group_canonical_form():
    assert FiniteAbelianGroup(torsion=(2, 3)) == FiniteAbelianGroup.cyclic(6)
    assert FiniteAbelianGroup(torsion=(2, 3)).to_json() == {"free_rank": 0, "torsion": [6]}
    assert FiniteAbelianGroup(torsion=(4, 2, 2)).torsion == (2, 2, 4)
    assert FiniteAbelianGroup(torsion=(12, 18)).torsion == (6, 36)
    assert FiniteAbelianGroup(torsion=(4, 2)).torsion == (2, 4)
    assert FiniteAbelianGroup(torsion=(1, 1)).is_trivial
    assert FiniteAbelianGroup.cyclic(0) == FiniteAbelianGroup(free_rank=1)
    assert FiniteAbelianGroup(torsion=(2, 3)).is_cyclic
    assert not FiniteAbelianGroup(torsion=(2, 2)).is_cyclic
    with pytest.raises(InvalidInput):
        FiniteAbelianGroup(torsion=(0,))
    with pytest.raises(InvalidInput):
        FiniteAbelianGroup(free_rank=1).order


def test_format_group():
    assert str(FiniteAbelianGroup(1, (2, 2))) == "Z ⊕ Z_2 ⊕ Z_2"
    assert str(FiniteAbelianGroup(2)) == "Z^2"
    assert str(FiniteAbelianGroup.trivial()) == "0"
    assert bordism.format_group({"free_rank": 0, "torsion": [28]}) == "Z_28"
    group = FiniteAbelianGroup(torsion=(2, 8128))
    assert FiniteAbelianGroup.from_json(group.to_json()) == group


def test_table_lookups():
    assert str(bordism.theta(7)) == "Z_28"
    assert bordism.theta(1).is_trivial
    assert bordism.bp(8).order == 28
    assert bordism.bp(16).order == 8128
    assert bordism.stable_stem(0) == FiniteAbelianGroup(free_rank=1)
    assert bordism.j_image(0).is_trivial
    assert bordism.coker_j(14).order == 4


def test_untabulated_entries():
    with pytest.raises(NotTabulated):
        bordism.stable_stem(18)
    with pytest.raises(NotTabulated):
        bordism.theta(21)
    with pytest.raises(InvalidInput):
        bordism.table_entry("nope", 3)
    column = bordism.groups_column(19)
    assert column["stable_stem"] is None
    assert column["theta"].order == 523264


def test_table_consistency_checks():
    for n in range(1, 21):
        assert bordism.exactness_check(n), n
        assert bordism.injection_check(n), n
    for n in range(1, 18):
        assert bordism.stem_exactness_check(n), n


def test_bp_order_reproduces_table():
    for m, order in reference.BP_ORDERS_PRINTED.items():
        assert bordism.bp_order(m) == order
        assert bordism.bp(4 * m).order == order
    assert bordism.bp_order_as_printed(2) == 28
    assert bordism.bp_order_as_printed(3) == 685472
    with pytest.raises(InvalidInput):
        bordism.bp_order(1)


def test_bp_formula_agrees_with_table():
    for m in range(2, 22):
        assert bordism.bp_formula(m) == bordism.bp(m), m
    assert bordism.bp_formula(10) == FiniteAbelianGroup.cyclic(2)
    assert bordism.bp_formula(30).is_trivial
    assert bordism.bp_formula(8) == FiniteAbelianGroup.cyclic(28)
    with pytest.raises(NotTabulated):
        bordism.bp_formula(126)


def test_surgery_obstruction_groups():
    assert bordism.l_group(0) == FiniteAbelianGroup(free_rank=1)
    assert bordism.l_group(6) == FiniteAbelianGroup.cyclic(2)
    assert bordism.l_group(5).is_trivial
    assert bordism.p_group(3).is_trivial
    assert bordism.p_group(8) == FiniteAbelianGroup(free_rank=1)
    with pytest.raises(InvalidInput):
        bordism.l_group(-1)


def test_sphere_parallelizable():
    assert [n for n in range(1, 16) if bordism.sphere_parallelizable(n)] == [1, 3, 7]


def test_annotations():
    (text,) = bordism.annotations("theta", 9)
    assert "Z_8" in text
    assert "Z_2 ⊕ Z_2 ⊕ Z_2" in text
    assert len(bordism.annotations()) == len(reference.LITERATURE_GROUPS)
    assert bordism.annotation("theta", 7) is None
