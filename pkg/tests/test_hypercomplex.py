import numpy as np
import pytest

from conftest import read_cayley
from pauligeo import hypercomplex as hc


def test_q8_fixture():
    labels, rows = read_cayley("q8.txt")
    t = hc.q8_table()
    assert t.labels() == labels
    assert t.compare(rows) == []


def test_complex_quaternion_fixture():
    labels, rows = read_cayley("complex_quaternion.txt")
    t = hc.complex_quaternion_table()
    assert t.labels() == labels
    assert t.compare(rows) == []


def test_coquaternion_printed_cells_disagree_only_at_k_row():
    # the printed table cannot be a group table: four cells break associativity
    labels, rows = read_cayley("coquaternion.txt")
    t = hc.coquaternion_table()
    assert t.labels() == labels
    bad = t.compare(rows)
    assert sorted((a, b) for a, b, _, _ in bad) == [("-k", "-Ki"), ("-k", "Ki"), ("k", "-Ki"), ("k", "Ki")]


@pytest.mark.parametrize("name", ["q8", "coq", "cq16"])
def test_group_axioms(name):
    assert hc.verify_group(hc.GROUPS[name]()).is_group


def test_octonion_units_are_not_a_group():
    assert not hc.verify_group(hc.octonion_table()).is_group


@pytest.mark.parametrize("name,count", [("q8", 6), ("coq", 2), ("cq16", 8)])
def test_negative_squares(name, count):
    assert hc.negative_square_count(hc.GROUPS[name]()) == count


def test_c2c4_subtable():
    t = hc.c2_c4_table()
    assert len(t.elements) == 8
    assert hc.verify_group(t).is_group
    assert hc.negative_square_count(t) == 4


def test_c2_times_q8_structure():
    f = hc.c2_q8_factorization()
    assert f["kk_squares_to_one"] and f["covers_each_element_once"]
    assert not f["kk_central"]
    assert sorted(f["center"]) == sorted(["1", "-1", "K", "-K"])


def test_pauli_homomorphism():
    assert hc.pauli_homomorphism_check()["ok"]


def test_quaternion_matrices_multiply_like_units():
    alg = hc.COMPLEX_QUATERNIONS
    q8 = hc.q8_table().elements
    for a in q8:
        for b in q8:
            prod = alg.mul(a, b)
            assert np.allclose(hc.quaternion_matrix(a) @ hc.quaternion_matrix(b), hc.quaternion_matrix(prod))


def test_octonion_non_associative_witness():
    o = hc.OCTONIONS
    i, j, k = (o.unit(s) for s in "ijk")
    assert o.mul(o.mul(i, j), k) != o.mul(i, o.mul(j, k))


def test_octonion_laws():
    assert hc.norm_multiplicativity(1000, seed=0) == 0
    assert hc.alternative_laws()
    assert set(hc.unit_squares().values()) == {"-1"}
    o = hc.OCTONIONS
    assert str(o.mul(o.unit("p"), o.unit("q"))) == "r"
    assert str(o.mul(o.unit("i"), o.unit("r"))) == "j"


def test_norm_multiplicativity_exact_on_integers():
    x = np.array([1, -2, 3, 0, 4, -1, 2, 5])
    y = np.array([-3, 1, 0, 2, -2, 4, 1, -1])
    assert hc.norm_squared(hc.algebra_multiply(x, y)) == hc.norm_squared(x) * hc.norm_squared(y)
