import itertools
from collections import Counter

import numpy as np
import pytest

from pauligeo import geometry as geo
from pauligeo.errors import DomainError
from pauligeo.pauli import GENERATORS, parse_label, to_matrix


def test_point_counts():
    assert geo.pg_point_count(2, 2) == 7
    assert geo.pg_point_count(3, 2) == 15
    assert geo.pg_point_count(2, 3) == 13
    assert geo.pg_point_count(4, 1) == 5


def test_fano_plane():
    lines = geo.pg_lines(2)
    assert len(lines) == 7
    assert all(len(geo.lines_through(lines, p)) == 3 for p in geo.pg_points(2))
    for a, b in itertools.combinations(lines, 2):
        assert len(set(a) & set(b)) == 1


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 7), (3, 35), (4, 155), (5, 651)])
def test_line_counts(n, expected):
    assert len(geo.pg_lines(n)) == expected


def test_lines_are_xor_closed():
    for ln in geo.pg_lines(3):
        a, b, c = ln
        assert a ^ b == c or a ^ c == b or b ^ c == a


def test_pauli_labelling_is_a_bijection():
    labels = {geo.point_to_pauli(p).letters for p in geo.pg_points(3)}
    assert labels == {g.label for g in GENERATORS}
    for p in geo.pg_points(3):
        assert geo.pauli_to_point(geo.point_to_pauli(p).letters) == p


def test_line_split_per_point():
    lines = geo.pg_lines(3)
    kinds = Counter(geo.pauli_line_classify(ln) for ln in lines)
    assert kinds == {"commuting": 15, "cyclic": 20}
    for p in geo.pg_points(3):
        through = Counter(geo.pauli_line_classify(ln) for ln in geo.lines_through(lines, p))
        assert through == {"commuting": 3, "cyclic": 4}


def test_line_products_are_identity_up_to_phase():
    for ln in geo.pg_lines(3):
        m = np.eye(4, dtype=complex)
        for p in ln:
            m = m @ to_matrix(geo.point_to_pauli(p))
        assert np.allclose(np.abs(np.diag(m)), 1) and np.allclose(m, m[0, 0] * np.eye(4))


def test_eg_decomposition():
    assert geo.eg_decomposition(3) == (7, 8)


def test_doily():
    d = geo.doily()
    assert len(d.lines) == 15
    assert set(d.lines_per_point().values()) == {3}


def test_ovoids():
    d = geo.doily()
    ovoids = geo.find_ovoids(d)
    assert len(ovoids) == 6
    for ov in ovoids:
        assert not any(d.collinear(a, b) for a, b in itertools.combinations(ov, 2))


def test_grids_and_mermin_parity():
    grids = geo.find_grids()
    assert len(grids) == 10
    assert all(geo.mermin_parity_ok(g) for g in grids)


def test_spreads():
    spreads = geo.find_spreads()
    assert len(spreads) == 56
    for sp in spreads:
        assert sorted(p for ln in sp for p in ln) == list(range(1, 16))


def test_zz_duality_is_the_z_flip():
    from pauligeo.pauli import duality
    for g in ("IZ", "ZI", "XX", "YY", "XY", "YX"):
        assert geo.centre_duality(parse_label(g), "ZZ") == duality(parse_label(g)).unsigned()


@pytest.mark.parametrize("centre", [a + b for a in "XYZ" for b in "XYZ"])
def test_duality_pairing_for_every_two_letter_centre(centre):
    pairs = geo.duality_pairing(centre)
    assert len(pairs) == 6
    duals = {g: d for g, d, _ in pairs}
    assert all(duals[d] == g for g, d in duals.items())


def test_duality_pairing_needs_two_letters():
    with pytest.raises(DomainError):
        geo.duality_pairing("IZ")


def test_quaternion_labels_match_dictionary():
    table = geo.quaternion_labelling()
    assert len(table) == 15
    for g in GENERATORS:
        got = str(table[g.round_bracket])
        if g.quaternion == "±1":
            assert got in ("1", "-1")
        else:
            assert got == g.quaternion


def test_labelling_is_additive():
    assert geo.labelling_is_additive()


def test_quaternion_label_rejects_zero():
    with pytest.raises(DomainError):
        geo.quaternion_label("(0000)")
