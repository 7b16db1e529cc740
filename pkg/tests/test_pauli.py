import numpy as np
import pytest
from hypothesis import given, strategies as st

from pauligeo import pauli
from pauligeo.errors import DimensionError, DomainError, FormatError, ParseError, SizeError
from pauligeo.pauli import (
    GENERATORS,
    commutator,
    commutes,
    duality,
    from_square_binary,
    multiply,
    parse_label,
    render_square,
    square_binary,
    to_matrix,
    xstate_generating_set,
)

labels = st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.text("IXYZ", min_size=n, max_size=n), st.text("IXYZ", min_size=n, max_size=n)))


def test_parse_and_render():
    p = parse_label("XZ")
    assert p.x == (1, 0) and p.z == (0, 1)
    assert str(p) == "XZ"
    assert p.weight == 2


@pytest.mark.parametrize("bad", ["", "XA", "x"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_label(bad)


def test_single_qubit_products():
    assert str(multiply(parse_label("X"), parse_label("Y"))) == "iZ"
    assert str(multiply(parse_label("Y"), parse_label("X"))) == "-iZ"
    assert str(multiply(parse_label("Z"), parse_label("Z"))) == "I"


def test_size_mismatch():
    with pytest.raises(DimensionError):
        multiply(parse_label("X"), parse_label("XX"))


@given(labels)
def test_multiply_matches_matrices(pair):
    a, b = (parse_label(s) for s in pair)
    assert np.allclose(to_matrix(multiply(a, b)), to_matrix(a) @ to_matrix(b))


@given(labels)
def test_commutes_matches_matrices(pair):
    a, b = (to_matrix(parse_label(s)) for s in pair)
    dense = np.allclose(a @ b, b @ a)
    assert commutes(*(parse_label(s) for s in pair)) == dense


@given(st.text("IXYZ", min_size=1, max_size=6))
def test_duality_is_an_involution(s):
    p = parse_label(s)
    assert duality(duality(p)) == p


@given(st.text("IXYZ", min_size=1, max_size=6))
def test_square_binary_round_trip(s):
    p = parse_label(s)
    assert from_square_binary(square_binary(p)) == p
    assert from_square_binary(render_square(square_binary(p))) == p


def test_square_binary_bad_input():
    with pytest.raises(FormatError):
        from_square_binary("[012]")
    with pytest.raises(FormatError):
        from_square_binary("[010]")


def test_matrix_cap():
    with pytest.raises(SizeError):
        to_matrix(parse_label("X" * 11))


def test_generator_dictionary():
    assert len(GENERATORS) == 15
    assert sorted(g.index for g in GENERATORS) == list(range(2, 17))
    assert {g.label for g in GENERATORS} == {a + b for a in "IXYZ" for b in "IXYZ"} - {"II"}
    assert pauli.generator("O4").label == "ZZ"
    with pytest.raises(DomainError):
        pauli.generator("II")


def test_generator_weights():
    for g in GENERATORS:
        assert float(g.weight) == (0.5 if g.string.weight == 1 else 0.25)


def test_commutator_against_dense():
    for ga in GENERATORS:
        for gb in GENERATORS:
            got = commutator(ga.index, gb.index)
            dense = ga.matrix @ gb.matrix - gb.matrix @ ga.matrix
            if got is None:
                assert np.allclose(dense, 0)
            else:
                coeff, target = got
                assert np.allclose(dense, coeff * pauli.generator(target).matrix)


def test_xstate_generating_set():
    one = [str(p) for p in xstate_generating_set(1)]
    assert one == ["Z", "Y", "X"]
    two = xstate_generating_set(2)
    assert len(two) == 7
    assert {str(p) for p in two} == {"IZ", "ZI", "ZZ", "YY", "YX", "XY", "XX"}
    assert len(xstate_generating_set(3)) == 15
