import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from pauligeo import evolution as ev
from pauligeo.errors import ChartError, DimensionError, InputError

T = 0.8


def _residuals(spec):
    U = ev.dense_propagator(spec, T)
    ex = ev.extract_factors(U)
    bf = ev.factorized_propagator(spec, T)
    ric = ev.riccati_su4(spec, T)
    bloch = ev.bloch_evolve(spec, T)
    return U, ex, bf, ric, bloch


@pytest.mark.parametrize("dim", [5, 6])
@pytest.mark.parametrize("sinusoidal", [False, True], ids=["constant", "sinusoidal"])
@pytest.mark.parametrize("seed", [0, 1])
def test_routes_agree_on_both_backends(backend, dim, sinusoidal, seed):
    spec = ev.random_drive(dim, seed, sinusoidal=sinusoidal)
    U, ex, bf, ric, bloch = _residuals(spec)
    assert np.linalg.norm(bf.reconstruct() - U) <= 1e-8
    assert np.abs(ric.z - ex.z_vector).max() <= 1e-8
    assert np.abs(ev.z_from_bloch(bloch.m) - ric.z).max() <= 1e-8


def test_dense_oracle_matches_expm_for_constant_drive():
    spec = ev.random_drive(6, 3)
    H = ev.hamiltonian_from_matrix(spec.F(0.0))
    assert np.abs(ev.dense_propagator(spec, T) - expm(-1j * H * T)).max() < 1e-10
    assert np.abs(ev.constant_propagator(H, T) - expm(-1j * H * T)).max() < 1e-10


def test_dense_oracle_is_fourth_order():
    spec = ev.random_drive(6, 3, sinusoidal=True, scale=1.0)
    ref = ev.dense_propagator(spec, 1.0, steps=2048)
    errs = [np.linalg.norm(ev.dense_propagator(spec, 1.0, steps=s) - ref) for s in (16, 32)]
    assert 12 < errs[0] / errs[1] < 20


def test_hamiltonian_is_traceless_hermitian():
    spec = ev.random_drive(6, 4)
    H = ev.hamiltonian_from_matrix(spec.F(0.0))
    assert np.allclose(H, H.conj().T)
    assert abs(np.trace(H)) < 1e-14


def test_hamiltonian_basis_is_orthogonal():
    basis = [ev.HAMILTONIAN_BASIS[a, b] for a in range(6) for b in range(a)]
    gram = np.array([[np.trace(x @ y).real for y in basis] for x in basis])
    assert np.allclose(gram, 4 * np.eye(15))


def test_spin5_drive_keeps_z_real():
    spec = ev.random_drive(5, 2, sinusoidal=True)
    ex = ev.extract_factors(ev.dense_propagator(spec, T))
    assert np.abs(ex.z_vector.imag).max() < 1e-12
    ric = ev.riccati_so5(spec, T)
    assert ric.z.dtype == float


def test_six_dimensional_flow_reduces_without_sixth_row():
    spec5 = ev.random_drive(5, 8, sinusoidal=True)
    spec6 = ev.DriveSpec(6, spec5.terms)
    a = ev.riccati_so5(spec5, T).z
    b = ev.riccati_su4(spec6, T).z
    assert np.abs(b - a).max() < 1e-13


def test_stereographic_round_trip():
    z = np.array([0.3, -1.2, 0.5, 2.0])
    m = ev.stereographic(z)
    assert abs(np.linalg.norm(m) - 1) < 1e-15
    assert np.allclose(ev.inverse_stereographic(m), z)
    with pytest.raises(ChartError):
        ev.inverse_stereographic(np.array([0, 0, 0, 0, -1.0]))


@given(st.lists(st.floats(-50, 50), min_size=4, max_size=4))
def test_stereographic_lands_on_sphere(z):
    assert abs(np.linalg.norm(ev.stereographic(z)) - 1) < 1e-12


@settings(max_examples=50)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                min_size=4, max_size=4))
def test_null_vector_properties(z):
    n = ev.normalized_null_vector(z)
    assert abs(n @ n) < 1e-9
    assert abs(np.linalg.norm(n.real) - 1) < 1e-9
    assert abs(np.linalg.norm(n.imag) - 1) < 1e-9


def test_bloch_norms_are_conserved():
    b5 = ev.bloch_evolve(ev.random_drive(5, 6, sinusoidal=True), T)
    assert np.abs(np.linalg.norm(b5.trajectory, axis=1) - 1).max() < 1e-10
    b6 = ev.bloch_evolve(ev.random_drive(6, 6, sinusoidal=True), T)
    assert np.abs(np.linalg.norm(b6.trajectory.real, axis=1) - 1).max() < 1e-10
    assert np.abs(np.linalg.norm(b6.trajectory.imag, axis=1) - 1).max() < 1e-10
    assert np.abs((b6.trajectory ** 2).sum(axis=1)).max() < 1e-10


def test_extract_factors_rejects_singular_block():
    U = np.zeros((4, 4), dtype=complex)
    U[:2, 2:] = U[2:, :2] = np.eye(2)
    with pytest.raises(ChartError):
        ev.extract_factors(U)
    with pytest.raises(DimensionError):
        ev.extract_factors(np.eye(3))


def test_z_vector_matrix_round_trip():
    zv = np.array([0.1 + 0.2j, -0.3j, 1.0, 0.5 - 0.5j])
    assert np.allclose(ev.z_matrix_to_vector(ev.z_vector_to_matrix(zv)), zv)


def test_riccati_leaves_chart():
    # a strong constant drive carries z to the pole in finite time
    spec = ev.DriveSpec(5, (ev.DriveTerm(5, 1, 3.0),))
    with pytest.raises(ChartError):
        ev.riccati_so5(spec, 2.0)


def test_drive_spec_validation():
    with pytest.raises(InputError):
        ev.DriveSpec(5, (ev.DriveTerm(2, 2, 1.0),))
    with pytest.raises(InputError):
        ev.DriveSpec(5, (ev.DriveTerm(2, 1, 1.0), ev.DriveTerm(1, 2, 1.0)))
    with pytest.raises(InputError):
        ev.DriveSpec(5, (ev.DriveTerm(6, 1, 1.0),))
    with pytest.raises(InputError):
        ev.DriveSpec(5, (ev.DriveTerm(2, 1, float("nan")),))
    with pytest.raises(DimensionError):
        ev.DriveSpec(4)


def test_drive_spec_canonical_sign():
    spec = ev.DriveSpec(5, (ev.DriveTerm(1, 3, 0.7),))
    assert spec.terms[0].mu == 3 and spec.terms[0].constant == -0.7
    assert spec.F(0.0)[0, 2] == 0.7


def test_drive_spec_json_round_trip(tmp_path):
    spec = ev.random_drive(6, 9, sinusoidal=True)
    path = tmp_path / "drive.json"
    path.write_text(json.dumps(spec.to_dict()))
    assert ev.DriveSpec.load(path) == spec
    with pytest.raises(InputError):
        ev.DriveSpec.load(tmp_path / "missing.json")
    path.write_text("{not json")
    with pytest.raises(InputError):
        ev.DriveSpec.load(path)


def test_from_matrix():
    F = np.zeros((5, 5))
    F[3, 1], F[1, 3] = 0.4, -0.4
    spec = ev.DriveSpec.from_matrix(F)
    assert np.allclose(spec.F(1.0), F)
    with pytest.raises(InputError):
        ev.DriveSpec.from_matrix(np.ones((5, 5)))


_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.diag([1.0 + 0j, -1.0])


def test_wei_norman_su2_matches_dense():
    B = np.array([0.3, -0.7, 0.5])

    def H(t):
        return -(B[0] * np.cos(2 * t) * _SX + B[1] * _SY + B[2] * _SZ)

    wn = ev.wei_norman_su2(H, 1.0)
    assert np.abs(wn.propagator() - ev.dense_propagator(H, 1.0)).max() < 1e-10


def test_wei_norman_diagonal_drive():
    wn = ev.wei_norman_su2(lambda t: 0.65 * _SZ, 1.0)
    assert abs(wn.z) < 1e-15 and abs(wn.w_conj) < 1e-15
    assert abs(wn.mu - 1.3) < 1e-12


def test_wei_norman_rejects_trace():
    with pytest.raises(InputError):
        ev.wei_norman_su2(lambda t: np.eye(2, dtype=complex), 1.0)


def test_su2_bloch_precession():
    B = np.array([0.4, 0.1, -0.3])
    H = -(B[0] * _SX + B[1] * _SY + B[2] * _SZ)
    assert np.allclose(ev.su2_field(H), B)
    wn = ev.wei_norman_su2(lambda t: H, 1.0)
    m = np.array([ev.su2_bloch_from_z(z) for z in wn.z_path])
    h = wn.times[1] - wn.times[0]
    deriv = np.gradient(m, h, axis=0)[5:-5]
    assert np.abs(deriv - (-2 * np.cross(B, m[5:-5]))).max() < 1e-6
