import math

import numpy as np
import pytest

from pauligeo import xstate as xs
from pauligeo.errors import DimensionError, NotAStateError, PatternError

SINGLE_SPIN = ["IZ", "ZI", "IX", "XI", "IY", "YI"]


def test_bell_state():
    rho = xs.bell_state()
    assert np.allclose(xs.xstate_eigenvalues(rho), [0, 0, 0, 1])
    assert xs.ppt_check(rho).entangled
    assert abs(xs.ppt_check(rho).min_eigenvalue + 0.5) < 1e-12
    res = xs.discord(rho)
    assert abs(res.discord - 1) < 1e-6
    assert abs(xs.concurrence(rho) - 1) < 1e-12


@pytest.mark.parametrize("kind", ["phi+", "phi-", "psi+", "psi-"])
def test_all_bell_states_have_one_bit(kind):
    assert abs(xs.discord(xs.bell_state(kind)).discord - 1) < 1e-6


def test_bell_coefficients():
    assert xs.xstate_members("ZZ") == ["IZ", "ZI", "ZZ", "XX", "YY", "YX", "XY"]
    assert np.allclose(xs.coeffs_from_state(xs.bell_state(), "ZZ"), [0, 0, 1, 1, -1, 0, 0])


def test_product_state_has_no_discord():
    rho = np.kron(np.diag([0.7, 0.3]), np.array([[0.6, 0.2], [0.2, 0.4]]))
    assert xs.discord(rho).discord < 1e-10


def test_werner_state_discord():
    # Werner state p|phi+><phi+| + (1-p) I/4 has a closed-form discord
    p = 0.6
    rho = p * xs.bell_state() + (1 - p) * np.eye(4) / 4
    a, b = (1 - p) / 4, (1 + 3 * p) / 4
    mutual = 2 + 3 * a * math.log2(a) + b * math.log2(b)
    h = lambda x: -x * math.log2(x) - (1 - x) * math.log2(1 - x)  # noqa: E731
    classical = 1 - h((1 + p) / 2)
    assert abs(xs.discord(rho).discord - (mutual - classical)) < 1e-8


@pytest.mark.parametrize("center", ["ZZ", "XY", "ZI", "IX"])
def test_coefficient_round_trip(center):
    for k in range(20):
        state = xs.random_xstate(11, center, k)
        rho = state.matrix
        back = xs.coeffs_from_state(rho, center)
        assert np.abs(back - np.array(state.g)).max() <= 1e-12
        assert np.abs(xs.xstate_from_coeffs(center, back) - rho).max() <= 1e-12


@pytest.mark.parametrize("center", ["ZZ", "XY", "ZI"])
def test_block_eigenvalues_match_dense(center):
    rho = xs.random_xstate(3, center, 0).matrix
    assert np.allclose(xs.xstate_eigenvalues(rho, center), np.linalg.eigvalsh(rho), atol=1e-12)


def test_non_x_state_is_rejected():
    psi = np.array([1, 1, 0, 0]) / math.sqrt(2)
    with pytest.raises(PatternError):
        xs.xstate_eigenvalues(np.outer(psi, psi), "ZZ")


def test_invalid_density():
    with pytest.raises(NotAStateError):
        xs.xstate_from_coeffs("ZZ", [0, 0, 2, 0, 0, 0, 0])
    with pytest.raises(NotAStateError):
        xs.validate_density(np.eye(4))
    with pytest.raises(DimensionError):
        xs.xstate_from_coeffs("ZZ", [0, 0, 0])


@pytest.mark.parametrize("center", SINGLE_SPIN)
def test_single_spin_centres_are_ppt(center):
    for k in range(100):
        assert not xs.ppt_check(xs.random_xstate(5, center, k).matrix).entangled


def test_sampler_is_seeded_and_unbiased():
    assert xs.random_xstate(2, "ZZ", 7) == xs.random_xstate(2, "ZZ", 7)
    assert xs.random_xstate(2, "ZZ", 7) != xs.random_xstate(3, "ZZ", 7)
    mean = np.mean([xs.random_xstate(2, "ZZ", k).matrix for k in range(4000)], axis=0)
    assert np.abs(mean - np.eye(4) / 4).max() < 0.01


def test_partial_transpose_involution():
    rho = xs.random_xstate(1, "ZZ", 0).matrix
    assert np.allclose(xs.partial_transpose(xs.partial_transpose(rho)), rho)


def _dense_conditional_entropy(rho, theta, phi):
    total = 0.0
    for proj in xs.measurement_frame(theta, phi):
        post = np.kron(proj, np.eye(2)) @ rho @ np.kron(proj, np.eye(2))
        p = np.trace(post).real
        if p > 1e-15:
            _, rho_b = xs.reduced_states(post / p)
            total += p * xs.von_neumann(rho_b)
    return total


def test_kernel_matches_dense_measurement(backend):
    from pauligeo import _kernels
    rho = xs.random_xstate(4, "ZZ", 2).matrix
    a, b, T = xs.correlations(rho)
    thetas, phis = [0.0, 0.7, math.pi / 2], [0.0, 1.1, 4.0]
    grid = _kernels.cond_entropy_grid(a, b, T, thetas, phis)
    for i, th in enumerate(thetas):
        for j, ph in enumerate(phis):
            assert abs(grid[i, j] - _dense_conditional_entropy(rho, th, ph)) < 1e-12


def test_discord_at_equator_bounds_the_optimum():
    for k in range(5):
        rho = xs.random_xstate(9, "ZZ", k).matrix
        assert xs.discord_at_theta(rho, math.pi / 2) >= xs.discord(rho).discord - 1e-9


def test_theta_scan_small(backend):
    res = xs.theta_extremum_scan(40, seed=7)
    assert 0 <= res.fraction <= res.extreme_fraction <= 1
    assert sum(res.histogram) == 40
    assert res.worst_case_gap >= 0
    assert res == xs.theta_extremum_scan(40, seed=7)


def test_theta_scan_parallel_matches_serial():
    serial = xs.theta_extremum_scan(30, seed=3)
    parallel = xs.theta_extremum_scan(30, seed=3, workers=2)
    assert serial == parallel
