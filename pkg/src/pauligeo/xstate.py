"""Two-qubit X-states, entanglement tests and one-sided quantum discord.

An X-state for a centre ``c`` is ``(I + sum g_i X_i) / 4`` over the seven
members of the Fano set of ``c``, using the unit-square letter strings. Such
a state commutes with ``c``, so it is block diagonal on the two eigenspaces
of ``c``; for centre ZZ those are the index pairs {0, 3} and {1, 2}, which is
the familiar diagonal-plus-antidiagonal pattern.

Discord is measured on qubit A (the left tensor factor), in bits.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .errors import DimensionError, NotAStateError, PatternError
from .pauli import generator, to_matrix
from .subalgebra import find_fano_sets

STATE_TOL = 1e-10
HERMITIAN_TOL = 1e-12
THETA_GRID = 64
PHI_GRID = 128
EXTREMUM_TOL = 1e-3

_I2 = np.eye(2, dtype=complex)
_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _center_index(center):
    return generator(center).index


def xstate_members(center):
    """Letter labels of the Fano set of ``center`` in generator-index order."""
    c = _center_index(center)
    fano = next(f for f in find_fano_sets() if f.center == c)
    return [generator(m).label for m in fano.members]


def _member_matrices(center):
    return [to_matrix(generator(lab).string) for lab in xstate_members(center)]


def validate_density(rho, tol=STATE_TOL):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionError(f"need a 4x4 density matrix, got {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=HERMITIAN_TOL):
        raise NotAStateError("matrix is not Hermitian", None)
    if abs(np.trace(rho) - 1) > HERMITIAN_TOL:
        raise NotAStateError(f"trace is {np.trace(rho).real:.12g}, not 1", None)
    spec = np.linalg.eigvalsh(rho)
    if spec.min() < -tol:
        raise NotAStateError(f"negative eigenvalue {spec.min():.3g}", spec)
    return rho


@dataclass(frozen=True)
class XState:
    center: str
    g: tuple

    @property
    def matrix(self):
        return xstate_from_coeffs(self.center, self.g)

    def to_dict(self):
        return {"center": self.center, "members": xstate_members(self.center), "g": list(self.g)}


def xstate_from_coeffs(center, g):
    g = np.asarray(g, dtype=float)
    if g.shape != (7,):
        raise DimensionError(f"need 7 coefficients, got {g.shape}")
    rho = np.eye(4, dtype=complex)
    for coef, X in zip(g, _member_matrices(center)):
        rho = rho + coef * X
    return validate_density(rho / 4)


def coeffs_from_state(rho, center):
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(rho @ X).real for X in _member_matrices(center)])


def _eigenspace_bases(center):
    c = generator(center).string
    if c.letters == "ZZ":
        e = np.eye(4, dtype=complex)
        return e[:, [0, 3]], e[:, [1, 2]]
    w, v = np.linalg.eigh(to_matrix(c))
    return v[:, w > 0], v[:, w < 0]


def is_xform(rho, center="ZZ", tol=1e-12):
    C = to_matrix(generator(center).string)
    return np.allclose(rho @ C, C @ rho, atol=tol)


def xstate_eigenvalues(rho, center="ZZ"):
    """Spectrum from the two 2x2 blocks on the eigenspaces of the centre, ascending."""
    rho = np.asarray(rho, dtype=complex)
    if not is_xform(rho, center):
        raise PatternError(f"state is not of X form for centre {generator(center).label}")
    out = []
    for basis in _eigenspace_bases(center):
        blk = basis.conj().T @ rho @ basis
        mean = 0.5 * (blk[0, 0] + blk[1, 1]).real
        rad = math.sqrt((0.5 * (blk[0, 0] - blk[1, 1]).real) ** 2 + abs(blk[0, 1]) ** 2)
        out += [mean - rad, mean + rad]
    return np.sort(np.array(out))


@dataclass(frozen=True)
class PPTResult:
    entangled: bool
    min_eigenvalue: float

    @property
    def verdict(self):
        return "entangled" if self.entangled else "separable-compatible"


def partial_transpose(rho):
    """Transpose over the second (right) qubit."""
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_check(rho, tol=STATE_TOL):
    lo = float(np.linalg.eigvalsh(partial_transpose(rho)).min())
    return PPTResult(lo < -tol, lo)


def concurrence(rho):
    rho = np.asarray(rho, dtype=complex)
    yy = np.kron(_PAULI[1], _PAULI[1])
    tilde = yy @ rho.conj() @ yy
    ev = np.sqrt(np.clip(np.sort(np.linalg.eigvals(rho @ tilde).real)[::-1], 0, None))
    return max(0.0, ev[0] - ev[1] - ev[2] - ev[3])


def measurement_frame(theta, phi):
    """Projectors ``(I +- n.sigma) / 2`` along ``n = (sin t cos p, sin t sin p, cos t)``."""
    n = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    ns = sum(c * s for c, s in zip(n, _PAULI))
    return 0.5 * (_I2 + ns), 0.5 * (_I2 - ns)


def correlations(rho):
    """Local Bloch vectors ``a`` (qubit A), ``b`` (qubit B) and correlation matrix ``T``."""
    rho = np.asarray(rho, dtype=complex)
    a = np.array([np.trace(rho @ np.kron(s, _I2)).real for s in _PAULI])
    b = np.array([np.trace(rho @ np.kron(_I2, s)).real for s in _PAULI])
    T = np.array([[np.trace(rho @ np.kron(s, t)).real for t in _PAULI] for s in _PAULI])
    return a, b, T


def von_neumann(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


def reduced_states(rho):
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    return np.einsum("ijkj->ik", r), np.einsum("ijil->jl", r)


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    theta: float
    phi: float
    mutual_information: float
    classical_correlation: float

    def to_dict(self):
        return {"discord": self.discord, "theta": self.theta, "phi": self.phi,
                "mutual_information": self.mutual_information,
                "classical_correlation": self.classical_correlation}


def _refine(a, b, T, theta, phi, dth, dph, rounds=3):
    """Alternating bounded 1-D refinements in theta and phi around a grid point."""
    f = lambda th, ph: _kernels.cond_entropy_grid(a, b, T, [th], [ph])[0, 0]  # noqa: E731
    best = f(theta, phi)
    for _ in range(rounds):
        lo, hi = max(0.0, theta - dth), min(math.pi / 2, theta + dth)
        if hi > lo:
            r = minimize_scalar(lambda th: f(th, phi), bounds=(lo, hi), method="bounded",
                                options={"xatol": 1e-10})
            if r.fun < best:
                best, theta = r.fun, r.x
        r = minimize_scalar(lambda ph: f(theta, ph), bounds=(phi - dph, phi + dph), method="bounded",
                            options={"xatol": 1e-10})
        if r.fun < best:
            best, phi = r.fun, r.x % (2 * math.pi)
    return best, theta, phi


def _grid_axes(n_theta, n_phi):
    return np.linspace(0.0, math.pi / 2, n_theta), np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)


def discord(rho, grid=(THETA_GRID, PHI_GRID), refine=True):
    """One-sided discord with the measurement on qubit A.

    Ties within 1e-12 of the grid minimum go to the largest theta, so a state
    whose optimum includes the equator reports theta = pi/2.
    """
    rho = validate_density(rho)
    a, b, T = correlations(rho)
    thetas, phis = _grid_axes(*grid)
    cond = _kernels.cond_entropy_grid(a, b, T, thetas, phis)
    floor = cond.min()
    rows = np.nonzero((cond <= floor + 1e-12).any(axis=1))[0]
    i = rows.max()
    j = int(np.argmin(cond[i]))
    best, theta, phi = float(cond[i, j]), float(thetas[i]), float(phis[j])
    if refine:
        rb, rt, rp = _refine(a, b, T, theta, phi, thetas[1] - thetas[0], phis[1] - phis[0])
        if rb < best - 1e-14:
            best, theta, phi = rb, rt, rp
    rho_a, rho_b = reduced_states(rho)
    s_a, s_b, s_ab = von_neumann(rho_a), von_neumann(rho_b), von_neumann(rho)
    mutual = s_a + s_b - s_ab
    classical = s_b - best
    return DiscordResult(max(mutual - classical, 0.0), theta, phi, mutual, classical)


def discord_at_theta(rho, theta, n_phi=PHI_GRID):
    """Discord restricted to measurements at a fixed polar angle."""
    rho = validate_density(rho)
    a, b, T = correlations(rho)
    phis = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    cond = _kernels.cond_entropy_grid(a, b, T, [theta], phis)[0]
    j = int(np.argmin(cond))
    f = lambda ph: _kernels.cond_entropy_grid(a, b, T, [theta], [ph])[0, 0]  # noqa: E731
    dph = phis[1] - phis[0]
    r = minimize_scalar(f, bounds=(phis[j] - dph, phis[j] + dph), method="bounded", options={"xatol": 1e-10})
    best = min(cond[j], r.fun)
    rho_a, _ = reduced_states(rho)
    return max(von_neumann(rho_a) - von_neumann(rho) + best, 0.0)


# --- random X-states and the theta statistic ---------------------------------------

def _haar_su2(rng):
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    a, b = complex(q[0], q[3]), complex(q[2], q[1])
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]])


def random_xstate(seed, center="ZZ", index=0):
    """Seeded random X-state.

    Eigenvalues are uniform on the probability simplex; two go to each
    eigenspace of the centre, each 2x2 block is rotated by a Haar-random
    SU(2) element (which also randomizes the off-diagonal phase). The
    generator for sample ``index`` is seeded by ``(seed, index)``.
    """
    rng = np.random.default_rng([int(seed), int(index)])
    lam = rng.dirichlet(np.ones(4))
    rho = np.zeros((4, 4), dtype=complex)
    for basis, pair in zip(_eigenspace_bases(center), (lam[:2], lam[2:])):
        R = _haar_su2(rng)
        blk = R @ np.diag(pair) @ R.conj().T
        rho += basis @ blk @ basis.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    label = generator(center).label
    return XState(label, tuple(float(x) for x in coeffs_from_state(rho, label)))


def _scan_chunk(args):
    seed, center, start, stop, grid, tol = args
    thetas, gaps = [], []
    for k in range(start, stop):
        rho = random_xstate(seed, center, k).matrix
        res = discord(rho, grid)
        thetas.append(res.theta)
        gaps.append(discord_at_theta(rho, math.pi / 2, grid[1]) - res.discord)
    return thetas, gaps


@dataclass(frozen=True)
class ScanResult:
    seed: int
    n_samples: int
    center: str
    fraction: float
    extreme_fraction: float
    worst_case_gap: float
    histogram: tuple
    bin_edges: tuple

    def to_dict(self):
        return {
            "seed": self.seed,
            "n_samples": self.n_samples,
            "center": self.center,
            "fraction": self.fraction,
            "extreme_fraction": self.extreme_fraction,
            "worst_case_gap": self.worst_case_gap,
            "histogram": list(self.histogram),
            "bin_edges": list(self.bin_edges),
        }


def theta_extremum_scan(n_samples, seed, center="ZZ", grid=(THETA_GRID, PHI_GRID),
                        tol=EXTREMUM_TOL, workers=1, bins=16):
    """Fraction of random X-states whose optimal theta is within ``tol`` of pi/2.

    Also reports the fraction at either end of [0, pi/2], and the largest
    excess of the theta = pi/2 discord over the true optimum.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    label = generator(center).label
    if workers <= 1:
        chunks = [(seed, label, 0, n_samples, grid, tol)]
        results = [_scan_chunk(chunks[0])]
    else:
        size = math.ceil(n_samples / workers)
        chunks = [(seed, label, s, min(s + size, n_samples), grid, tol) for s in range(0, n_samples, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_chunk, chunks))
    thetas = np.concatenate([np.asarray(r[0]) for r in results])
    gaps = np.concatenate([np.asarray(r[1]) for r in results])
    at_pi2 = np.abs(thetas - math.pi / 2) <= tol
    at_zero = np.abs(thetas) <= tol
    hist, edges = np.histogram(thetas, bins=bins, range=(0.0, math.pi / 2))
    return ScanResult(
        seed=int(seed),
        n_samples=int(n_samples),
        center=label,
        fraction=float(at_pi2.mean()),
        extreme_fraction=float((at_pi2 | at_zero).mean()),
        worst_case_gap=float(max(gaps.max(), 0.0)),
        histogram=tuple(int(h) for h in hist),
        bin_edges=tuple(float(e) for e in edges),
    )


def bell_state(kind="phi+"):
    s = 1 / math.sqrt(2)
    vecs = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    v = np.array(vecs[kind], dtype=complex)
    return np.outer(v, v.conj())
