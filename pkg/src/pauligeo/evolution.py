"""Two-qubit time evolution driven by an antisymmetric coefficient matrix.

A drive assigns real functions ``F[mu, nu](t)`` (1-based indices, up to 6)
that build a traceless 4x4 Hamiltonian. Indices 1..5 give the ten-term
Spin(5) family; index 6 adds the five remaining su(4) directions.

Four routes to the propagator are provided and cross-checked:

* ``dense_propagator``: time-ordered product of exponentials (the oracle).
* ``factorized_propagator``: block factors ``z``, ``w_dag``, ``C1``, ``C2``
  integrated directly, rebuilt as ``[[I, z], [0, I]] [[I, 0], [w_dag, I]]
  diag(C1, C2)``.
* ``riccati_so5`` / ``riccati_su4``: the four-component Riccati flow for the
  upper-right factor ``z = z4 I - i z_k sigma_k``.
* ``bloch_evolve``: the linear flow ``dm/dt = 2 F m`` on the stereographic
  image of ``z``.

The single-qubit Wei-Norman product lives in ``wei_norman_su2``.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ChartError, DimensionError, InputError

STEPS_PER_UNIT_TIME = 4096
DENSE_STEPS_PER_UNIT_TIME = 1024
CHART_BOUND = 1e6
# step doubling stops once two successive RK4 results agree to this (relative) level
REFINE_TOL = 1e-10
MAX_STEPS_PER_UNIT_TIME = 4096 * 64

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_SIGMA = (_SX, _SY, _SZ)

# fourth-order commutator-free Magnus weights at the two Gauss nodes
_GAUSS = (0.5 - math.sqrt(3) / 6, 0.5 + math.sqrt(3) / 6)
_CF4_A1 = (3 - 2 * math.sqrt(3)) / 12
_CF4_A2 = (3 + 2 * math.sqrt(3)) / 12


def n_steps_for(T, steps=None, per_unit=STEPS_PER_UNIT_TIME):
    if steps is not None:
        steps = int(steps)
        if steps < 1:
            raise InputError(f"steps must be >= 1, got {steps}")
        return steps
    return max(1, int(math.ceil(per_unit * abs(T))))


def _doubling(integrate, T, steps):
    """Run ``integrate(n)`` at the requested step count, or refine by doubling.

    ``integrate`` returns ``(final_value, payload)``. With ``steps`` given the
    count is used as is; otherwise it starts at the default density and doubles
    until two successive final values agree to ``REFINE_TOL``.
    """
    n = n_steps_for(T, steps)
    if steps is not None:
        return integrate(n) + (n,)
    cap = max(n, int(math.ceil(MAX_STEPS_PER_UNIT_TIME * abs(T))))
    coarse = integrate(n)
    while True:
        fine = integrate(2 * n)
        n *= 2
        scale = max(1.0, float(np.abs(fine[0]).max()))
        if np.abs(fine[0] - coarse[0]).max() <= REFINE_TOL * scale or n >= cap:
            return fine + (n,)
        coarse = fine


# --- drive specification -----------------------------------------------------

@dataclass(frozen=True)
class Sinusoid:
    amplitude: float
    omega: float
    phase: float = 0.0


@dataclass(frozen=True)
class DriveTerm:
    """``F[mu, nu](t) = constant + sum(a * cos(omega t + phase))`` with ``mu > nu``."""

    mu: int
    nu: int
    constant: float = 0.0
    sinusoids: tuple = ()

    def value(self, t):
        return self.constant + sum(s.amplitude * math.cos(s.omega * t + s.phase) for s in self.sinusoids)


@dataclass(frozen=True)
class DriveSpec:
    dimension: int
    terms: tuple = ()
    _arrays: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.dimension not in (5, 6):
            raise DimensionError(f"drive dimension must be 5 or 6, got {self.dimension}")
        canon = {}
        for term in self.terms:
            mu, nu = int(term.mu), int(term.nu)
            if not (1 <= mu <= self.dimension and 1 <= nu <= self.dimension):
                raise InputError(f"index pair ({mu}, {nu}) outside 1..{self.dimension}")
            if mu == nu:
                raise InputError(f"diagonal entry F[{mu},{mu}] must be zero")
            sign = 1.0
            if mu < nu:
                mu, nu, sign = nu, mu, -1.0
            if (mu, nu) in canon:
                raise InputError(f"pair ({mu}, {nu}) given twice")
            sins = tuple(Sinusoid(sign * float(s.amplitude), float(s.omega), float(s.phase))
                         for s in term.sinusoids)
            vals = [sign * float(term.constant)] + [s.amplitude for s in sins] + [s.omega for s in sins]
            if not all(math.isfinite(v) for v in vals):
                raise InputError(f"non-finite coefficient in pair ({mu}, {nu})")
            canon[mu, nu] = DriveTerm(mu, nu, sign * float(term.constant), sins)
        terms = tuple(canon[k] for k in sorted(canon))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_arrays", _drive_arrays(terms))

    @property
    def arrays(self):
        return self._arrays

    def F(self, t):
        """Antisymmetric coefficient matrix at time t, shape (dimension, dimension)."""
        full = np.zeros((6, 6))
        for term in self.terms:
            v = term.value(t)
            full[term.mu - 1, term.nu - 1] = v
            full[term.nu - 1, term.mu - 1] = -v
        return full[: self.dimension, : self.dimension]

    def F_batch(self, times):
        """Coefficient matrices at many times, shape (len(times), 6, 6)."""
        times = np.asarray(times, dtype=float)
        out = np.zeros((times.size, 6, 6))
        for term in self.terms:
            v = np.full(times.size, term.constant)
            for s in term.sinusoids:
                v = v + s.amplitude * np.cos(s.omega * times + s.phase)
            out[:, term.mu - 1, term.nu - 1] = v
            out[:, term.nu - 1, term.mu - 1] = -v
        return out

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "terms": [
                {"mu": t.mu, "nu": t.nu, "constant": t.constant,
                 "sinusoids": [{"amplitude": s.amplitude, "omega": s.omega, "phase": s.phase}
                               for s in t.sinusoids]}
                for t in self.terms
            ],
        }

    @classmethod
    def from_dict(cls, d):
        try:
            dim = int(d["dimension"])
            terms = []
            for t in d.get("terms", []):
                sins = tuple(Sinusoid(float(s["amplitude"]), float(s["omega"]), float(s.get("phase", 0.0)))
                             for s in t.get("sinusoids", []))
                terms.append(DriveTerm(int(t["mu"]), int(t["nu"]), float(t.get("constant", 0.0)), sins))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed drive spec: {exc}") from None
        return cls(dim, tuple(terms))

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read drive spec {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"drive spec {path} is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def from_matrix(cls, F):
        """Constant drive from an antisymmetric 5x5 or 6x6 matrix."""
        F = np.asarray(F, dtype=float)
        dim = F.shape[0]
        if F.shape != (dim, dim) or not np.allclose(F, -F.T):
            raise InputError("coefficient matrix must be square and antisymmetric")
        terms = tuple(DriveTerm(a + 1, b + 1, float(F[a, b]))
                      for a in range(dim) for b in range(a) if F[a, b] != 0)
        return cls(dim, terms)


def _drive_arrays(terms):
    mu = np.array([t.mu - 1 for t in terms], dtype=np.int64)
    nu = np.array([t.nu - 1 for t in terms], dtype=np.int64)
    const = np.array([t.constant for t in terms], dtype=np.float64)
    st, sa, so, sp = [], [], [], []
    for k, t in enumerate(terms):
        for s in t.sinusoids:
            st.append(k)
            sa.append(s.amplitude)
            so.append(s.omega)
            sp.append(s.phase)
    return (mu, nu, const, np.array(st, dtype=np.int64), np.array(sa, dtype=np.float64),
            np.array(so, dtype=np.float64), np.array(sp, dtype=np.float64))


def random_drive(dimension, seed, sinusoidal=False, scale=0.5, n_sinusoids=1):
    """Random drive with every pair populated; constants and amplitudes ~ scale * N(0, 1)."""
    rng = np.random.default_rng(seed)
    terms = []
    for mu in range(2, dimension + 1):
        for nu in range(1, mu):
            sins = ()
            if sinusoidal:
                sins = tuple(Sinusoid(scale * rng.normal(), rng.uniform(0.5, 4.0), rng.uniform(0, 2 * np.pi))
                             for _ in range(n_sinusoids))
            terms.append(DriveTerm(mu, nu, scale * rng.normal(), sins))
    return DriveSpec(dimension, tuple(terms))


# --- Hamiltonian -------------------------------------------------------------

def _kron(a, b):
    return np.kron(a, b)


def hamiltonian_from_matrix(F):
    """4x4 Hamiltonian for a 5x5 or 6x6 antisymmetric coefficient matrix.

    Operators are written ``kron(block_qubit, inner_qubit)``.
    """
    F = np.asarray(F, dtype=float)
    full = np.zeros((6, 6))
    full[: F.shape[0], : F.shape[1]] = F
    F = full
    H = (F[1, 0] * _kron(_I2, _SZ) - F[2, 0] * _kron(_I2, _SY) + F[2, 1] * _kron(_I2, _SX)
         - F[4, 3] * _kron(_SY, _I2) + F[5, 4] * _kron(_SZ, _I2) + F[5, 3] * _kron(_SX, _I2))
    for k, s in enumerate(_SIGMA):
        H = H - F[3, k] * _kron(_SZ, s) + F[4, k] * _kron(_SX, s) + F[5, k] * _kron(_SY, s)
    return H


def _hamiltonian_basis():
    basis = np.zeros((6, 6, 4, 4), dtype=complex)
    for a in range(6):
        for b in range(a):
            unit = np.zeros((6, 6))
            unit[a, b], unit[b, a] = 1.0, -1.0
            basis[a, b] = hamiltonian_from_matrix(unit)
    return basis


HAMILTONIAN_BASIS = _hamiltonian_basis()


def hamiltonian_from_F(spec, t):
    return hamiltonian_from_matrix(spec.F(t))


# --- dense oracle ------------------------------------------------------------

def _expm_hermitian(H, dt):
    w, v = np.linalg.eigh(H)
    return (v * np.exp(-1j * dt * w)[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def dense_propagator(H, T, steps=None):
    """Time-ordered propagator of ``i dU/dt = H(t) U`` from 0 to T.

    ``H`` is a callable ``t -> matrix`` or a ``DriveSpec``. Each step applies
    the fourth-order commutator-free Magnus pair of exponentials at the two
    Gauss nodes.
    """
    n = n_steps_for(T, steps, DENSE_STEPS_PER_UNIT_TIME)
    h = T / n
    starts = np.arange(n) * h
    nodes = np.stack([starts + c * h for c in _GAUSS], axis=1)
    if isinstance(H, DriveSpec):
        Fs = H.F_batch(nodes.ravel())
        Hs = np.einsum("kab,abij->kij", np.tril(Fs, -1), HAMILTONIAN_BASIS).reshape(n, 2, 4, 4)
    else:
        Hs = np.array([[np.asarray(H(t), dtype=complex) for t in row] for row in nodes])
        if not np.allclose(Hs, np.conj(np.swapaxes(Hs, -1, -2)), atol=1e-12):
            raise InputError("Hamiltonian sample is not Hermitian")
    first = _expm_hermitian(_CF4_A2 * Hs[:, 0] + _CF4_A1 * Hs[:, 1], h)
    second = _expm_hermitian(_CF4_A1 * Hs[:, 0] + _CF4_A2 * Hs[:, 1], h)
    dim = Hs.shape[-1]
    U = np.eye(dim, dtype=complex)
    for k in range(n):
        U = second[k] @ (first[k] @ U)
    return U


def constant_propagator(H, T):
    """``exp(-i H T)`` by eigendecomposition."""
    return _expm_hermitian(np.asarray(H, dtype=complex), T)


# --- block factors -----------------------------------------------------------

@dataclass
class BlockFactors:
    z: np.ndarray
    w_dag: np.ndarray
    C1: np.ndarray
    C2: np.ndarray

    def reconstruct(self):
        eye, zero = np.eye(2), np.zeros((2, 2))
        upper = np.block([[eye, self.z], [zero, eye]])
        lower = np.block([[eye, zero], [self.w_dag, eye]])
        diag = np.block([[self.C1, zero], [zero, self.C2]])
        return upper @ lower @ diag

    @property
    def z_vector(self):
        return z_matrix_to_vector(self.z)


def extract_factors(U, cond_limit=1e12):
    U = np.asarray(U, dtype=complex)
    if U.shape != (4, 4):
        raise DimensionError(f"need a 4x4 matrix, got {U.shape}")
    U11, U12, U21, U22 = U[:2, :2], U[:2, 2:], U[2:, :2], U[2:, 2:]
    if np.linalg.cond(U22) > cond_limit:
        raise ChartError("lower-right block is singular: the factorization has a coordinate singularity here")
    C2 = U22.copy()
    z = U12 @ np.linalg.inv(U22)
    C1 = U11 - z @ U21
    if np.linalg.cond(C1) > cond_limit:
        raise ChartError("first diagonal factor is singular")
    w_dag = U21 @ np.linalg.inv(C1)
    return BlockFactors(z, w_dag, C1, C2)


def z_matrix_to_vector(z):
    """``z = z4 I - i z_k sigma_k`` -> ``[z1, z2, z3, z4]``."""
    z = np.asarray(z, dtype=complex)
    return np.array([0.5j * np.trace(z @ s) for s in _SIGMA] + [0.5 * np.trace(z)])


def z_vector_to_matrix(zv):
    zv = np.asarray(zv, dtype=complex)
    return zv[3] * _I2 - 1j * sum(zv[k] * _SIGMA[k] for k in range(3))


def factorized_propagator(spec, T, steps=None):
    """Integrate the four block factors directly (RK4) and return them.

    Without ``steps`` the step count is doubled until successive results agree.
    """
    y0 = np.zeros((4, 2, 2), dtype=complex)
    y0[2] = y0[3] = np.eye(2)

    def integrate(n):
        y, status, at = _kernels.block_rk4(y0, T, n, CHART_BOUND, HAMILTONIAN_BASIS, spec.arrays)
        if status:
            raise ChartError(f"block factor z left the chart (|z| > {CHART_BOUND:g}) at t = {at * T / n:.6g}; "
                             "integrate over a shorter interval")
        return y, None

    y, _, _ = _doubling(integrate, T, steps)
    return BlockFactors(y[0], y[1], y[2], y[3])


# --- Riccati and Bloch flows ---------------------------------------------------

@dataclass
class RiccatiState:
    z: np.ndarray
    t: float
    times: np.ndarray
    trajectory: np.ndarray
    chart_ok: bool = True


def _riccati(spec, T, steps):
    def integrate(n):
        traj, status, at = _kernels.riccati_rk4(np.zeros(4, dtype=complex), T, n, CHART_BOUND, spec.arrays)
        if status:
            raise ChartError(f"Riccati coordinate exceeded {CHART_BOUND:g} at t = {at * T / n:.6g} "
                             "(stereographic pole); integrate over a shorter interval")
        return traj[-1], traj

    _, traj, n = _doubling(integrate, T, steps)
    return np.linspace(0.0, T, n + 1), traj


def riccati_so5(spec, T, steps=None):
    if spec.dimension != 5:
        raise DimensionError("riccati_so5 needs a dimension-5 drive")
    times, traj = _riccati(spec, T, steps)
    real = traj.real.copy()
    return RiccatiState(real[-1], float(T), times, real)


def riccati_su4(spec, T, steps=None):
    times, traj = _riccati(spec, T, steps)
    return RiccatiState(traj[-1], float(T), times, traj)


def stereographic(z):
    """Real 4-vector ``z`` -> unit 5-vector ``(-2 z, 1 - z.z) / (1 + z.z)``."""
    z = np.asarray(z, dtype=float)
    zz = z @ z
    return np.concatenate([-2 * z, [1 - zz]]) / (1 + zz)


def inverse_stereographic(m):
    m = np.asarray(m, dtype=float)
    if m[4] <= -1 + 1e-15:
        raise ChartError("the pole m5 = -1 has no finite preimage")
    return -m[:4] / (1 + m[4])


def null_vector(z):
    """Complex 6-vector ``(-2 z, 1 - z.z, -i (1 + z.z))``; a real z gives the 5-vector with m6 = -i."""
    z = np.asarray(z, dtype=complex)
    zz = z @ z
    return np.concatenate([-2 * z, [1 - zz, -1j * (1 + zz)]])


def normalized_null_vector(z):
    """Scale so the real and imaginary parts are unit vectors (defined up to a phase)."""
    n = null_vector(z)
    return math.sqrt(2) * n / np.linalg.norm(n)


def z_from_bloch(m):
    m = np.asarray(m, dtype=complex)
    if m.size == 5:
        return -m[:4] / (1 + m[4])
    return -m[:4] / (m[4] + 1j * m[5])


def default_bloch_start(dimension):
    if dimension == 5:
        return np.array([0, 0, 0, 0, 1.0])
    return np.array([0, 0, 0, 0, 1.0, -1j])


@dataclass
class BlochTrajectory:
    m: np.ndarray
    times: np.ndarray
    trajectory: np.ndarray


def bloch_evolve(spec, T, m0=None, steps=None):
    """Integrate ``dm/dt = 2 F m``; a 5-vector for dimension 5, complex 6-vector for 6."""
    dim = spec.dimension
    m0 = default_bloch_start(dim) if m0 is None else np.asarray(m0)
    if m0.size != dim:
        raise DimensionError(f"need a {dim}-vector start, got {m0.size}")
    start = np.zeros(6, dtype=complex)
    start[:dim] = m0
    n = n_steps_for(T, steps)
    traj, _, _ = _kernels.bloch_rk4(start, T, n, spec.arrays)
    traj = traj[:, :dim]
    if dim == 5 and not np.iscomplexobj(m0):
        traj = traj.real.copy()
    return BlochTrajectory(traj[-1], np.linspace(0.0, T, n + 1), traj)


# --- single-qubit Wei-Norman product -------------------------------------------

@dataclass
class WeiNormanSU2:
    """``U = [[(1 + z w*) a, z / a], [w* a, 1 / a]]`` with ``a = exp(-i mu / 2)``."""

    z: complex
    w_conj: complex
    mu: complex
    times: np.ndarray = None
    z_path: np.ndarray = None

    def propagator(self):
        a = np.exp(-0.5j * self.mu)
        return np.array([[(1 + self.z * self.w_conj) * a, self.z / a],
                         [self.w_conj * a, 1 / a]])


def _wn_rhs(y, H):
    z, wc, _ = y
    h11, h12, h21 = H[0, 0], H[0, 1], H[1, 0]
    return np.array([
        -1j * (2 * h11 * z + h12 - h21 * z * z),
        -1j * (h21 + 2 * (h21 * z - h11) * wc),
        2 * h11 - 2 * h21 * z,
    ])


def wei_norman_su2(H, T, steps=None):
    """Integrate the scalar coordinates of the three-factor product for ``i dU/dt = H U``."""
    n = n_steps_for(T, steps)
    h = T / n
    sample = np.asarray(H(0.0), dtype=complex)
    if sample.shape != (2, 2):
        raise DimensionError("wei_norman_su2 needs a 2x2 Hamiltonian")
    if abs(np.trace(sample)) > 1e-12 or not np.allclose(sample, sample.conj().T):
        raise InputError("Hamiltonian must be traceless Hermitian (remove the trace as a global phase)")
    y = np.zeros(3, dtype=complex)
    zs = np.zeros(n + 1, dtype=complex)
    for k in range(n):
        t = k * h
        H0, Hh, H1 = (np.asarray(H(tt), dtype=complex) for tt in (t, t + h / 2, t + h))
        k1 = _wn_rhs(y, H0)
        k2 = _wn_rhs(y + h / 2 * k1, Hh)
        k3 = _wn_rhs(y + h / 2 * k2, Hh)
        k4 = _wn_rhs(y + h * k3, H1)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)) or abs(y[0]) > CHART_BOUND:
            raise ChartError(f"Riccati coordinate left the chart at t = {(k + 1) * h:.6g}")
        zs[k + 1] = y[0]
    return WeiNormanSU2(y[0], y[1], y[2], np.linspace(0.0, T, n + 1), zs)


def su2_bloch_from_z(z):
    """Bloch vector obeying ``dm/dt = -2 B x m`` for ``H = -B . sigma``."""
    z = complex(z)
    n = 1 + abs(z) ** 2
    return np.array([-2 * z.real, 2 * z.imag, 1 - abs(z) ** 2]) / n


def su2_field(H):
    """``B`` with ``H = -B . sigma`` for a traceless Hermitian 2x2 ``H``."""
    H = np.asarray(H, dtype=complex)
    return -np.array([0.5 * np.trace(H @ s).real for s in _SIGMA])
