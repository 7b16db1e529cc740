"""Fixed-step RK4 kernels for the drive-coefficient ODEs.

A drive is passed as flat arrays so the same data feeds both backends:
``mu, nu`` (0-based, ``mu > nu``), ``const``, and sinusoid rows
``sin_term, sin_amp, sin_omega, sin_phase`` where ``sin_term`` indexes the
pair the sinusoid belongs to. ``F[mu, nu](t)`` is the constant plus the
sinusoids; ``F`` is completed antisymmetrically.

Each integrator returns the whole trajectory on the step grid, plus a status
code (0 ok, 1 chart bound exceeded) and the step at which it stopped.
"""
import numpy as np

from ._accel import njit, use_numba


# --- numba versions ----------------------------------------------------------

@njit(cache=True)
def _eval_F_nb(t, mu, nu, const, st, sa, so, sp):
    F = np.zeros((6, 6))
    for k in range(mu.size):
        F[mu[k], nu[k]] += const[k]
    for s in range(st.size):
        k = st[s]
        F[mu[k], nu[k]] += sa[s] * np.cos(so[s] * t + sp[s])
    for a in range(6):
        for b in range(a):
            F[b, a] = -F[a, b]
    return F


@njit(cache=True)
def _riccati_rhs_nb(z, F):
    zz = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3]
    drive = 0j
    for n in range(4):
        drive += (F[4, n] + 1j * F[5, n]) * z[n]
    out = np.empty(4, dtype=np.complex128)
    for m in range(4):
        lin = 0j
        for n in range(4):
            lin += F[m, n] * z[n]
        out[m] = (F[4, m] * (1.0 - zz) - 1j * F[5, m] * (1.0 + zz) + 2.0 * lin
                  + 2.0 * drive * z[m] - 2j * F[5, 4] * z[m])
    return out


@njit(cache=True)
def _riccati_rk4_nb(z0, T, n_steps, bound, mu, nu, const, st, sa, so, sp):
    h = T / n_steps
    traj = np.zeros((n_steps + 1, 4), dtype=np.complex128)
    traj[0] = z0
    z = z0.copy()
    for k in range(n_steps):
        t = k * h
        F0 = _eval_F_nb(t, mu, nu, const, st, sa, so, sp)
        Fh = _eval_F_nb(t + 0.5 * h, mu, nu, const, st, sa, so, sp)
        F1 = _eval_F_nb(t + h, mu, nu, const, st, sa, so, sp)
        k1 = _riccati_rhs_nb(z, F0)
        k2 = _riccati_rhs_nb(z + 0.5 * h * k1, Fh)
        k3 = _riccati_rhs_nb(z + 0.5 * h * k2, Fh)
        k4 = _riccati_rhs_nb(z + h * k3, F1)
        z = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        traj[k + 1] = z
        if not np.isfinite(np.abs(z).sum()) or np.sqrt((np.abs(z) ** 2).sum()) > bound:
            return traj, 1, k + 1
    return traj, 0, n_steps


@njit(cache=True)
def _bloch_rk4_nb(m0, T, n_steps, mu, nu, const, st, sa, so, sp):
    h = T / n_steps
    traj = np.zeros((n_steps + 1, 6), dtype=np.complex128)
    traj[0] = m0
    m = m0.copy()
    for k in range(n_steps):
        t = k * h
        F0 = 2.0 * _eval_F_nb(t, mu, nu, const, st, sa, so, sp).astype(np.complex128)
        Fh = 2.0 * _eval_F_nb(t + 0.5 * h, mu, nu, const, st, sa, so, sp).astype(np.complex128)
        F1 = 2.0 * _eval_F_nb(t + h, mu, nu, const, st, sa, so, sp).astype(np.complex128)
        k1 = F0 @ m
        k2 = Fh @ (m + 0.5 * h * k1)
        k3 = Fh @ (m + 0.5 * h * k2)
        k4 = F1 @ (m + h * k3)
        m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        traj[k + 1] = m
    return traj, 0, n_steps


@njit(cache=True)
def _hamiltonian_nb(F, basis):
    H = np.zeros((4, 4), dtype=np.complex128)
    for a in range(6):
        for b in range(a):
            if F[a, b] != 0.0:
                H += F[a, b] * basis[a, b]
    return H


@njit(cache=True)
def _block_rhs_nb(y, H):
    # y = [z, w_dag, C1, C2] stacked as (4, 2, 2)
    H11 = np.ascontiguousarray(H[:2, :2])
    V = np.ascontiguousarray(H[:2, 2:])
    Vd = np.ascontiguousarray(H[2:, :2])
    H22 = np.ascontiguousarray(H[2:, 2:])
    z = np.ascontiguousarray(y[0])
    wd = np.ascontiguousarray(y[1])
    C1 = np.ascontiguousarray(y[2])
    C2 = np.ascontiguousarray(y[3])
    out = np.empty_like(y)
    out[0] = -1j * (H11 @ z + V - z @ Vd @ z - z @ H22)
    out[1] = -1j * (Vd + Vd @ z @ wd + H22 @ wd - wd @ H11 + wd @ z @ Vd)
    out[2] = -1j * ((H11 - z @ Vd) @ C1)
    out[3] = -1j * ((Vd @ z + H22) @ C2)
    return out


@njit(cache=True)
def _block_rk4_nb(y0, T, n_steps, bound, basis, mu, nu, const, st, sa, so, sp):
    h = T / n_steps
    y = y0.copy()
    for k in range(n_steps):
        t = k * h
        H0 = _hamiltonian_nb(_eval_F_nb(t, mu, nu, const, st, sa, so, sp), basis)
        Hh = _hamiltonian_nb(_eval_F_nb(t + 0.5 * h, mu, nu, const, st, sa, so, sp), basis)
        H1 = _hamiltonian_nb(_eval_F_nb(t + h, mu, nu, const, st, sa, so, sp), basis)
        k1 = _block_rhs_nb(y, H0)
        k2 = _block_rhs_nb(y + 0.5 * h * k1, Hh)
        k3 = _block_rhs_nb(y + 0.5 * h * k2, Hh)
        k4 = _block_rhs_nb(y + h * k3, H1)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(np.abs(y).sum()) or np.abs(y[0]).max() > bound:
            return y, 1, k + 1
    return y, 0, n_steps


# --- numpy versions ----------------------------------------------------------

def _eval_F_np(t, mu, nu, const, st, sa, so, sp):
    A = np.zeros((6, 6))
    np.add.at(A, (mu, nu), const)
    if st.size:
        np.add.at(A, (mu[st], nu[st]), sa * np.cos(so * t + sp))
    return A - A.T


def _riccati_rhs_np(z, F):
    zz = z @ z
    drive = (F[4, :4] + 1j * F[5, :4]) @ z
    return (F[4, :4] * (1 - zz) - 1j * F[5, :4] * (1 + zz) + 2 * F[:4, :4] @ z
            + 2 * drive * z - 2j * F[5, 4] * z)


def _riccati_rk4_np(z0, T, n_steps, bound, *drive):
    h = T / n_steps
    traj = np.zeros((n_steps + 1, 4), dtype=complex)
    traj[0] = z = z0.copy()
    for k in range(n_steps):
        t = k * h
        F0, Fh, F1 = (_eval_F_np(tt, *drive) for tt in (t, t + h / 2, t + h))
        k1 = _riccati_rhs_np(z, F0)
        k2 = _riccati_rhs_np(z + h / 2 * k1, Fh)
        k3 = _riccati_rhs_np(z + h / 2 * k2, Fh)
        k4 = _riccati_rhs_np(z + h * k3, F1)
        z = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        traj[k + 1] = z
        if not np.all(np.isfinite(z)) or np.linalg.norm(z) > bound:
            return traj, 1, k + 1
    return traj, 0, n_steps


def _bloch_rk4_np(m0, T, n_steps, *drive):
    h = T / n_steps
    traj = np.zeros((n_steps + 1, 6), dtype=complex)
    traj[0] = m = m0.copy()
    for k in range(n_steps):
        t = k * h
        F0, Fh, F1 = (2 * _eval_F_np(tt, *drive) for tt in (t, t + h / 2, t + h))
        k1 = F0 @ m
        k2 = Fh @ (m + h / 2 * k1)
        k3 = Fh @ (m + h / 2 * k2)
        k4 = F1 @ (m + h * k3)
        m = m + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        traj[k + 1] = m
    return traj, 0, n_steps


def _hamiltonian_np(F, basis):
    lower = np.tril(F, -1)
    return np.einsum("ab,abij->ij", lower, basis)


def _block_rhs_np(y, H):
    H11, V, Vd, H22 = H[:2, :2], H[:2, 2:], H[2:, :2], H[2:, 2:]
    z, wd, C1, C2 = y
    return -1j * np.stack([
        H11 @ z + V - z @ Vd @ z - z @ H22,
        Vd + Vd @ z @ wd + H22 @ wd - wd @ H11 + wd @ z @ Vd,
        (H11 - z @ Vd) @ C1,
        (Vd @ z + H22) @ C2,
    ])


def _block_rk4_np(y0, T, n_steps, bound, basis, *drive):
    h = T / n_steps
    y = y0.copy()
    for k in range(n_steps):
        t = k * h
        H0, Hh, H1 = (_hamiltonian_np(_eval_F_np(tt, *drive), basis) for tt in (t, t + h / 2, t + h))
        k1 = _block_rhs_np(y, H0)
        k2 = _block_rhs_np(y + h / 2 * k1, Hh)
        k3 = _block_rhs_np(y + h / 2 * k2, Hh)
        k4 = _block_rhs_np(y + h * k3, H1)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)) or np.abs(y[0]).max() > bound:
            return y, 1, k + 1
    return y, 0, n_steps


# --- dispatch ----------------------------------------------------------------

def eval_F(t, drive):
    return (_eval_F_nb if use_numba() else _eval_F_np)(float(t), *drive)


def riccati_rk4(z0, T, n_steps, bound, drive):
    f = _riccati_rk4_nb if use_numba() else _riccati_rk4_np
    return f(np.asarray(z0, dtype=np.complex128), float(T), int(n_steps), float(bound), *drive)


def bloch_rk4(m0, T, n_steps, drive):
    f = _bloch_rk4_nb if use_numba() else _bloch_rk4_np
    return f(np.asarray(m0, dtype=np.complex128), float(T), int(n_steps), *drive)


def block_rk4(y0, T, n_steps, bound, basis, drive):
    f = _block_rk4_nb if use_numba() else _block_rk4_np
    return f(np.asarray(y0, dtype=np.complex128), float(T), int(n_steps), float(bound), basis, *drive)


# --- conditional entropy after a projective measurement on qubit A -------------

@njit(cache=True)
def _h2_nb(p):
    out = 0.0
    if p > 0.0:
        out -= p * np.log2(p)
    if p < 1.0:
        out -= (1.0 - p) * np.log2(1.0 - p)
    return out


@njit(cache=True)
def _cond_entropy_nb(a, b, T, theta, phi):
    n0 = np.sin(theta) * np.cos(phi)
    n1 = np.sin(theta) * np.sin(phi)
    n2 = np.cos(theta)
    na = n0 * a[0] + n1 * a[1] + n2 * a[2]
    total = 0.0
    for s in (1.0, -1.0):
        p = 0.5 * (1.0 + s * na)
        if p <= 1e-300:
            continue
        r2 = 0.0
        for j in range(3):
            v = b[j] + s * (n0 * T[0, j] + n1 * T[1, j] + n2 * T[2, j])
            r2 += v * v
        r = min(np.sqrt(r2) / (2.0 * p), 1.0)
        total += p * _h2_nb(0.5 * (1.0 + r))
    return total


@njit(cache=True)
def _cond_entropy_grid_nb(a, b, T, thetas, phis):
    out = np.empty((thetas.size, phis.size))
    for i in range(thetas.size):
        for j in range(phis.size):
            out[i, j] = _cond_entropy_nb(a, b, T, thetas[i], phis[j])
    return out


def _h2_np(p):
    p = np.clip(p, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        q = 1.0 - p
        t2 = np.where(q > 0, -q * np.log2(np.where(q > 0, q, 1.0)), 0.0)
    return t1 + t2


def _cond_entropy_grid_np(a, b, T, thetas, phis):
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    n = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)
    na = n @ a
    Tn = n @ T
    total = np.zeros(th.shape)
    for s in (1.0, -1.0):
        p = 0.5 * (1.0 + s * na)
        safe = np.maximum(2.0 * p, 1e-300)
        r = np.minimum(np.linalg.norm(b + s * Tn, axis=-1) / safe, 1.0)
        total += np.where(p > 1e-300, p * _h2_np(0.5 * (1.0 + r)), 0.0)
    return total


def cond_entropy_grid(a, b, T, thetas, phis):
    f = _cond_entropy_grid_nb if use_numba() else _cond_entropy_grid_np
    return f(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64),
             np.ascontiguousarray(T, dtype=np.float64), np.asarray(thetas, dtype=np.float64),
             np.asarray(phis, dtype=np.float64))
