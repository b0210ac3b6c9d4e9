"""Time-dependent point-vortex dynamics in the plane.

The velocity of vortex i is dz_i/dt = conj( sum_{j != i} i*kappa_j/(z_i - z_j)
+ i*w(z_i) ), with kappa_j the circulation of the inducing vortex and w the
background flow.  Integration is adaptive embedded Runge-Kutta (Dormand-Prince
5(4)) with step rejection; linear impulse Q+iP, angular impulse I and the
interaction energy H are monitored as integration-quality diagnostics.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .backgrounds import NoFlow, HermiteLinear, Coulomb, JacobiCharges, ConjugateLinear


class CollisionError(RuntimeError):
    """Two vortices (or a vortex and a background pole) came closer than epsilon."""


class StepLimitError(RuntimeError):
    """Adaptive integrator exhausted its step budget (near-collision stiffness)."""


class UnsupportedBackgroundError(ValueError):
    """Background has no real potential usable for the Hamiltonian form."""


@dataclass(frozen=True)
class VortexConfiguration:
    """n complex vortex positions with circulation strengths at time t."""

    z: np.ndarray
    kappa: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.z, dtype=complex))
        kappa = np.atleast_1d(np.asarray(self.kappa, dtype=float))
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "kappa", kappa)
        if z.shape != kappa.shape or z.ndim != 1 or z.size < 1:
            raise ValueError("positions and strengths must be 1-d arrays of equal length >= 1")
        if not np.all(np.isfinite(kappa)) or np.any(kappa == 0.0):
            raise ValueError("strengths must be finite and nonzero")
        if not np.all(np.isfinite(z.view(float))):
            raise ValueError("positions must be finite")
        if z.size > 1:
            d = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() == 0.0:
                raise ValueError("positions must be pairwise distinct")

    @property
    def n(self):
        return self.z.size


@dataclass(frozen=True)
class ConservedSet:
    """Linear impulse Q+iP, angular impulse I, interaction energy H."""

    linear_impulse: complex
    angular_impulse: float
    interaction_energy: float


@dataclass(frozen=True)
class DriftReport:
    """Max absolute deviations of Q+iP, I, H over a completed run."""

    linear: float
    angular: float
    energy: float


def _check_separation(z, bg, eps):
    if z.size > 1:
        d = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() < eps:
            raise CollisionError(f"pairwise distance {d.min():.3e} below epsilon {eps:.1e}")
    for pole in getattr(bg, "poles", ()):
        dp = np.abs(z - pole).min()
        if dp < eps:
            raise CollisionError(f"distance {dp:.3e} to background pole {pole} below epsilon")


def rhs(cfg: VortexConfiguration, bg=NoFlow(), eps: float = 1e-12) -> np.ndarray:
    """Velocities dz_i/dt; O(n^2) pairwise sum in ascending index order."""
    z, kappa = cfg.z, cfg.kappa
    _check_separation(z, bg, eps)
    n = z.size
    v = np.zeros(n, dtype=complex)
    for i in range(n):
        s = 0.0 + 0.0j
        for j in range(n):
            if j != i:
                s += kappa[j] / (z[i] - z[j])
        if not isinstance(bg, NoFlow):
            s += bg.w(z[i])
        v[i] = np.conj(1j * s)
    return v


def conserved(cfg: VortexConfiguration) -> ConservedSet:
    z, kappa = cfg.z, cfg.kappa
    qp = complex(np.sum(kappa * z))
    ang = float(np.sum(kappa * np.abs(z) ** 2))
    h = 0.0
    for i in range(z.size):
        for j in range(i + 1, z.size):
            h += kappa[i] * kappa[j] * np.log(np.abs(z[i] - z[j]))
    return ConservedSet(qp, ang, h)


def hamiltonian_rhs(cfg: VortexConfiguration, bg=NoFlow(), eps: float = 1e-12) -> np.ndarray:
    """Velocities from Hamilton's equations with analytic gradients.

    H_tot = sum_{i<j} kappa_i kappa_j ln|z_i - z_j| + sum_k kappa_k Re Phi(z_k)
    where Phi is the complex antiderivative of the background flow w, with the
    bracket {f, g} = sum_k (1/kappa_k)(f_x g_y - f_y g_x).
    """
    if not isinstance(bg, (NoFlow, HermiteLinear, Coulomb, JacobiCharges)):
        raise UnsupportedBackgroundError(
            f"{type(bg).__name__} background has no real line potential in this form"
        )
    z, kappa = cfg.z, cfg.kappa
    _check_separation(z, bg, eps)
    n = z.size
    v = np.zeros(n, dtype=complex)
    for k in range(n):
        xdot = 0.0
        ydot = 0.0
        for j in range(n):
            if j == k:
                continue
            dxy = z[k] - z[j]
            r2 = dxy.real**2 + dxy.imag**2
            # xdot_k = (1/kappa_k) dH/dy_k, ydot_k = -(1/kappa_k) dH/dx_k
            xdot += kappa[j] * dxy.imag / r2
            ydot += -kappa[j] * dxy.real / r2
        if not isinstance(bg, NoFlow):
            wk = bg.w(z[k])
            # d/dy Re Phi = -Im Phi' = -Im w; d/dx Re Phi = Re w (Cauchy-Riemann)
            xdot += -np.imag(wk)
            ydot += -np.real(wk)
        v[k] = xdot + 1j * ydot
    return v


def poisson_bracket(f, g, cfg: VortexConfiguration, step: float = 1e-5, eps: float = 1e-12):
    """{f, g} = sum_k (1/kappa_k)(df/dx_k dg/dy_k - df/dy_k dg/dx_k) by central differences.

    f and g take the complex position vector and return a real number.
    """
    z, kappa = cfg.z, cfg.kappa
    n = z.size

    def partials(func):
        fx = np.empty(n)
        fy = np.empty(n)
        for k in range(n):
            for d, out in ((step, fx), (1j * step, fy)):
                zp = z.copy()
                zm = z.copy()
                zp[k] += d
                zm[k] -= d
                for stencil in (zp, zm):
                    _check_separation(stencil, NoFlow(), eps)
                out[k] = (func(zp) - func(zm)) / (2.0 * step)
        return fx, fy

    fx, fy = partials(f)
    gx, gy = partials(g)
    return float(np.sum((fx * gy - fy * gx) / kappa))


# Dormand-Prince 5(4) tableau
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


@dataclass(frozen=True)
class Trajectory:
    """Sampled configurations plus invariant-drift diagnostics."""

    configurations: list
    drift: DriftReport

    def to_csv(self, path):
        """Columns t, x_1, y_1, ..., x_n, y_n, Q, P, I, H with a header row."""
        n = self.configurations[0].n
        header = ["t"]
        for i in range(1, n + 1):
            header += [f"x_{i}", f"y_{i}"]
        header += ["Q", "P", "I", "H"]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for cfg in self.configurations:
                c = conserved(cfg)
                row = [cfg.t]
                for zi in cfg.z:
                    row += [zi.real, zi.imag]
                row += [c.linear_impulse.real, c.linear_impulse.imag,
                        c.angular_impulse, c.interaction_energy]
                writer.writerow(["%.17g" % v for v in row])


def integrate(
    cfg: VortexConfiguration,
    bg=NoFlow(),
    t_end: float = 1.0,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    max_steps: int = 100000,
    sample_times=None,
    eps: float = 1e-12,
) -> Trajectory:
    """Adaptive Dormand-Prince 5(4) integration of the vortex equations.

    Trajectory is sampled exactly at sample_times (default: start and end).
    Drift is the max deviation of Q+iP, I, H over all accepted steps.
    """
    t0 = cfg.t
    if t_end <= t0:
        raise ValueError(f"t_end {t_end} must exceed initial time {t0}")
    if sample_times is None:
        sample_times = np.array([t0, t_end])
    sample_times = np.sort(np.asarray(sample_times, dtype=float))
    if sample_times[0] < t0 or sample_times[-1] > t_end:
        raise ValueError("sample times must lie in [t, t_end]")

    def f(t, z):
        return rhs(VortexConfiguration(z, cfg.kappa, t), bg, eps)

    c0 = conserved(cfg)
    drift_lin = drift_ang = drift_en = 0.0
    samples = []
    si = 0
    t, z = t0, cfg.z.copy()
    while si < sample_times.size and sample_times[si] <= t:
        samples.append(VortexConfiguration(z.copy(), cfg.kappa, t))
        si += 1

    v0 = f(t, z)
    speed = np.abs(v0).max()
    dt = min(t_end - t0, 0.01 * (1.0 + np.abs(z).max()) / max(speed, 1e-8))
    nsteps = 0
    while t < t_end:
        if nsteps >= max_steps:
            raise StepLimitError(f"step budget {max_steps} exhausted at t={t:.6g}")
        target = sample_times[si] if si < sample_times.size else t_end
        h = min(dt, target - t, t_end - t)
        ks = [f(t, z)]
        for stage in range(1, 7):
            zi = z + h * sum(a * k for a, k in zip(_DP_A[stage], ks))
            ks.append(f(t + _DP_C[stage] * h, zi))
        z5 = z + h * sum(b * k for b, k in zip(_DP_B5, ks))
        z4 = z + h * sum(b * k for b, k in zip(_DP_B4, ks))
        err = np.abs(z5 - z4) / (atol + rtol * np.maximum(np.abs(z), np.abs(z5)))
        emax = err.max()
        nsteps += 1
        if emax <= 1.0:
            t = t + h
            z = z5
            c = conserved(VortexConfiguration(z, cfg.kappa, t))
            drift_lin = max(drift_lin, abs(c.linear_impulse - c0.linear_impulse))
            drift_ang = max(drift_ang, abs(c.angular_impulse - c0.angular_impulse))
            drift_en = max(drift_en, abs(c.interaction_energy - c0.interaction_energy))
            while si < sample_times.size and sample_times[si] <= t + 1e-14 * max(1.0, abs(t)):
                samples.append(VortexConfiguration(z.copy(), cfg.kappa, sample_times[si]))
                si += 1
            dt = dt * min(5.0, max(0.2, 0.9 * emax ** (-0.2))) if emax > 0 else dt * 5.0
        else:
            dt = dt * max(0.2, 0.9 * emax ** (-0.2))
    while si < sample_times.size:
        samples.append(VortexConfiguration(z.copy(), cfg.kappa, sample_times[si]))
        si += 1
    return Trajectory(samples, DriftReport(drift_lin, drift_ang, drift_en))
