"""Laughlin wavefunction, Berry connection, planar equilibria, Landau-level operators.

Stationarity of the log-Laughlin wavefunction reads, per particle j,
S_j = m * sum_{i != j} 1/(z_j - z_i) - conj(z_j)/(4 l_B^2) = 0,
the Kirchhoff form with conjugate-linear confinement.  The symmetric pair
solves in closed form at radius l_B * sqrt(2 m).
"""

from dataclasses import dataclass

import numpy as np

from .paraxial import BeamField


@dataclass(frozen=True)
class LaughlinParams:
    """Particle count, odd filling exponent m, magnetic length l_B."""

    N: int
    m_exp: int = 1
    l_B: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.m_exp < 1 or self.m_exp % 2 == 0:
            raise ValueError(f"m_exp must be a positive odd integer, got {self.m_exp}")
        if self.l_B <= 0:
            raise ValueError(f"l_B must be > 0, got {self.l_B}")

    @property
    def omega(self):
        return 1.0 / (4.0 * self.l_B**2)


@dataclass(frozen=True)
class QuasiholeSet:
    """Quasihole positions with the filling fraction nu."""

    eta: np.ndarray
    nu: float

    def __post_init__(self):
        eta = np.atleast_1d(np.asarray(self.eta, dtype=complex))
        object.__setattr__(self, "eta", eta)
        if eta.size > 1:
            d = np.abs(eta[:, None] - eta[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() == 0.0:
                raise ValueError("quasihole positions must be pairwise distinct")


def _check_distinct(z):
    if z.size > 1:
        d = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() == 0.0:
            raise ValueError("coincident particles")


def log_laughlin(z, params: LaughlinParams) -> complex:
    """log psi = sum_{i<j} m log(z_j - z_i) - sum_j |z_j|^2 / (4 l_B^2).

    Per-factor principal branch; only the imaginary part depends on branch
    choices (mod 2 pi).
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_distinct(z)
    out = 0.0 + 0.0j
    for i in range(z.size):
        for j in range(i + 1, z.size):
            out += params.m_exp * np.log(z[j] - z[i])
    out -= np.sum(np.abs(z) ** 2) / (4.0 * params.l_B**2)
    return complex(out)


def berry_connection(holes: QuasiholeSet, j: int, l_B: float) -> complex:
    """A(eta_j) = -(i nu / 2) sum_{k != j} 1/(eta_k - eta_j) + i nu conj(eta_j)/(4 l_B^2)."""
    eta = holes.eta
    s = 0.0 + 0.0j
    for k in range(eta.size):
        if k != j:
            s += 1.0 / (eta[k] - eta[j])
    return complex(-0.5j * holes.nu * s + 1j * holes.nu * np.conj(eta[j]) / (4.0 * l_B**2))


def laughlin_stationarity_residual(z, params: LaughlinParams) -> np.ndarray:
    """S_j = m sum_{i != j} 1/(z_j - z_i) - conj(z_j)/(4 l_B^2).

    The conjugate-transpose equation (adiabatic transport of the conjugate
    coordinates) is exactly conj(S_j) evaluated on the conjugated
    configuration; use np.conj rather than a second evaluator.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_distinct(z)
    n = z.size
    s = np.zeros(n, dtype=complex)
    for j in range(n):
        acc = 0.0 + 0.0j
        for i in range(n):
            if i != j:
                acc += 1.0 / (z[j] - z[i])
        s[j] = params.m_exp * acc - np.conj(z[j]) * params.omega
    return s


def solve_planar_equilibrium(params: LaughlinParams, guess, tol: float = 1e-10, max_iter: int = 200):
    """Newton in 2N real variables on Re/Im of the stationarity residual.

    The rotational family makes the jacobian singular for N >= 2; the Newton
    step is the least-squares solution.  Returns (positions, residual_inf,
    converged).
    """
    z = np.atleast_1d(np.asarray(guess, dtype=complex)).copy()
    if z.size != params.N:
        raise ValueError(f"guess size {z.size} does not match N={params.N}")
    _check_distinct(z)
    n = params.N
    omega = params.omega
    m = params.m_exp
    best = z.copy()
    best_res = np.inf
    converged = False
    for _ in range(max_iter):
        s = laughlin_stationarity_residual(z, params)
        rmax = np.abs(s).max()
        if rmax < best_res:
            best, best_res = z.copy(), rmax
        if rmax <= tol:
            converged = True
            break
        # Wirtinger blocks: dS_j/dz_j = -m sum 1/(z_j-z_i)^2, dS_j/dz_i = +m/(z_j-z_i)^2,
        # dS_j/dzbar_j = -omega
        dz = np.zeros((n, n), dtype=complex)
        for j in range(n):
            for i in range(n):
                if i != j:
                    q = m / (z[j] - z[i]) ** 2
                    dz[j, i] = q
                    dz[j, j] -= q
        jac = np.zeros((2 * n, 2 * n))
        for j in range(n):
            for i in range(n):
                a = dz[j, i]
                b = -omega if i == j else 0.0
                # dS/dx = a + b, dS/dy = i(a - b)
                dsx = a + b
                dsy = 1j * (a - b)
                jac[2 * j, 2 * i] = dsx.real
                jac[2 * j, 2 * i + 1] = dsy.real
                jac[2 * j + 1, 2 * i] = dsx.imag
                jac[2 * j + 1, 2 * i + 1] = dsy.imag
        rvec = np.empty(2 * n)
        rvec[0::2] = s.real
        rvec[1::2] = s.imag
        step, *_ = np.linalg.lstsq(jac, -rvec, rcond=None)
        lam = 1.0
        for _ in range(30):
            zn = z + lam * (step[0::2] + 1j * step[1::2])
            try:
                sn = laughlin_stationarity_residual(zn, params)
            except ValueError:
                lam *= 0.5
                continue
            if np.abs(sn).max() < rmax:
                z = zn
                break
            lam *= 0.5
        else:
            break
    return best, float(best_res), converged


def ladder_apply(field: BeamField, which: str, l_B: float) -> BeamField:
    """Apply the lowering/raising operator on a grid by centered differences.

    lower: -i sqrt(2) (l_B d/dzbar + z/(4 l_B)); raise: -i sqrt(2) (l_B d/dz -
    zbar/(4 l_B)); d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.
    """
    if which not in ("lower", "raise"):
        raise ValueError(f"which must be 'lower' or 'raise', got {which!r}")
    u = field.amplitude
    if u.shape[0] < 3 or u.shape[1] < 3:
        raise ValueError("grid too small for centered differences (< 3 per axis)")
    ux = np.gradient(u, field.dx, axis=1)
    uy = np.gradient(u, field.dy, axis=0)
    xg, yg = field.grid()
    zg = xg + 1j * yg
    if which == "lower":
        dzbar = 0.5 * (ux + 1j * uy)
        out = -1j * np.sqrt(2.0) * (l_B * dzbar + zg * u / (4.0 * l_B))
    else:
        dz = 0.5 * (ux - 1j * uy)
        out = -1j * np.sqrt(2.0) * (l_B * dz - np.conj(zg) * u / (4.0 * l_B))
    return BeamField(out, field.dx, field.dy, field.k, field.z)


def dlu_residual(f, omega, dr) -> np.ndarray:
    """Diagnostic residual f'' + omega^2 r^2 f for radial samples f(r).

    The mixed terms omega*(zbar d/dzbar - z d/dz) vanish identically on radial
    functions, leaving this reduced operator.  No zero-residual promise is made.
    """
    f = np.asarray(f, dtype=float)
    if dr <= 0:
        raise ValueError("dr must be positive")
    r = np.arange(f.size) * dr
    d2 = np.empty_like(f)
    d2[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / dr**2
    if f.size >= 3:
        d2[0] = d2[1]
        d2[-1] = d2[-2]
    return d2 + omega**2 * r**2 * f
