"""Background-flow / superpotential families added to the point-vortex velocity.

Each family provides the flow term w(z) entering the velocity
dz_bar/dt = sum_j i*kappa_j/(z - z_j) + i*w(z), its derivative (used by the
Newton jacobian of the stationary problem), and the complex antiderivative
(real part = line potential for the electrostatic energy, stream-function
bookkeeping for the Hamiltonian form).
"""

from dataclasses import dataclass, field

import numpy as np

from .orthopoly import PolynomialSpec, HERMITE, LAGUERRE, JACOBI


@dataclass(frozen=True)
class NoFlow:
    poles = ()
    domain = (-np.inf, np.inf)

    def w(self, z):
        return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0

    def dw(self, z):
        return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0

    def antiderivative(self, z):
        return np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0


@dataclass(frozen=True)
class HermiteLinear:
    """w(z) = z; stationary points sit at Hermite zeros."""

    poles = ()
    domain = (-np.inf, np.inf)

    def w(self, z):
        return z

    def dw(self, z):
        return np.ones_like(np.asarray(z, dtype=float)) if np.ndim(z) else 1.0

    def antiderivative(self, z):
        return 0.5 * z * z

    def polynomial_spec(self, n):
        return PolynomialSpec(HERMITE, n)


@dataclass(frozen=True)
class Coulomb:
    """w(r) = 1/2 - (l+1)/r on (0, inf); stationary points at Laguerre(2l+1) zeros."""

    l: float = 0.0

    def __post_init__(self):
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")

    @property
    def poles(self):
        return (0.0,)

    domain = (0.0, np.inf)

    def w(self, z):
        return 0.5 - (self.l + 1.0) / z

    def dw(self, z):
        return (self.l + 1.0) / (z * z)

    def antiderivative(self, z):
        return 0.5 * z - (self.l + 1.0) * np.log(z)

    def polynomial_spec(self, n):
        return PolynomialSpec(LAGUERRE, n, alpha=2.0 * self.l + 1.0)


@dataclass(frozen=True)
class JacobiCharges:
    """Fixed charges p at +1 and q at -1; w(x) = -p/(x-1) - q/(x+1) on (-1, 1).

    Stationary points sit at Jacobi(2p-1, 2q-1) zeros.
    """

    p: float = 0.5
    q: float = 0.5

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ValueError(f"fixed charges must be positive, got p={self.p}, q={self.q}")

    @property
    def poles(self):
        return (-1.0, 1.0)

    domain = (-1.0, 1.0)

    def w(self, z):
        return -self.p / (z - 1.0) - self.q / (z + 1.0)

    def dw(self, z):
        return self.p / (z - 1.0) ** 2 + self.q / (z + 1.0) ** 2

    def antiderivative(self, z):
        return -self.p * np.log(z - 1.0) - self.q * np.log(z + 1.0)

    def polynomial_spec(self, n):
        return PolynomialSpec(JACOBI, n, alpha=2.0 * self.p - 1.0, beta=2.0 * self.q - 1.0)


@dataclass(frozen=True)
class ConjugateLinear:
    """w(z) = -omega * conj(z): the Gaussian confinement of the planar problem.

    omega = 1/(4 l_B^2).  Not derivable from a real line potential.
    """

    omega: float = 0.25

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")

    poles = ()
    domain = (-np.inf, np.inf)

    def w(self, z):
        return -self.omega * np.conj(z)


@dataclass(frozen=True)
class CustomRational:
    """w(z) = sum_m residues[m]/(z - poles[m]) + polynomial(z) (ascending coeffs)."""

    poles: tuple = ()
    residues: tuple = ()
    poly: tuple = field(default=())

    def __post_init__(self):
        if len(self.poles) != len(self.residues):
            raise ValueError("poles and residues must have equal length")
        if len(set(self.poles)) != len(self.poles):
            raise ValueError("poles must be distinct")

    domain = (-np.inf, np.inf)

    def w(self, z):
        out = np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0 + 0.0j
        for p, r in zip(self.poles, self.residues):
            out = out + r / (z - p)
        for m, c in enumerate(self.poly):
            out = out + c * z**m
        return out

    def dw(self, z):
        out = np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0 + 0.0j
        for p, r in zip(self.poles, self.residues):
            out = out - r / (z - p) ** 2
        for m, c in enumerate(self.poly):
            if m >= 1:
                out = out + m * c * z ** (m - 1)
        return out

    def antiderivative(self, z):
        out = np.zeros_like(np.asarray(z, dtype=complex)) if np.ndim(z) else 0.0 + 0.0j
        for p, r in zip(self.poles, self.residues):
            out = out + r * np.log(z - p)
        for m, c in enumerate(self.poly):
            out = out + c * z ** (m + 1) / (m + 1)
        return out
