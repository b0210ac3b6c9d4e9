"""Stationary vortex configurations on a line (Stieltjes electrostatics).

Solves R_k = sum_{j != k} 1/(x_k - x_j) - w(x_k) = 0 by damped Newton with an
analytic jacobian, falling back to gradient flow on the electrostatic energy
E = -sum_{i<j} ln|x_i - x_j| + sum_k V(x_k) (V the antiderivative of w) when
Newton leaves the domain.  Converged equilibria are certified against the
zeros of the matching classical orthogonal polynomial.
"""

import json
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import orthopoly
from .backgrounds import HermiteLinear, Coulomb, JacobiCharges, CustomRational

_SOLVABLE = (HermiteLinear, Coulomb, JacobiCharges, CustomRational)


class DomainError(ValueError):
    """Point outside the family's natural domain or coincident with a pole."""


@dataclass(frozen=True)
class EquilibriumProblem:
    n: int
    background: object
    guess: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not isinstance(self.background, _SOLVABLE):
            raise ValueError(f"unsupported background {type(self.background).__name__}")
        if self.guess is not None:
            g = np.sort(np.asarray(self.guess, dtype=float))
            if g.size != self.n or np.any(np.diff(g) <= 0):
                raise ValueError("guess must hold n distinct entries")
            _check_domain(g, self.background)
            object.__setattr__(self, "guess", g)


@dataclass(frozen=True)
class EquilibriumReport:
    positions: np.ndarray
    residual_inf: float
    iterations: int
    method: str
    certified: Optional[bool] = None
    max_zero_deviation: Optional[float] = None

    def to_json(self, background=None, n=None):
        doc = {
            "positions": [float(x) for x in self.positions],
            "residual_inf": float(self.residual_inf),
            "iterations": int(self.iterations),
            "method": self.method,
        }
        if self.certified is not None:
            doc["certified"] = bool(self.certified)
        if self.max_zero_deviation is not None:
            doc["max_zero_deviation"] = float(self.max_zero_deviation)
        return doc


def _check_domain(x, bg):
    lo, hi = bg.domain
    if np.any(x <= lo) or np.any(x >= hi):
        raise DomainError(f"points outside open domain ({lo}, {hi})")
    for pole in getattr(bg, "poles", ()):
        if np.any(x == pole):
            raise DomainError(f"point coincides with fixed pole at {pole}")


def _inside(x, bg):
    lo, hi = bg.domain
    if np.any(x <= lo) or np.any(x >= hi):
        return False
    for pole in getattr(bg, "poles", ()):
        if np.any(x == np.real(pole)):
            return False
    return bool(np.all(np.diff(x) > 0))


def residual(x, background) -> np.ndarray:
    """R_k = sum_{j != k} 1/(x_k - x_j) - w(x_k)."""
    x = np.asarray(x, dtype=float)
    if x.size > 1 and np.any(np.diff(np.sort(x)) == 0):
        raise DomainError("coincident points")
    _check_domain(x, background)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    return np.sum(1.0 / diff, axis=1) - np.real(background.w(x))


def jacobian(x, background) -> np.ndarray:
    """Analytic dR_k/dx_m: off-diagonal 1/(x_k-x_m)^2, diagonal -sum - w'(x_k)."""
    x = np.asarray(x, dtype=float)
    _check_domain(x, background)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    inv2 = 1.0 / diff**2
    jac = inv2.copy()
    np.fill_diagonal(jac, -np.sum(inv2, axis=1) - np.real(background.dw(x)))
    return jac


def energy(x, background) -> float:
    """Electrostatic energy whose gradient is -R."""
    x = np.asarray(x, dtype=float)
    e = float(np.sum(np.real(background.antiderivative(x))))
    for i in range(x.size):
        for j in range(i + 1, x.size):
            e -= np.log(abs(x[i] - x[j]))
    return e


def default_guess(n, background) -> np.ndarray:
    """Chebyshev points affinely mapped into the family's domain."""
    c = np.sort(np.cos((2.0 * np.arange(1, n + 1) - 1.0) * np.pi / (2.0 * n)))
    if isinstance(background, Coulomb):
        return 2.0 * n * (c + 1.0) + 0.5
    if isinstance(background, JacobiCharges):
        return c
    return np.sqrt(2.0 * n) * c if n > 1 else np.array([0.5])


def _gradient_flow(x, background, max_iter, tol):
    """Backtracking descent on the electrostatic energy; strictly monotone."""
    e = energy(x, background)
    it = 0
    while it < max_iter:
        r = residual(x, background)
        if np.abs(r).max() <= tol:
            break
        step = 1.0 / (1.0 + np.abs(r).max())
        accepted = False
        for _ in range(40):
            xn = x + step * r  # r = -grad E
            if _inside(xn, background) and energy(xn, background) < e:
                x, e = xn, energy(xn, background)
                accepted = True
                break
            step *= 0.5
        it += 1
        if not accepted:
            break
    return x, it


def solve(problem: EquilibriumProblem, tolerance: float = 1e-12, max_iter: int = 200) -> EquilibriumReport:
    """Damped Newton with gradient-flow fallback; positions returned sorted."""
    bg = problem.background
    x = problem.guess if problem.guess is not None else default_guess(problem.n, bg)
    x = np.sort(np.asarray(x, dtype=float))
    method = "Newton"
    iterations = 0
    used_flow = False
    for _ in range(max_iter):
        r = residual(x, bg)
        rmax = np.abs(r).max()
        if rmax <= tolerance:
            break
        step = np.linalg.solve(jacobian(x, bg), -r)
        lam = 1.0
        moved = False
        for _ in range(30):
            xn = x + lam * step
            if _inside(xn, bg):
                x = xn
                moved = True
                break
            lam *= 0.5
        iterations += 1
        if not moved:
            x, flow_it = _gradient_flow(x, bg, 50, tolerance)
            iterations += flow_it
            used_flow = True
    if used_flow:
        method = "Hybrid"
    r = residual(x, bg)
    return EquilibriumReport(
        positions=np.sort(x),
        residual_inf=float(np.abs(r).max()),
        iterations=iterations,
        method=method,
    )


def certify(report: EquilibriumReport, spec: orthopoly.PolynomialSpec, tol: float = 1e-10) -> EquilibriumReport:
    """Compare equilibrium positions against polynomial zeros and the ODE residual."""
    if spec.n != report.positions.size:
        raise ValueError(f"spec degree {spec.n} does not match {report.positions.size} positions")
    ref = orthopoly.zeros(spec)
    dev = float(np.abs(np.sort(report.positions) - ref).max())
    ode_ok = all(
        abs(orthopoly.ode_residual_relative(spec, x)) <= 1e-8 for x in report.positions
    )
    return replace(report, certified=bool(dev <= tol and ode_ok), max_zero_deviation=dev)


def partner_potentials(w, dw, energy_shift, x):
    """SUSY partner potentials V± = w(x)^2 ∓ w'(x) + E."""
    w0 = w(x)
    d0 = dw(x)
    return w0 * w0 - d0 + energy_shift, w0 * w0 + d0 + energy_shift


def report_to_json(report: EquilibriumReport, background, n, path=None) -> str:
    """Structured-text export: family, parameters, n, and the report fields."""
    family = type(background).__name__
    params = {}
    if isinstance(background, Coulomb):
        params = {"l": background.l}
    elif isinstance(background, JacobiCharges):
        params = {"p": background.p, "q": background.q}
    elif isinstance(background, CustomRational):
        params = {
            "poles": list(background.poles),
            "residues": list(background.residues),
            "poly": list(background.poly),
        }
    doc = {"family": family, "parameters": params, "n": int(n)}
    doc.update(report.to_json())
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
