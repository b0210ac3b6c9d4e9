"""Point-vortex dynamics, Stieltjes equilibria, Landau-level operators, paraxial beams."""

from .orthopoly import PolynomialSpec, RecurrenceCoefficients, recurrence, evaluate, zeros, ode_residual
from .backgrounds import (
    NoFlow,
    HermiteLinear,
    Coulomb,
    JacobiCharges,
    ConjugateLinear,
    CustomRational,
)
from .vortex import (
    VortexConfiguration,
    ConservedSet,
    CollisionError,
    rhs,
    hamiltonian_rhs,
    conserved,
    poisson_bracket,
    integrate,
)
from .stieltjes import EquilibriumProblem, EquilibriumReport, residual, jacobian, solve, certify, partner_potentials
from .landau import (
    LaughlinParams,
    QuasiholeSet,
    log_laughlin,
    berry_connection,
    laughlin_stationarity_residual,
    solve_planar_equilibrium,
    ladder_apply,
    dlu_residual,
)
from .paraxial import (
    BeamField,
    lg_mode,
    propagate,
    topological_charge,
    find_vortices,
    paraxial_validity,
    save_field,
    load_field,
)

__version__ = "0.1.0"
