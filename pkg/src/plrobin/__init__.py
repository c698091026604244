"""First Robin eigenvalues of the p-Laplacian on radial domains in space forms.

Solvers (shooting + variational cross-check), level-set machinery for the
comparison functional, volume-matched transplantation of radial profiles, and
a verification harness for the ball-minimizer and isoperimetric inequalities.
"""

from .errors import (ConvergenceError, DomainError, EmptyLevelSetError,
                     IntegrationError, NumericalError, PLRobinError,
                     SearchExhaustedError, UnsupportedError, VerificationError)
from .geometry import (ModelConstants, SpaceForm, ball_volume, flat_disk_volume_ratio,
                       inverse_ball_volume, model_constants, model_sphere_radius,
                       sphere_area, total_volume, unit_ball_volume, wallis, zeta,
                       zeta_derivative)
from .problem import Annulus, Ball, RadialDomain, RobinParams
from .shooting import (KERNEL_BACKEND, RadialSolution, SolverOptions,
                       first_eigenvalue, flux_rhs, log_gradient, shoot_annulus,
                       shoot_ball)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Name of the integrator kernel selected at import ("cython" or "python")."""
    return KERNEL_BACKEND
