"""Shared solve caches so sweep-heavy tests reuse eigenpairs."""

import functools

from plrobin import Annulus, Ball, RobinParams, SpaceForm, first_eigenvalue
from plrobin.shooting import SolverOptions

BALL_SWEEP = [(kappa, n, p, beta)
              for kappa in (-1, 0, 1)
              for n in (2, 3)
              for p in (1.5, 2.0, 3.0, 4.0)
              for beta in (0.1, 1.0, 10.0)]

ANNULUS_SWEEP = [(kappa, n, p, beta, ratio)
                 for kappa in (-1, 0, 1)
                 for n in (2, 3)
                 for p in (1.5, 2.0, 3.0)
                 for beta in (0.1, 1.0, 10.0)
                 for ratio in (2.0, 4.0)]

# steep Robin boundary layers (width ~ 1/beta^(1/(p-1))) need a finer
# export grid than the solver default for the level-set identities
SWEEP_POINTS = 8192


@functools.cache
def ball_solution(kappa, n, p, beta, points=SWEEP_POINTS):
    return first_eigenvalue(SpaceForm(kappa, n), RobinParams(p, beta),
                            Ball(1.0), SolverOptions(points=points))


@functools.cache
def annulus_solution(kappa, n, p, beta, ratio, points=2048):
    return first_eigenvalue(SpaceForm(kappa, n), RobinParams(p, beta),
                            Annulus(0.5, 0.5 * ratio), SolverOptions(points=points))
