"""Inner linear stage of the hybrid leg synthesis.

Given a crank sweep of the four-bar, the coupler-point location (x_E, y_E)
and the straight target line (start point plus direction-times-length
vector) enter the trajectory error quadratically.  Their least-squares
optimum therefore solves a 6x6 linear system assembled from sweep means,
and the value of the error at that optimum is the reduced objective: a
function of the five nonlinear linkage parameters only, which the outer
quasi-random search minimizes.

The error is the mean (not the bare sum) of squared deviations over the
sweep samples, so the normal-equation blocks and the error share one
normalization.
"""

from dataclasses import dataclass, field

import numpy as np

from .fourbar import sample_schedule, sweep

# Condition number of the normal matrix above which the minimum-norm
# least-squares path is taken and the solution flagged rank-deficient.
RANK_DEFICIENCY_COND = 1e10

UNKNOWN_NAMES = ("coupler_x", "coupler_y", "line_x0", "line_y0",
                 "line_span_x", "line_span_y")


class InvalidSystemError(ValueError):
    """The assembled normal equations contain non-finite entries."""


@dataclass(frozen=True)
class LineTarget:
    """Straight target path traversed linearly in the sweep fraction.

    Desired point i is (x0 + span_x * k_i, y0 + span_y * k_i).
    """

    x0: float
    y0: float
    span_x: float
    span_y: float

    @property
    def length(self):
        return float(np.hypot(self.span_x, self.span_y))

    @property
    def inclination(self):
        return float(np.arctan2(self.span_y, self.span_x))

    def points(self, fractions):
        k = np.asarray(fractions, dtype=float)
        return np.stack([self.x0 + self.span_x * k,
                         self.y0 + self.span_y * k], axis=-1)


@dataclass(frozen=True)
class LinearSystem:
    """Normal equations of the mean-square trajectory error.

    matrix is symmetric 6x6, rhs the 6-vector of sweep means, constant the
    error value at the zero unknown vector (mean squared B magnitude); the
    error is constant - 2 rhs.x + x.matrix.x for any unknown vector x.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    constant: float


@dataclass(frozen=True)
class SynthesisSolution:
    """Solved unknowns and the residual error of the inner stage.

    x packs (coupler_x, coupler_y, line_x0, line_y0, line_span_x,
    line_span_y) in that order.
    """

    x: np.ndarray
    delta: float
    condition: float
    rank_deficient: bool
    pinned: dict = field(default_factory=dict)

    @property
    def coupler_point(self):
        return np.array([self.x[0], self.x[1]])

    @property
    def line(self):
        return LineTarget(x0=float(self.x[2]), y0=float(self.x[3]),
                          span_x=float(self.x[4]), span_y=float(self.x[5]))


@dataclass(frozen=True)
class ReducedObjective:
    """Reduced objective value with the inner solution that produced it."""

    delta0: float
    solution: SynthesisSolution
    poses: list
    schedule: object


def assemble(poses, schedule):
    """Build the 6x6 normal equations from a sweep and its schedule."""
    if len(poses) == 0:
        raise ValueError("poses must be nonempty")
    if len(poses) != len(schedule):
        raise ValueError("poses and schedule must have the same length")
    beta = np.array([p.beta for p in poses])
    B = np.array([p.b for p in poses])
    k = schedule.fractions
    c, s = np.cos(beta), np.sin(beta)
    XB, YB = B[:, 0], B[:, 1]

    mc, ms = c.mean(), s.mean()
    mkc, mks = (k * c).mean(), (k * s).mean()
    mk2 = (k * k).mean()

    A1 = np.array([[-mc, -ms],
                   [ms, -mc]])
    A2 = np.array([[-mkc, -mks],
                   [mks, -mkc]])
    eye2 = np.eye(2)

    A = np.zeros((6, 6))
    A[0:2, 0:2] = eye2
    A[2:4, 2:4] = eye2
    A[4:6, 4:6] = mk2 * eye2
    A[0:2, 2:4] = A1
    A[2:4, 0:2] = A1.T
    A[0:2, 4:6] = A2
    A[4:6, 0:2] = A2.T
    A[2:4, 4:6] = 0.5 * eye2
    A[4:6, 2:4] = 0.5 * eye2

    b = np.array([
        -(XB * c + YB * s).mean(),
        (XB * s - YB * c).mean(),
        XB.mean(),
        YB.mean(),
        (k * XB).mean(),
        (k * YB).mean(),
    ])
    constant = float((XB * XB + YB * YB).mean())
    return LinearSystem(matrix=A, rhs=b, constant=constant)


def solve(system, pinned=None):
    """Solve the normal equations, optionally with pinned unknowns.

    pinned maps unknown indices (0..5) to fixed values; the remaining
    coordinates are solved from the correspondingly reduced system.  When
    the (reduced) matrix is ill-conditioned beyond RANK_DEFICIENCY_COND
    the minimum-norm least-squares solution is returned and the result is
    flagged rank-deficient instead of failing, so degenerate sweeps (for
    example constant coupler angle) stay usable inside an outer search.
    """
    A, b = system.matrix, system.rhs
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise InvalidSystemError("normal equations contain non-finite entries")
    pinned = dict(pinned or {})
    for j, v in pinned.items():
        if not 0 <= j < 6:
            raise ValueError(f"pinned index {j} out of range")
        if not np.isfinite(v):
            raise InvalidSystemError("pinned value is non-finite")

    free = [j for j in range(6) if j not in pinned]
    x = np.zeros(6)
    for j, v in pinned.items():
        x[j] = v

    if free:
        Aff = A[np.ix_(free, free)]
        rhs = b[free]
        if pinned:
            fixed = sorted(pinned)
            rhs = rhs - A[np.ix_(free, fixed)] @ x[fixed]
        condition = float(np.linalg.cond(Aff))
        rank_deficient = not np.isfinite(condition) or condition > RANK_DEFICIENCY_COND
        if rank_deficient:
            xf, *_ = np.linalg.lstsq(Aff, rhs, rcond=None)
        else:
            xf = np.linalg.solve(Aff, rhs)
        x[free] = xf
    else:
        condition = 1.0
        rank_deficient = False

    delta = float(system.constant - 2.0 * b @ x + x @ A @ x)
    return SynthesisSolution(x=x, delta=max(delta, 0.0), condition=condition,
                             rank_deficient=rank_deficient, pinned=pinned)


def residual_delta(poses, schedule, x):
    """Mean squared trajectory deviation for an arbitrary unknown vector.

    Evaluates the error directly from the sweep samples (independent of
    the assembled normal equations), which makes it the cross-check path
    for the quadratic shortcut used in solve().
    """
    if len(poses) != len(schedule):
        raise ValueError("poses and schedule must have the same length")
    x = np.asarray(x, dtype=float)
    beta = np.array([p.beta for p in poses])
    B = np.array([p.b for p in poses])
    k = schedule.fractions
    c, s = np.cos(beta), np.sin(beta)
    u = B[:, 0] + x[0] * c - x[1] * s - x[2] - x[4] * k
    v = B[:, 1] + x[0] * s + x[1] * c - x[3] - x[5] * k
    return float(np.mean(u * u + v * v))


def reduced_objective(params, count, pinned=None):
    """Sweep, assemble and solve; the residual is the outer objective.

    Raises SweepInvalidError for parameter vectors whose support arc is
    not traceable on one assembly branch; outer searches treat that as an
    infeasible sample rather than a numeric value.
    """
    poses = sweep(params, count)
    schedule = sample_schedule(params.start_angle, params.support_arc, count)
    solution = solve(assemble(poses, schedule), pinned=pinned)
    return ReducedObjective(delta0=solution.delta, solution=solution,
                            poses=poses, schedule=schedule)
