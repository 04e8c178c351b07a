"""Planar four-bar linkage ABCD: position analysis over a crank arc.

The linkage is normalized so the frame pivots sit at A = (0, 0) and
D = (1, 0) (frame length 1).  The crank AB rotates about A, the rocker CD
about D, and the coupler BC carries the foot point.  All lengths are
ratios to the frame length and all angles are radians unless a name says
otherwise.

The support phase of the walking gait is the crank arc
``start_angle .. start_angle + support_arc`` sampled at uniformly spaced
angles; the transfer phase is the remainder of the crank revolution.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import angle_diff

# Absolute tolerance on the circle-intersection discriminant below which a
# configuration is reported as degenerate (near-tangent circles).
DEGENERACY_TOL = 1e-9

# Default bound on the coupler-angle step between consecutive sweep samples.
# A larger jump is treated as a branch-continuity violation.
DEFAULT_CONTINUITY_BOUND = 1.0


class LinkageError(Exception):
    """Base class for four-bar analysis failures."""


class NotAssemblableError(LinkageError):
    """The coupler/rocker circles do not intersect at the given crank angle."""

    def __init__(self, phi, gap):
        self.phi = float(phi)
        self.gap = float(gap)
        super().__init__(f"linkage not assemblable at crank angle {phi:.6f} rad "
                         f"(closure gap {gap:.3e})")


class DegenerateConfigurationError(LinkageError):
    """The circle intersection is within tolerance of tangency."""

    def __init__(self, phi, discriminant):
        self.phi = float(phi)
        self.discriminant = float(discriminant)
        super().__init__(f"near-tangent configuration at crank angle {phi:.6f} rad "
                         f"(discriminant {discriminant:.3e})")


class SweepInvalidError(LinkageError):
    """A crank sweep failed assemblability or branch continuity."""

    def __init__(self, index, reason):
        self.index = int(index)
        self.reason = reason
        super().__init__(f"sweep invalid at sample {index}: {reason}")


class SingularTransmissionError(LinkageError):
    """Force transmission undefined at a dead point (transmission angle 0)."""


@dataclass(frozen=True)
class FourBarParams:
    """Normalized linkage dimensions and crank schedule for the support arc.

    Attributes:
        crank: crank length ratio l_AB / l_AD.
        coupler: coupler length ratio l_BC / l_AD.
        rocker: rocker length ratio l_CD / l_AD.
        start_angle: crank angle at the start of the support arc (rad).
        support_arc: angular extent of the support arc (rad).  A walking
            gait needs an arc above pi (support longer than transfer); the
            type itself accepts any arc in (0, 2*pi) so that sub-pi test
            mechanisms can be analyzed, and the gait-level requirement is
            enforced by the search-box bounds.
        branch: assembly-mode selector, +1 or -1, picking one of the two
            circle-intersection roots for joint C.
    """

    crank: float
    coupler: float
    rocker: float
    start_angle: float
    support_arc: float
    branch: int = +1

    def __post_init__(self):
        if not (self.crank > 0 and self.coupler > 0 and self.rocker > 0):
            raise ValueError("link length ratios must be positive")
        if not (0.0 < self.support_arc < 2.0 * np.pi):
            raise ValueError("support_arc must lie in (0, 2*pi)")
        if self.branch not in (+1, -1):
            raise ValueError("branch must be +1 or -1")

    def as_array(self):
        """The five nonlinear parameters as a vector (for search code)."""
        return np.array([self.crank, self.coupler, self.rocker,
                         self.start_angle, self.support_arc])


@dataclass(frozen=True)
class CrankSchedule:
    """Uniform crank-angle samples over the support arc.

    fractions[i] = i / (N - 1) runs from 0 to 1 with mean exactly 1/2;
    angles[i] = start_angle + support_arc * fractions[i].
    """

    angles: np.ndarray
    fractions: np.ndarray

    def __post_init__(self):
        if len(self.angles) != len(self.fractions):
            raise ValueError("angles and fractions must have equal length")

    def __len__(self):
        return len(self.angles)


@dataclass(frozen=True)
class Pose:
    """One assembled configuration of the linkage.

    b and c are the world coordinates of joints B and C, beta the coupler
    angle of BC measured from the x-axis, transmission_angle the classical
    angle between coupler and rocker at C folded into [0, pi/2].
    """

    phi: float
    b: np.ndarray
    c: np.ndarray
    beta: float
    transmission_angle: float


@dataclass(frozen=True)
class GaitMetrics:
    """Step-cycle figures of merit, in degrees for reporting."""

    support_deg: float
    transfer_deg: float
    cycle_ratio: float
    min_transmission_deg: float


def sample_schedule(start_angle, support_arc, count):
    """Uniformly sample the support arc with `count` crank angles.

    The first sample is exactly start_angle and the last exactly
    start_angle + support_arc.
    """
    if count < 2:
        raise ValueError("schedule needs at least 2 samples")
    fractions = np.arange(count, dtype=float) / (count - 1)
    angles = start_angle + support_arc * fractions
    return CrankSchedule(angles=angles, fractions=fractions)


def _positions(params, phis):
    """Vectorized circle-intersection position analysis.

    Returns (B, C, beta, mu) arrays for the crank angles `phis`, or raises
    on the first failing sample (reported with its index embedded in a
    SweepInvalidError by callers that need it).
    """
    phis = np.asarray(phis, dtype=float)
    p1, p2, p3 = params.crank, params.coupler, params.rocker
    B = np.stack([p1 * np.cos(phis), p1 * np.sin(phis)], axis=-1)
    BD = np.array([1.0, 0.0]) - B
    d = np.hypot(BD[..., 0], BD[..., 1])

    too_far = d - (p2 + p3)
    too_close = abs(p2 - p3) - d
    gap = np.maximum(too_far, too_close)
    bad = np.nonzero(gap > 0.0)[0]
    if bad.size:
        i = int(bad[0])
        raise SweepInvalidError(i, NotAssemblableError(phis[i], gap[i]))
    # B on top of D (crank ratio 1 at phi = 0 with equal coupler/rocker)
    # leaves the intersection direction undefined
    tiny = np.nonzero(d < 1e-12)[0]
    if tiny.size:
        i = int(tiny[0])
        raise SweepInvalidError(i, DegenerateConfigurationError(phis[i], 0.0))

    a = (p2 * p2 - p3 * p3 + d * d) / (2.0 * d)
    disc = p2 * p2 - a * a
    weak = np.nonzero(disc < DEGENERACY_TOL)[0]
    if weak.size:
        i = int(weak[0])
        raise SweepInvalidError(i, DegenerateConfigurationError(phis[i], disc[i]))

    h = np.sqrt(disc)
    u = BD / d[..., None]
    perp = np.stack([-u[..., 1], u[..., 0]], axis=-1)
    C = B + a[..., None] * u + params.branch * h[..., None] * perp
    beta = np.arctan2(C[..., 1] - B[..., 1], C[..., 0] - B[..., 0])

    cos_mu = (p2 * p2 + p3 * p3 - d * d) / (2.0 * p2 * p3)
    mu = np.arccos(np.clip(cos_mu, -1.0, 1.0))
    mu = np.minimum(mu, np.pi - mu)
    return B, C, beta, mu


def solve_position(params, phi):
    """Assemble the linkage at a single crank angle.

    Raises NotAssemblableError / DegenerateConfigurationError when joint C
    cannot be placed on the selected branch.
    """
    try:
        B, C, beta, mu = _positions(params, np.array([float(phi)]))
    except SweepInvalidError as err:
        raise err.reason from None
    return Pose(phi=float(phi), b=B[0], c=C[0], beta=float(beta[0]),
                transmission_angle=float(mu[0]))


def sweep(params, count, continuity_bound=DEFAULT_CONTINUITY_BOUND):
    """Position analysis over the full support schedule.

    All samples are solved on the same assembly branch; a jump in the
    coupler angle larger than `continuity_bound` between consecutive
    samples is rejected as a branch-continuity violation.  This is the
    guard against synthesis solutions whose samples live on different
    assembly modes and are therefore not physically traceable.
    """
    schedule = sample_schedule(params.start_angle, params.support_arc, count)
    B, C, beta, mu = _positions(params, schedule.angles)
    steps = np.abs(angle_diff(beta[1:], beta[:-1]))
    jumps = np.nonzero(steps > continuity_bound)[0]
    if jumps.size:
        i = int(jumps[0]) + 1
        raise SweepInvalidError(i, f"coupler-angle jump {steps[i - 1]:.3f} rad "
                                   f"exceeds continuity bound {continuity_bound}")
    return [Pose(phi=float(schedule.angles[i]), b=B[i], c=C[i],
                 beta=float(beta[i]), transmission_angle=float(mu[i]))
            for i in range(len(schedule))]


def coupler_path(poses, local_point):
    """World trajectory of a point fixed in the coupler frame.

    local_point = (x, y) in the frame with origin B and x-axis along BC.
    """
    xy = np.asarray(local_point, dtype=float)
    beta = np.array([p.beta for p in poses])
    B = np.array([p.b for p in poses])
    c, s = np.cos(beta), np.sin(beta)
    ex = xy[0] * c - xy[1] * s
    ey = xy[0] * s + xy[1] * c
    return B + np.stack([ex, ey], axis=-1)


def gait_metrics(params, poses):
    """Step-cycle ratio and worst transmission angle over a valid sweep."""
    support_deg = np.degrees(params.support_arc)
    transfer_deg = 360.0 - support_deg
    mu_min = min(p.transmission_angle for p in poses)
    return GaitMetrics(support_deg=support_deg,
                       transfer_deg=transfer_deg,
                       cycle_ratio=support_deg / transfer_deg,
                       min_transmission_deg=float(np.degrees(mu_min)))


def force_ratio_angle(params, pose, coupler_point=(0.0, 0.0)):
    """Foot-force direction angle arctan(|F_vertical| / |F_horizontal|).

    The coupler is modeled as a massless two-force member, so the contact
    force is transmitted along BC; the returned angle is the inclination
    of BC in the world frame folded into [0, pi/2].  Under this model the
    direction does not depend on where the foot point sits on the coupler;
    the argument is accepted for interface symmetry with coupler_path.

    Raises SingularTransmissionError at a dead point (transmission angle
    zero), where the member direction carries no force information.
    """
    del coupler_point
    if pose.transmission_angle < 1e-9:
        raise SingularTransmissionError(
            f"dead point at crank angle {pose.phi:.6f} rad")
    bc = pose.c - pose.b
    return float(np.arctan2(abs(bc[1]), abs(bc[0])))
