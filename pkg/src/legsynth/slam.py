"""Desk-scale 2-D EKF-SLAM simulation with occupancy mapping and planning.

The simulation loop mirrors the classic recursion: predict the pose from
odometry through a unicycle motion model, observe range and bearing to
visible landmarks plus a ray-cast point cloud against obstacle polygons,
correct pose and landmark estimates with an extended Kalman update (known
data association, Joseph-form covariance), and fold the observation into
the map: new landmarks by inverse observation, occupancy-grid cells along
each ray by log-odds (free along the ray, occupied at the hit).  Grid
path planning is 8-connected A*.

One seeded generator drives every stochastic draw of a run, so runs are
reproducible bit-for-bit; independent seeds give independent runs.
Headings are always wrapped to (-pi, pi].
"""

import heapq
import json
from dataclasses import dataclass, field

import numpy as np

from .geometry import wrap_pi

LOG_ODDS_OCCUPIED = 0.85
LOG_ODDS_FREE = -0.4
LOG_ODDS_LIMIT = 10.0

# Floor on measurement variance; keeps the innovation covariance
# invertible in noise-free runs once the filter has converged.
MEASUREMENT_VARIANCE_FLOOR = 1e-12


class NoPathError(RuntimeError):
    """The goal cell cannot be reached on the current grid."""


class WorldFormatError(ValueError):
    """World JSON does not match the documented schema."""


@dataclass(frozen=True)
class MotionInput:
    """One odometry/control sample: forward and angular velocity over dt."""

    velocity: float
    angular_velocity: float
    dt: float

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")


@dataclass(frozen=True)
class SensorConfig:
    """Range-bearing and ray sensor model."""

    max_range: float = 5.0
    fov: float = 2.0 * np.pi
    n_rays: int = 72
    range_sigma: float = 0.0
    bearing_sigma: float = 0.0

    def __post_init__(self):
        if self.max_range <= 0 or self.n_rays < 0:
            raise ValueError("max_range must be positive, n_rays non-negative")
        if self.range_sigma < 0 or self.bearing_sigma < 0:
            raise ValueError("noise sigmas must be non-negative")


@dataclass(frozen=True)
class ProcessNoise:
    """Additive pose-space process noise rates (variance per unit time)."""

    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0

    def matrix(self, dt):
        return np.diag([self.x, self.y, self.heading]) * dt


@dataclass(frozen=True)
class OdometryNoise:
    """Gaussian noise on the velocity commands as seen by odometry."""

    velocity_sigma: float = 0.0
    angular_sigma: float = 0.0


@dataclass
class OccupancyGrid:
    """Log-odds occupancy grid over a rectangle of the plane."""

    resolution: float
    origin: np.ndarray
    width: int
    height: int
    log_odds: np.ndarray = None

    def __post_init__(self):
        self.origin = np.asarray(self.origin, dtype=float)
        if self.log_odds is None:
            self.log_odds = np.zeros((self.height, self.width))

    def copy(self):
        return OccupancyGrid(resolution=self.resolution,
                             origin=self.origin.copy(),
                             width=self.width, height=self.height,
                             log_odds=self.log_odds.copy())

    def probabilities(self):
        return 1.0 - 1.0 / (1.0 + np.exp(self.log_odds))

    def cell_of(self, point):
        col = int(np.floor((point[0] - self.origin[0]) / self.resolution))
        row = int(np.floor((point[1] - self.origin[1]) / self.resolution))
        return row, col

    def contains(self, cell):
        row, col = cell
        return 0 <= row < self.height and 0 <= col < self.width

    def stamp(self, cell, increment):
        if self.contains(cell):
            value = self.log_odds[cell] + increment
            self.log_odds[cell] = np.clip(value, -LOG_ODDS_LIMIT,
                                          LOG_ODDS_LIMIT)


@dataclass(frozen=True)
class World:
    """Landmarks, obstacle polygons, and the grid frame of one scenario."""

    landmarks: dict
    obstacles: tuple
    grid_resolution: float
    grid_origin: np.ndarray
    grid_width: int
    grid_height: int

    def make_grid(self):
        return OccupancyGrid(resolution=self.grid_resolution,
                             origin=np.asarray(self.grid_origin, dtype=float),
                             width=self.grid_width, height=self.grid_height)

    def segments(self):
        segs = []
        for poly in self.obstacles:
            pts = np.asarray(poly, dtype=float)
            for i in range(len(pts)):
                segs.append((pts[i], pts[(i + 1) % len(pts)]))
        return segs


@dataclass(frozen=True)
class Ray:
    angle: float
    distance: float
    hit: bool


@dataclass(frozen=True)
class Observation:
    """Range-bearing landmark measurements plus the simulated point cloud."""

    measurements: tuple    # of (landmark id, range, bearing)
    rays: tuple            # of Ray
    range_sigma: float
    bearing_sigma: float


@dataclass
class SlamState:
    """Joint Gaussian over robot pose and landmark positions plus the grid.

    mean = [x, y, heading, l1x, l1y, ...]; landmark_ids gives the block
    order; cov is the full joint covariance.
    """

    mean: np.ndarray
    cov: np.ndarray
    landmark_ids: tuple
    grid: OccupancyGrid

    @property
    def pose(self):
        return self.mean[:3].copy()

    @property
    def landmarks(self):
        return {lid: self.mean[3 + 2 * i:5 + 2 * i].copy()
                for i, lid in enumerate(self.landmark_ids)}

    def copy(self):
        return SlamState(mean=self.mean.copy(), cov=self.cov.copy(),
                         landmark_ids=tuple(self.landmark_ids),
                         grid=self.grid.copy())


def initial_state(pose, world, pose_cov=None):
    pose = np.asarray(pose, dtype=float)
    cov = np.zeros((3, 3)) if pose_cov is None else np.asarray(pose_cov, float)
    return SlamState(mean=pose.copy(), cov=cov.copy(), landmark_ids=(),
                     grid=world.make_grid())


@dataclass(frozen=True)
class CorrectionResult:
    """Outcome of one Kalman correction."""

    state: SlamState
    gain: np.ndarray
    innovation: np.ndarray
    moved_ids: tuple
    skipped: bool = False
    reason: str = ""


@dataclass(frozen=True)
class MapUpdateResult:
    state: SlamState
    added_ids: tuple


def unicycle(pose, u):
    """First-order unicycle step; heading wrapped to (-pi, pi]."""
    x, y, heading = pose
    x += u.velocity * np.cos(heading) * u.dt
    y += u.velocity * np.sin(heading) * u.dt
    heading = wrap_pi(heading + u.angular_velocity * u.dt)
    return np.array([x, y, heading])


def predict(state, u, noise=None):
    """Propagate the pose block through the motion model.

    Covariance is pushed through the motion Jacobian and inflated by the
    process noise; landmark blocks are untouched except through their
    cross-covariance with the pose.
    """
    new = state.copy()
    heading = state.mean[2]
    new.mean[:3] = unicycle(state.mean[:3], u)
    F = np.array([
        [1.0, 0.0, -u.velocity * np.sin(heading) * u.dt],
        [0.0, 1.0, u.velocity * np.cos(heading) * u.dt],
        [0.0, 0.0, 1.0],
    ])
    P = new.cov
    P[:3, :3] = F @ P[:3, :3] @ F.T
    if P.shape[0] > 3:
        P[:3, 3:] = F @ P[:3, 3:]
        P[3:, :3] = P[:3, 3:].T
    if noise is not None:
        P[:3, :3] += noise.matrix(u.dt)
    new.cov = 0.5 * (P + P.T)
    return new


def _ray_distance(origin, angle, segments, max_range):
    """Nearest obstacle-segment intersection along one ray."""
    d = np.array([np.cos(angle), np.sin(angle)])
    best = max_range
    hit = False
    for p, q in segments:
        e = q - p
        denom = d[0] * e[1] - d[1] * e[0]
        if abs(denom) < 1e-15:
            continue
        rel = p - origin
        t = (rel[0] * e[1] - rel[1] * e[0]) / denom
        s = (rel[0] * d[1] - rel[1] * d[0]) / denom
        if t >= 0.0 and 0.0 <= s <= 1.0 and t < best:
            best = t
            hit = True
    return best, hit


def observe(state, world, sensor, rng):
    """Simulate one sensor frame from the given pose (or SlamState).

    Landmarks beyond max_range or outside the field of view are omitted;
    visible ones get seeded Gaussian range/bearing noise.  The ray set is
    cast against the obstacle polygons at fixed angular resolution, with
    the same range noise applied to hits.
    """
    pose = state.pose if isinstance(state, SlamState) else np.asarray(state, float)
    x, y, heading = pose
    measurements = []
    for lid in sorted(world.landmarks):
        delta = np.asarray(world.landmarks[lid], dtype=float) - pose[:2]
        dist = float(np.hypot(delta[0], delta[1]))
        bearing = wrap_pi(np.arctan2(delta[1], delta[0]) - heading)
        if dist > sensor.max_range or abs(bearing) > sensor.fov / 2.0:
            continue
        dist = max(dist + sensor.range_sigma * rng.standard_normal(), 0.0)
        bearing = wrap_pi(bearing + sensor.bearing_sigma * rng.standard_normal())
        measurements.append((lid, dist, bearing))

    rays = []
    if sensor.n_rays:
        segments = world.segments()
        angles = heading + np.linspace(-sensor.fov / 2.0, sensor.fov / 2.0,
                                       sensor.n_rays, endpoint=False)
        for angle in angles:
            dist, hit = _ray_distance(pose[:2], angle, segments,
                                      sensor.max_range)
            if hit and sensor.range_sigma:
                dist = float(np.clip(dist + sensor.range_sigma
                                     * rng.standard_normal(),
                                     0.0, sensor.max_range))
            rays.append(Ray(angle=float(wrap_pi(angle)), distance=float(dist),
                            hit=hit))
    return Observation(measurements=tuple(measurements), rays=tuple(rays),
                       range_sigma=sensor.range_sigma,
                       bearing_sigma=sensor.bearing_sigma)


def _measurement_jacobian(mean, indices, ids):
    """Stacked range-bearing Jacobian rows for the listed landmarks."""
    n = len(mean)
    H = np.zeros((2 * len(ids), n))
    predicted = np.zeros(2 * len(ids))
    x, y, heading = mean[:3]
    for row, lid in enumerate(ids):
        j = indices[lid]
        lx, ly = mean[3 + 2 * j], mean[4 + 2 * j]
        dx, dy = lx - x, ly - y
        q = dx * dx + dy * dy
        sq = np.sqrt(q)
        predicted[2 * row] = sq
        predicted[2 * row + 1] = wrap_pi(np.arctan2(dy, dx) - heading)
        H[2 * row, 0] = -dx / sq
        H[2 * row, 1] = -dy / sq
        H[2 * row, 3 + 2 * j] = dx / sq
        H[2 * row, 4 + 2 * j] = dy / sq
        H[2 * row + 1, 0] = dy / q
        H[2 * row + 1, 1] = -dx / q
        H[2 * row + 1, 2] = -1.0
        H[2 * row + 1, 3 + 2 * j] = -dy / q
        H[2 * row + 1, 4 + 2 * j] = dx / q
    return H, predicted


def correct(state, z):
    """Extended Kalman correction with known data association.

    Measurements whose landmark id is not in the map are ignored here
    (update_map initializes them).  The update is batched over all known
    landmarks; the covariance update uses the Joseph form, which
    preserves symmetry and positive semi-definiteness.  A numerically
    singular innovation covariance skips the whole measurement batch and
    returns the state unchanged.
    """
    indices = {lid: i for i, lid in enumerate(state.landmark_ids)}
    known = [(lid, r, b) for lid, r, b in z.measurements if lid in indices]
    if not known:
        return CorrectionResult(state=state.copy(), gain=np.zeros((len(state.mean), 0)),
                                innovation=np.zeros(0), moved_ids=())
    ids = [lid for lid, _, _ in known]
    H, predicted = _measurement_jacobian(state.mean, indices, ids)
    observed = np.array([[r, b] for _, r, b in known]).ravel()
    innovation = observed - predicted
    innovation[1::2] = wrap_pi(innovation[1::2])

    r_var = max(z.range_sigma ** 2, MEASUREMENT_VARIANCE_FLOOR)
    b_var = max(z.bearing_sigma ** 2, MEASUREMENT_VARIANCE_FLOOR)
    R = np.diag([r_var, b_var] * len(ids))
    P = state.cov
    S = H @ P @ H.T + R
    condition = np.linalg.cond(S)
    if not np.isfinite(condition) or condition > 1e12:
        return CorrectionResult(state=state.copy(),
                                gain=np.zeros((len(state.mean), 0)),
                                innovation=innovation, moved_ids=(),
                                skipped=True,
                                reason="innovation covariance singular")
    K = P @ H.T @ np.linalg.inv(S)
    new = state.copy()
    new.mean = state.mean + K @ innovation
    new.mean[2] = wrap_pi(new.mean[2])
    IKH = np.eye(len(state.mean)) - K @ H
    P = IKH @ state.cov @ IKH.T + K @ R @ K.T
    new.cov = 0.5 * (P + P.T)
    return CorrectionResult(state=new, gain=K, innovation=innovation,
                            moved_ids=tuple(ids))


def _bresenham(start, end):
    """Integer cells from start to end inclusive (8-connected line)."""
    (r0, c0), (r1, c1) = start, end
    cells = []
    dr, dc = abs(r1 - r0), abs(c1 - c0)
    sr = 1 if r1 >= r0 else -1
    sc = 1 if c1 >= c0 else -1
    err = dc - dr
    r, c = r0, c0
    while True:
        cells.append((r, c))
        if (r, c) == (r1, c1):
            return cells
        e2 = 2 * err
        if e2 > -dr:
            err -= dr
            c += sc
        if e2 < dc:
            err += dc
            r += sr


def update_map(state, z):
    """Initialize unknown landmarks and stamp the grid along each ray.

    New landmarks enter the state by inverse observation from the current
    pose estimate, with a covariance block propagated from the pose
    uncertainty and the measurement noise.  Grid cells crossed by a ray
    get the free log-odds decrement; the hit cell gets the occupied
    increment.
    """
    new = state.copy()
    added = []
    r_var = max(z.range_sigma ** 2, MEASUREMENT_VARIANCE_FLOOR)
    b_var = max(z.bearing_sigma ** 2, MEASUREMENT_VARIANCE_FLOOR)
    for lid, dist, bearing in z.measurements:
        if lid in new.landmark_ids:
            continue
        x, y, heading = new.mean[:3]
        direction = heading + bearing
        position = np.array([x + dist * np.cos(direction),
                             y + dist * np.sin(direction)])
        G_pose = np.array([
            [1.0, 0.0, -dist * np.sin(direction)],
            [0.0, 1.0, dist * np.cos(direction)],
        ])
        G_meas = np.array([
            [np.cos(direction), -dist * np.sin(direction)],
            [np.sin(direction), dist * np.cos(direction)],
        ])
        n = len(new.mean)
        P = new.cov
        grown = np.zeros((n + 2, n + 2))
        grown[:n, :n] = P
        cross = G_pose @ P[:3, :]
        grown[n:, :n] = cross
        grown[:n, n:] = cross.T
        grown[n:, n:] = (G_pose @ P[:3, :3] @ G_pose.T
                         + G_meas @ np.diag([r_var, b_var]) @ G_meas.T)
        new.mean = np.concatenate([new.mean, position])
        new.cov = 0.5 * (grown + grown.T)
        new.landmark_ids = tuple(new.landmark_ids) + (lid,)
        added.append(lid)

    if z.rays:
        grid = new.grid
        origin_cell = grid.cell_of(new.mean[:2])
        x, y = new.mean[:2]
        # push the hit a quarter cell along the ray so surfaces lying
        # exactly on cell boundaries register on their own side of the
        # boundary instead of in the free cell in front of them
        nudge = 0.25 * grid.resolution
        for ray in z.rays:
            reach = ray.distance + (nudge if ray.hit else 0.0)
            end = np.array([x + reach * np.cos(ray.angle),
                            y + reach * np.sin(ray.angle)])
            cells = _bresenham(origin_cell, grid.cell_of(end))
            body = cells[:-1] if ray.hit else cells
            for cell in body:
                grid.stamp(cell, LOG_ODDS_FREE)
            if ray.hit:
                grid.stamp(cells[-1], LOG_ODDS_OCCUPIED)
    return MapUpdateResult(state=new, added_ids=tuple(added))


_DIAG = np.sqrt(2.0)
_MOVES = ((-1, 0, 1.0), (1, 0, 1.0), (0, -1, 1.0), (0, 1, 1.0),
          (-1, -1, _DIAG), (-1, 1, _DIAG), (1, -1, _DIAG), (1, 1, _DIAG))


def plan_path(grid, start, goal, occupied_threshold=0.5):
    """8-connected A* on the occupancy grid.

    Cells with occupancy probability above the threshold are blocked.
    Straight moves cost 1, diagonal moves sqrt(2); the heuristic is the
    octile distance, which is admissible for those costs, so the returned
    path cost is optimal among grid paths.  Raises NoPathError when the
    goal is unreachable.
    """
    start, goal = tuple(start), tuple(goal)
    if not (grid.contains(start) and grid.contains(goal)):
        raise ValueError("start and goal must lie inside the grid")
    blocked = grid.probabilities() > occupied_threshold
    if blocked[start] or blocked[goal]:
        raise NoPathError("start or goal cell is occupied")

    def heuristic(cell):
        dr = abs(cell[0] - goal[0])
        dc = abs(cell[1] - goal[1])
        return (dr + dc) + (_DIAG - 2.0) * min(dr, dc)

    frontier = [(heuristic(start), 0, start)]
    best_cost = {start: 0.0}
    came_from = {}
    counter = 1
    while frontier:
        _, _, cell = heapq.heappop(frontier)
        if cell == goal:
            path = [cell]
            while path[-1] != start:
                path.append(came_from[path[-1]])
            path.reverse()
            return path
        base = best_cost[cell]
        for dr, dc, move_cost in _MOVES:
            nxt = (cell[0] + dr, cell[1] + dc)
            if not grid.contains(nxt) or blocked[nxt]:
                continue
            cost = base + move_cost
            if cost < best_cost.get(nxt, np.inf) - 1e-12:
                best_cost[nxt] = cost
                came_from[nxt] = cell
                heapq.heappush(frontier, (cost + heuristic(nxt), counter, nxt))
                counter += 1
    raise NoPathError("goal is unreachable")


def path_cost(path):
    """Total step cost of a cell path under the planner's move costs."""
    total = 0.0
    for a, b in zip(path, path[1:]):
        total += 1.0 if abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 else _DIAG
    return total


@dataclass
class StepLog:
    step: int
    truth: np.ndarray
    dead_reckoning: np.ndarray
    slam: np.ndarray
    cov_trace: float
    min_cov_eigenvalue: float
    n_measurements: int
    events: tuple = ()


@dataclass
class RunLog:
    steps: list
    final_state: SlamState
    seed: int

    def final_errors(self):
        last = self.steps[-1]
        slam_err = float(np.hypot(*(last.slam[:2] - last.truth[:2])))
        dr_err = float(np.hypot(*(last.dead_reckoning[:2] - last.truth[:2])))
        return slam_err, dr_err


def simulate(world, script, sensor, odometry=None, process=None, seed=0,
             start_pose=(0.0, 0.0, 0.0)):
    """Run the full predict/observe/correct/update loop over a script.

    Ground truth integrates the commanded motion exactly; odometry (and
    hence dead reckoning and the filter prediction) sees the commands
    corrupted by the odometry noise.  Component failures (skipped
    corrections) are logged as events, never raised.  Deterministic for a
    given seed.
    """
    rng = np.random.default_rng(seed)
    odometry = odometry or OdometryNoise()
    truth = np.asarray(start_pose, dtype=float).copy()
    dead_reckoning = truth.copy()
    state = initial_state(truth, world)
    steps = []
    for i, u in enumerate(script):
        truth = unicycle(truth, u)
        u_measured = MotionInput(
            velocity=u.velocity + odometry.velocity_sigma * rng.standard_normal(),
            angular_velocity=(u.angular_velocity
                              + odometry.angular_sigma * rng.standard_normal()),
            dt=u.dt)
        dead_reckoning = unicycle(dead_reckoning, u_measured)
        state = predict(state, u_measured, process)
        z = observe(truth, world, sensor, rng)
        result = correct(state, z)
        events = ("correction-skipped: " + result.reason,) if result.skipped else ()
        state = update_map(result.state, z).state
        eigenvalues = np.linalg.eigvalsh(state.cov) if state.cov.size else np.zeros(1)
        steps.append(StepLog(step=i, truth=truth.copy(),
                             dead_reckoning=dead_reckoning.copy(),
                             slam=state.pose,
                             cov_trace=float(np.trace(state.cov)),
                             min_cov_eigenvalue=float(eigenvalues.min()),
                             n_measurements=len(z.measurements),
                             events=events))
    return RunLog(steps=steps, final_state=state, seed=seed)


# ---------------------------------------------------------------------------
# World I/O and file outputs


_WORLD_KEYS = {"landmarks", "obstacles", "grid"}
_GRID_KEYS = {"resolution", "origin", "width", "height"}


def world_from_dict(data):
    if not isinstance(data, dict):
        raise WorldFormatError("world document must be a JSON object")
    unknown = set(data) - _WORLD_KEYS
    if unknown:
        raise WorldFormatError(f"unknown world keys: {sorted(unknown)}")
    try:
        landmarks = {int(item["id"]): np.array([float(item["x"]),
                                                float(item["y"])])
                     for item in data.get("landmarks", [])}
        obstacles = tuple(np.asarray(poly, dtype=float)
                          for poly in data.get("obstacles", []))
        grid = data["grid"]
    except (KeyError, TypeError, ValueError) as err:
        raise WorldFormatError(f"malformed world document: {err}") from None
    unknown = set(grid) - _GRID_KEYS
    if unknown:
        raise WorldFormatError(f"unknown grid keys: {sorted(unknown)}")
    for poly in obstacles:
        if poly.ndim != 2 or poly.shape[1] != 2 or len(poly) < 3:
            raise WorldFormatError("obstacles must be polygons of >= 3 points")
    return World(landmarks=landmarks, obstacles=obstacles,
                 grid_resolution=float(grid["resolution"]),
                 grid_origin=np.asarray(grid["origin"], dtype=float),
                 grid_width=int(grid["width"]),
                 grid_height=int(grid["height"]))


def load_world(path):
    with open(path) as fh:
        return world_from_dict(json.load(fh))


def world_to_dict(world):
    return {
        "landmarks": [{"id": int(lid), "x": float(p[0]), "y": float(p[1])}
                      for lid, p in sorted(world.landmarks.items())],
        "obstacles": [np.asarray(poly).tolist() for poly in world.obstacles],
        "grid": {"resolution": world.grid_resolution,
                 "origin": list(map(float, world.grid_origin)),
                 "width": world.grid_width, "height": world.grid_height},
    }


def write_run_log(log, path, header_comment=None):
    """CSV: step, truth pose, dead-reckoning pose, SLAM pose, trace(cov)."""
    with open(path, "w") as fh:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write("step,truth_x,truth_y,truth_heading,"
                 "dr_x,dr_y,dr_heading,slam_x,slam_y,slam_heading,"
                 "cov_trace,n_measurements,events\n")
        for s in log.steps:
            row = [s.step,
                   *(f"{v:.9g}" for v in s.truth),
                   *(f"{v:.9g}" for v in s.dead_reckoning),
                   *(f"{v:.9g}" for v in s.slam),
                   f"{s.cov_trace:.9g}", s.n_measurements,
                   ";".join(s.events)]
            fh.write(",".join(str(v) for v in row) + "\n")


def write_grid_pgm(grid, path, comment=None):
    """Plain-text PGM snapshot: white free, black occupied, top row first."""
    probs = grid.probabilities()
    values = np.round((1.0 - probs) * 255.0).astype(int)
    with open(path, "w") as fh:
        fh.write("P2\n")
        if comment:
            fh.write(f"# {comment}\n")
        fh.write(f"{grid.width} {grid.height}\n255\n")
        for row in values[::-1]:
            fh.write(" ".join(str(v) for v in row) + "\n")


def write_path_csv(path_cells, path, header_comment=None):
    with open(path, "w") as fh:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write("row,col\n")
        for r, c in path_cells:
            fh.write(f"{r},{c}\n")


def loop_script(side=2.0, speed=0.25, dt=0.1, turn_rate=None):
    """Square loop trajectory: four straight legs joined by quarter turns."""
    turn_rate = turn_rate if turn_rate is not None else np.pi / 4.0
    straight_steps = int(round(side / (speed * dt)))
    turn_steps = int(round((np.pi / 2.0) / (turn_rate * dt)))
    script = []
    for _ in range(4):
        script.extend(MotionInput(speed, 0.0, dt) for _ in range(straight_steps))
        script.extend(MotionInput(speed * 0.4, turn_rate, dt)
                      for _ in range(turn_steps))
    return script


def desk_world():
    """Small indoor scenario: eight landmarks around a 6 x 6 m area with a
    rectangular obstacle, gridded at 0.1 m."""
    landmarks = {
        1: np.array([-1.0, -1.0]), 2: np.array([3.0, -1.0]),
        3: np.array([3.5, 1.5]), 4: np.array([3.0, 3.5]),
        5: np.array([-0.5, 3.5]), 6: np.array([-1.5, 1.5]),
        7: np.array([1.0, 4.0]), 8: np.array([1.5, -1.5]),
    }
    obstacle = np.array([[0.8, 0.8], [1.6, 0.8], [1.6, 1.6], [0.8, 1.6]])
    return World(landmarks=landmarks, obstacles=(obstacle,),
                 grid_resolution=0.1,
                 grid_origin=np.array([-2.0, -2.0]),
                 grid_width=60, grid_height=60)
