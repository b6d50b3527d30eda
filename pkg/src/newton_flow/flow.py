"""Explicit time integration of the speed-sigma_r normal flow.

Three discretizations, matched to the geometry:

* round spheres (any n): the radius obeys R' = -C(n,r)/R^r, integrated
  as a scalar ODE with the closed form available for cross-checks;
* closed plane curves (n = 1, r = 1): polygon vertices move by the
  chord-based discrete curvature vector;
* surfaces of revolution (n = 2): the radial graph f(z, t) moves by
  df/dt = -sigma_r * sqrt(1 + f_z^2).

Time steps follow dt <= cfl_safety * h^2 / (1 + sup tr P_{r-1}), the
coefficient of the principal part of the linearized speed.  Runs are
deterministic for a fixed configuration.  The homothety monitor uses the
canonical rescaling phi(t) = (1 - (r+1) t)^(1/(r+1)) of catalog initial
data; no uniqueness of that normalization is claimed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from math import comb

import numpy as np

from . import fd
from .catalog import (
    Cylinder,
    EllipsoidRev,
    Hyperplane,
    HypersurfaceModel,
    Revolution,
    Sphere,
)
from .errors import CflViolationError, DomainError, ExtinctionError
from .symfun import elem_sym_all

logger = logging.getLogger(__name__)

EXTINCTION_FRACTION = 1e-3   # stop when min radius falls below this * initial


# ---------------------------------------------------------------------------
# closed forms

def extinction_time(n: int, r: int, radius0: float) -> float:
    """Extinction time R0^(r+1) / ((r+1) C(n,r)) of a round n-sphere."""
    if not 1 <= r <= n:
        raise DomainError(f"r={r} out of range 1..{n}")
    if not radius0 > 0:
        raise DomainError("radius must be positive")
    return radius0 ** (r + 1) / ((r + 1) * comb(n, r))


def sphere_radius_exact(n: int, r: int, radius0: float, t: float) -> float:
    """Exact sphere radius (R0^(r+1) - (r+1) C(n,r) t)^(1/(r+1)).

    Raises ExtinctionError (carrying the extinction time) for t at or
    past extinction.
    """
    if t < 0:
        raise DomainError("time must be nonnegative")
    t_ext = extinction_time(n, r, radius0)
    core = radius0 ** (r + 1) - (r + 1) * comb(n, r) * t
    if core <= 0:
        raise ExtinctionError(t_ext)
    return core ** (1.0 / (r + 1))


def homothety_factor(r: int, t: float) -> float:
    """Canonical rescaling phi(t) = (1 - (r+1) t)^(1/(r+1)), clamped at 0."""
    core = 1.0 - (r + 1) * t
    return core ** (1.0 / (r + 1)) if core > 0 else 0.0


def sphere_band_pin(radius0: float, r: int, half_width: float, n: int = 2):
    """Dirichlet data for a shrinking sphere band: edges follow the law.

    Returns a callable t -> (f_left, f_right) suitable for
    FlowConfig.boundary_values, raising ExtinctionError once the band
    edge reaches the shrinking sphere's equator.
    """
    hw2 = half_width * half_width

    def values(t: float):
        radius = sphere_radius_exact(n, r, radius0, t)
        core = radius * radius - hw2
        if core <= 0:
            raise ExtinctionError(t, reason="band pinch")
        edge = math.sqrt(core)
        return edge, edge

    return values


# ---------------------------------------------------------------------------
# state containers

@dataclass
class SphereGeometry:
    n: int
    radius: float


@dataclass(eq=False)
class CurveGeometry:
    vertices: np.ndarray      # (V, 2), closed polygon, CCW


@dataclass(eq=False)
class RevolutionGeometryState:
    z: np.ndarray
    f: np.ndarray
    boundary: str
    orientation: int

    @property
    def h(self) -> float:
        return float(self.z[1] - self.z[0])


@dataclass(eq=False)
class FlowState:
    t: float
    geometry: object
    step_count: int = 0


@dataclass(frozen=True)
class Diagnostics:
    t: float
    max_shrinker_residual: float
    homothety_defect: float     # nan when rescaled monitoring is off
    min_radius: float
    dt: float
    resampled: bool = False


@dataclass(frozen=True)
class FlowConfig:
    r: int
    model: HypersurfaceModel
    t_end: float
    resolution: int = 128
    cfl_safety: float = 0.25
    rescaled: bool = False
    scheme: str = "euler"        # "euler" | "rk2"
    output_stride: int = 10
    resample_every: int = 0      # curve arclength redistribution (0 = off)
    boundary_values: object = None   # callable t -> (f_left, f_right) for bands

    def __post_init__(self):
        if not self.t_end > 0:
            raise DomainError("t_end must be positive")
        if not 0 < self.cfl_safety <= 1:
            raise DomainError("cfl_safety must lie in (0, 1]")
        if self.scheme not in ("euler", "rk2"):
            raise DomainError(f"unknown scheme {self.scheme!r}")
        if self.output_stride < 1:
            raise DomainError("output_stride must be >= 1")
        n = self.model.n
        if not 1 <= self.r <= n:
            raise DomainError(f"r={self.r} out of range 1..{n}")


@dataclass(eq=False)
class RunResult:
    diagnostics: list
    status: str                  # "completed" | "extinct" | "stationary"
    state: FlowState

    @property
    def final(self) -> Diagnostics:
        return self.diagnostics[-1]


# ---------------------------------------------------------------------------
# polygon curves (n = 1, r = 1)

def circle_polygon(radius: float, vertices: int) -> np.ndarray:
    """Regular CCW polygon inscribed in the circle of the given radius."""
    if vertices < 16:
        raise DomainError("closed curves need >= 16 vertices")
    theta = 2.0 * np.pi * np.arange(vertices) / vertices
    return radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)


def _curve_edges(v: np.ndarray):
    d_next = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    diam = float(np.linalg.norm(v.max(axis=0) - v.min(axis=0)))
    if d_next.min() < 1e-12 * max(diam, 1e-300):
        raise DomainError("degenerate polygon edge")
    return d_next, np.roll(d_next, 1)


def curve_speed(v: np.ndarray) -> np.ndarray:
    """Discrete curvature vector kappa*N from neighboring vertices.

    Exact (1/R, radial) on a regular polygon inscribed in a circle;
    points inward on convex CCW curves.
    """
    d_next, d_prev = _curve_edges(v)
    t_next = (np.roll(v, -1, axis=0) - v) / d_next[:, None]
    t_prev = (v - np.roll(v, 1, axis=0)) / d_prev[:, None]
    return 2.0 * (t_next - t_prev) / (d_prev + d_next)[:, None]


def curve_normals_curvature(v: np.ndarray):
    """Unit inward normals (CCW orientation) and signed curvature."""
    kn = curve_speed(v)
    chord = np.roll(v, -1, axis=0) - np.roll(v, 1, axis=0)
    normal = np.stack([-chord[:, 1], chord[:, 0]], axis=1)
    normal /= np.linalg.norm(normal, axis=1)[:, None]
    kappa = np.sum(kn * normal, axis=1)
    return normal, kappa


def curve_cfl_bound(v: np.ndarray) -> float:
    """Stability envelope dt <= h_min^2 / (1 + sup tr P_0), with tr P_0 = 1."""
    d_next, _ = _curve_edges(v)
    return float(d_next.min() ** 2) / 2.0


def step_curve(state: FlowState, dt: float, scheme: str = "euler") -> FlowState:
    """Advance a closed polygon one explicit step of the curvature flow."""
    v = state.geometry.vertices
    if v.shape[0] < 16:
        raise DomainError("closed curves need >= 16 vertices")
    if dt > curve_cfl_bound(v) * (1.0 + 1e-9):
        raise CflViolationError(f"dt={dt:.3e} above the curve stability bound")
    if scheme == "euler":
        v_new = v + dt * curve_speed(v)
    else:
        half = v + 0.5 * dt * curve_speed(v)
        v_new = v + dt * curve_speed(half)
    return FlowState(t=state.t + dt, geometry=CurveGeometry(vertices=v_new),
                     step_count=state.step_count + 1)


def resample_curve(v: np.ndarray) -> np.ndarray:
    """Redistribute polygon vertices uniformly by arclength."""
    closed = np.vstack([v, v[:1]])
    seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, s[-1], v.shape[0], endpoint=False)
    x = np.interp(targets, s, closed[:, 0])
    y = np.interp(targets, s, closed[:, 1])
    return np.stack([x, y], axis=1)


# ---------------------------------------------------------------------------
# surfaces of revolution (n = 2)

def revolution_speed(geo: RevolutionGeometryState, r: int) -> np.ndarray:
    """df/dt = -o * sigma_r(oriented curvatures) * sqrt(1 + f_z^2)."""
    fp = fd.deriv1(geo.f, geo.h, geo.boundary)
    fpp = fd.deriv2(geo.f, geo.h, geo.boundary)
    w = np.sqrt(1.0 + fp * fp)
    o = float(geo.orientation)
    k_mer = o * (-fpp) / w ** 3
    k_par = o / (geo.f * w)
    if r == 1:
        sigma = k_mer + k_par
    elif r == 2:
        sigma = k_mer * k_par
    else:
        raise DomainError("revolution flow supports r in {1, 2}")
    return -o * sigma * w


def revolution_cfl_bound(geo: RevolutionGeometryState, r: int) -> float:
    """dt <= h^2 / (1 + sup_j sum |sigma_{r-1}(A_j)|)."""
    if r == 1:
        coeff = 2.0   # tr P_0 = n = 2, state independent
    else:
        fp = fd.deriv1(geo.f, geo.h, geo.boundary)
        fpp = fd.deriv2(geo.f, geo.h, geo.boundary)
        w = np.sqrt(1.0 + fp * fp)
        k_mer = np.abs(fpp) / w ** 3
        k_par = 1.0 / (geo.f * w)
        coeff = float((k_mer + k_par).max())
    return geo.h ** 2 / (1.0 + coeff)


def step_revolution(state: FlowState, r: int, dt: float,
                    scheme: str = "euler", boundary_values=None) -> FlowState:
    """Advance the radial graph one explicit step; detects pinching.

    Without boundary_values the end nodes evolve by the extrapolating
    stencils (the band then follows the closure's own boundary data, not
    any particular continuation).  With boundary_values(t) -> (left,
    right) the end nodes are pinned, giving a clean Dirichlet problem.
    """
    geo = state.geometry
    if dt > revolution_cfl_bound(geo, r) * (1.0 + 1e-9):
        raise CflViolationError(f"dt={dt:.3e} above the revolution stability bound")

    def pin(values, t):
        if boundary_values is not None:
            left, right = boundary_values(t)
            values[0] = left
            values[-1] = right
        return values

    if scheme == "euler":
        f_new = pin(geo.f + dt * revolution_speed(geo, r), state.t + dt)
    else:
        f_mid = pin(geo.f + 0.5 * dt * revolution_speed(geo, r),
                    state.t + 0.5 * dt)
        mid = replace_f(geo, f_mid)
        f_new = pin(geo.f + dt * revolution_speed(mid, r), state.t + dt)
    if f_new.min() <= 0.0:
        raise ExtinctionError(state.t + dt, reason="pinch")
    return FlowState(
        t=state.t + dt,
        geometry=replace_f(geo, f_new),
        step_count=state.step_count + 1,
    )


def replace_f(geo: RevolutionGeometryState, f_new: np.ndarray) -> RevolutionGeometryState:
    return RevolutionGeometryState(z=geo.z, f=f_new, boundary=geo.boundary,
                                   orientation=geo.orientation)


# ---------------------------------------------------------------------------
# diagnostics

def _residual_phi(config, t: float) -> float:
    """Rescaling applied to the shrinker residual.

    With rescaled monitoring on, the residual is measured on the
    rescaled surface X/phi(t) (curvatures scale by phi, support by
    1/phi): the residual of a homothetically shrinking solution then
    stays small, while the plain residual of the same solution grows
    like phi^-(r+1).
    """
    if not config.rescaled:
        return 1.0
    phi = homothety_factor(config.r, t)
    return phi if phi > 0 else 1.0


def _sphere_diagnostics(state, config, dt, radius0):
    n, r = state.geometry.n, config.r
    radius = state.geometry.radius
    phi = _residual_phi(config, state.t)
    residual = abs(phi ** r * comb(n, r) / radius ** r - radius / phi)
    defect = math.nan
    if config.rescaled:
        defect = abs(radius - homothety_factor(r, state.t) * radius0)
    return Diagnostics(t=state.t, max_shrinker_residual=residual,
                       homothety_defect=defect, min_radius=radius, dt=dt)


def _curve_diagnostics(state, config, dt, v0, resampled=False):
    v = state.geometry.vertices
    normal, kappa = curve_normals_curvature(v)
    support = np.sum(v * normal, axis=1)
    phi = _residual_phi(config, state.t)
    residual = float(np.abs(phi * kappa + support / phi).max())
    defect = math.nan
    if config.rescaled:
        phi_h = homothety_factor(config.r, state.t)
        defect = float(np.linalg.norm(v - phi_h * v0, axis=1).max())
    return Diagnostics(t=state.t, max_shrinker_residual=residual,
                       homothety_defect=defect,
                       min_radius=float(np.linalg.norm(v, axis=1).min()),
                       dt=dt, resampled=resampled)


def _revolution_diagnostics(state, config, dt, f0, z0):
    geo = state.geometry
    fp = fd.deriv1(geo.f, geo.h, geo.boundary)
    fpp = fd.deriv2(geo.f, geo.h, geo.boundary)
    w = np.sqrt(1.0 + fp * fp)
    o = float(geo.orientation)
    k_mer = o * (-fpp) / w ** 3
    k_par = o / (geo.f * w)
    sigma = k_mer + k_par if config.r == 1 else k_mer * k_par
    support = o * (geo.z * fp - geo.f) / w
    phi = _residual_phi(config, state.t)
    residual = float(np.abs(phi ** config.r * sigma + support / phi).max())
    defect = math.nan
    if config.rescaled:
        phi_h = homothety_factor(config.r, state.t)
        if phi_h > 0:
            inside = np.abs(geo.z / phi_h) <= z0.max()
            ref = phi_h * np.interp(geo.z[inside] / phi_h, z0, f0)
            defect = float(np.abs(geo.f[inside] - ref).max()) if inside.any() else math.nan
        else:
            defect = float(np.abs(geo.f).max())
    return Diagnostics(t=state.t, max_shrinker_residual=residual,
                       homothety_defect=defect,
                       min_radius=float(geo.f.min()), dt=dt)


# ---------------------------------------------------------------------------
# the driver

def _initial_state(config: FlowConfig) -> FlowState:
    model = config.model
    if isinstance(model, Hyperplane):
        return FlowState(t=0.0, geometry=model)
    if isinstance(model, Sphere):
        if model.n == 1:
            verts = circle_polygon(model.radius, config.resolution)
            return FlowState(t=0.0, geometry=CurveGeometry(vertices=verts))
        return FlowState(t=0.0, geometry=SphereGeometry(n=model.n, radius=model.radius))
    if isinstance(model, Cylinder):
        # spherical factor shrinks by the same scalar law; flat part inert
        return FlowState(t=0.0, geometry=SphereGeometry(n=model.m, radius=model.radius))
    if isinstance(model, EllipsoidRev):
        model = model.as_revolution(config.resolution)
    if isinstance(model, Revolution):
        p = model.profile
        return FlowState(t=0.0, geometry=RevolutionGeometryState(
            z=p.z.copy(), f=p.f.copy(), boundary=p.boundary,
            orientation=model.orientation))
    raise DomainError(f"cannot evolve {type(model).__name__}")


def _sphere_cfl_bound(geom: SphereGeometry, r: int, resolution: int) -> float:
    k = np.full(geom.n, 1.0 / geom.radius)
    sig = elem_sym_all(k)
    trace_p = (geom.n - r + 1) * sig[r - 1] if r - 1 <= geom.n else 0.0
    h = 2.0 * np.pi * geom.radius / resolution
    return h * h / (1.0 + trace_p)


def _step_sphere(state: FlowState, config: FlowConfig, dt: float, model_r: int) -> FlowState:
    geom = state.geometry
    n, r = geom.n, model_r

    def rate(radius):
        return -comb(n, r) / radius ** r

    radius = geom.radius
    if config.scheme == "euler":
        new_radius = radius + dt * rate(radius)
    else:
        half = radius + 0.5 * dt * rate(radius)
        if half <= 0:
            raise ExtinctionError(state.t + dt)
        new_radius = radius + dt * rate(half)
    if new_radius <= 0:
        raise ExtinctionError(state.t + dt)
    return FlowState(t=state.t + dt, geometry=SphereGeometry(n=n, radius=new_radius),
                     step_count=state.step_count + 1)


def run(config: FlowConfig) -> RunResult:
    """Adaptive explicit time loop until t_end or extinction.

    Diagnostics are emitted at t = 0, every output_stride steps, and at
    the final accepted state.  Deterministic for a fixed configuration.
    """
    state = _initial_state(config)
    diagnostics: list = []

    if isinstance(state.geometry, Hyperplane):
        # sigma_r = 0: stationary; report start and end
        diag0 = Diagnostics(t=0.0, max_shrinker_residual=0.0,
                            homothety_defect=0.0 if config.rescaled else math.nan,
                            min_radius=0.0, dt=config.t_end)
        diagnostics.append(diag0)
        state = FlowState(t=config.t_end, geometry=state.geometry, step_count=1)
        diagnostics.append(replace(diag0, t=config.t_end))
        return RunResult(diagnostics=diagnostics, status="stationary", state=state)

    geom = state.geometry
    if isinstance(geom, SphereGeometry):
        radius0 = geom.radius

        def make_diag(s, dt, resampled=False):
            return _sphere_diagnostics(s, config, dt, radius0)

        def cfl(s):
            return _sphere_cfl_bound(s.geometry, config.r, config.resolution)

        def advance(s, dt):
            return _step_sphere(s, config, dt, config.r)

        def min_radius(s):
            return s.geometry.radius
    elif isinstance(geom, CurveGeometry):
        if config.r != 1:
            raise DomainError("plane curves support r = 1 only")
        v0 = geom.vertices.copy()

        def make_diag(s, dt, resampled=False):
            return _curve_diagnostics(s, config, dt, v0, resampled)

        def cfl(s):
            return curve_cfl_bound(s.geometry.vertices)

        def advance(s, dt):
            return step_curve(s, dt, config.scheme)

        def min_radius(s):
            return float(np.linalg.norm(s.geometry.vertices, axis=1).min())
    else:
        f0, z0 = geom.f.copy(), geom.z.copy()

        def make_diag(s, dt, resampled=False):
            return _revolution_diagnostics(s, config, dt, f0, z0)

        def cfl(s):
            return revolution_cfl_bound(s.geometry, config.r)

        def advance(s, dt):
            return step_revolution(s, config.r, dt, config.scheme,
                                   config.boundary_values)

        def min_radius(s):
            return float(s.geometry.f.min())

    initial_radius = min_radius(state)
    diagnostics.append(make_diag(state, 0.0))
    status = "completed"
    resampled_last = False
    last_dt = 0.0
    while state.t < config.t_end * (1.0 - 1e-14):
        dt = min(config.cfl_safety * cfl(state), config.t_end - state.t)
        try:
            state = advance(state, dt)
        except ExtinctionError as exc:
            logger.info("flow stopped: %s", exc)
            status = "extinct"
            break
        last_dt = dt
        resampled_last = False
        if (isinstance(state.geometry, CurveGeometry) and config.resample_every
                and state.step_count % config.resample_every == 0):
            state = FlowState(
                t=state.t,
                geometry=CurveGeometry(resample_curve(state.geometry.vertices)),
                step_count=state.step_count)
            resampled_last = True
        if min_radius(state) < EXTINCTION_FRACTION * initial_radius:
            status = "extinct"
            diagnostics.append(make_diag(state, dt, resampled_last))
            break
        if state.step_count % config.output_stride == 0:
            diagnostics.append(make_diag(state, dt, resampled_last))
    if diagnostics[-1].t < state.t:
        diagnostics.append(make_diag(state, last_dt, resampled_last))
    return RunResult(diagnostics=diagnostics, status=status, state=state)
