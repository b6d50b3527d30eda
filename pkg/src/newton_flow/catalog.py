"""Model hypersurfaces with pointwise curvature data.

Exact variants (hyperplane, round sphere, spherical cylinder) carry
closed-form curvatures and support values.  Surfaces of revolution are
discretized as radial graphs rho = f(z) over a uniform axial grid, with
curvatures from second-order difference stencils.

Orientation convention: the normal points inward on closed model
hypersurfaces, so spheres and cylinders have positive principal
curvatures and support value -R.  For revolution graphs, orientation +1
reproduces that convention on a constant profile (k_parallel = +1/R,
support = -R).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Union

import numpy as np

from . import fd
from .errors import DomainError
from .symfun import elem_sym

ON_MODEL_TOL = 1e-9    # absolute tolerance for "point lies on the model"


# ---------------------------------------------------------------------------
# model types

@dataclass(frozen=True)
class Hyperplane:
    """Flat hyperplane through the origin; normal fixed to +e_{n+1}."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("dimension n must be >= 1")


@dataclass(frozen=True)
class Sphere:
    """Round n-sphere of the given radius, centered at the origin."""

    n: int
    radius: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("dimension n must be >= 1")
        if not self.radius > 0:
            raise DomainError("radius must be positive")


@dataclass(frozen=True)
class Cylinder:
    """Product of an m-sphere of the given radius with a flat factor.

    Lives in R^{n+1}: sphere coordinates first (m+1 of them), then the
    n-m flat axial coordinates.  Sampling covers the axial box
    [-axial_extent, axial_extent]; all curvature data is constant in the
    axial directions, so any extent is representative.
    """

    n: int
    m: int
    radius: float
    axial_extent: float | None = None

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.m <= self.n - 1:
            raise DomainError("cylinder needs 1 <= m <= n-1")
        if not self.radius > 0:
            raise DomainError("radius must be positive")

    @property
    def extent(self) -> float:
        return 2.0 * self.radius if self.axial_extent is None else self.axial_extent


@dataclass(frozen=True, eq=False)
class ProfileCurve:
    """Radial graph rho = f(z) on a uniform axial grid."""

    z: np.ndarray
    f: np.ndarray
    boundary: str = "neumann"

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        f = np.asarray(self.f, dtype=float)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "f", f)
        if z.ndim != 1 or z.size < 5 or z.shape != f.shape:
            raise DomainError("profile needs >= 5 matching z/f samples")
        dz = np.diff(z)
        if dz.min() <= 0 or np.abs(dz - dz[0]).max() > 1e-12 * abs(dz[0]):
            raise DomainError("profile grid must be uniform and increasing")
        if f.min() <= 0:
            raise DomainError("profile radii must be positive")
        if self.boundary not in fd.BOUNDARY_MODES:
            raise DomainError(f"unknown boundary mode {self.boundary!r}")

    @property
    def h(self) -> float:
        return float(self.z[1] - self.z[0])

    @property
    def size(self) -> int:
        return int(self.z.size)


@dataclass(frozen=True, eq=False)
class Revolution:
    """Surface of revolution in R^3 built from a profile curve."""

    profile: ProfileCurve
    orientation: int = 1
    n: int = field(default=2, init=False)

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise DomainError("orientation must be +1 or -1")


@dataclass(frozen=True)
class EllipsoidRev:
    """Band of an ellipsoid of revolution (equatorial radius a, polar b).

    The profile f(z) = a*sqrt(1 - (z/b)^2) is restricted to |z| <= band*b
    so the polar coordinate singularity stays outside the grid.
    """

    a: float
    b: float
    band: float = 0.75
    resolution: int = 129
    n: int = field(default=2, init=False)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError("semi-axes must be positive")
        if not 0 < self.band < 1:
            raise DomainError("band fraction must lie in (0, 1)")
        if self.resolution < 5:
            raise DomainError("resolution must be >= 5")

    def profile_curve(self, resolution: int | None = None) -> ProfileCurve:
        m = self.resolution if resolution is None else int(resolution)
        z = np.linspace(-self.band * self.b, self.band * self.b, m)
        f = self.a * np.sqrt(1.0 - (z / self.b) ** 2)
        return ProfileCurve(z=z, f=f, boundary="neumann")

    def as_revolution(self, resolution: int | None = None) -> Revolution:
        return Revolution(profile=self.profile_curve(resolution))


HypersurfaceModel = Union[Hyperplane, Sphere, Cylinder, Revolution, EllipsoidRev]


# ---------------------------------------------------------------------------
# closed forms

def shrinker_radius(m: int, r: int) -> float:
    """Radius C(m,r)^(1/(r+1)) at which the model satisfies sigma_r = -<X,N>."""
    if not 1 <= r <= m:
        raise DomainError(
            f"no shrinking radius for r={r} > m={m}: sigma_r vanishes there"
        )
    return comb(m, r) ** (1.0 / (r + 1))


def sigma_p_cylinder(m: int, r: int, p: int) -> float:
    """Closed-form sigma_p on the shrinking cylinder with spherical rank m."""
    if not 1 <= r <= m:
        raise DomainError(f"cylinder closed form needs 1 <= r <= m, got r={r}")
    if p < 0:
        raise DomainError("p must be nonnegative")
    if p > m:
        return 0.0
    return comb(m, p) * comb(m, r) ** (-p / (r + 1))


# ---------------------------------------------------------------------------
# revolution geometry

@dataclass(frozen=True, eq=False)
class RevolutionGeometry:
    """Nodewise differential data of a revolution surface."""

    z: np.ndarray
    f: np.ndarray
    h: float
    boundary: str
    orientation: int
    fp: np.ndarray        # f'
    fpp: np.ndarray       # f''
    w: np.ndarray         # sqrt(1 + f'^2), arclength factor
    k_mer: np.ndarray     # meridional principal curvature
    k_par: np.ndarray     # parallel principal curvature
    support: np.ndarray   # <X, N>

    @property
    def size(self) -> int:
        return int(self.z.size)

    def positions(self) -> np.ndarray:
        """Node positions in the phi = 0 meridian plane, (M, 3)."""
        zero = np.zeros_like(self.z)
        return np.stack([self.f, zero, self.z], axis=1)

    def interior(self, width: int = 2) -> slice:
        return fd.trim_slice(self.boundary, width)


def revolution_geometry(rev: Revolution) -> RevolutionGeometry:
    """Differentiate the profile and assemble curvatures and support."""
    p = rev.profile
    fp = fd.deriv1(p.f, p.h, p.boundary)
    fpp = fd.deriv2(p.f, p.h, p.boundary)
    w = np.sqrt(1.0 + fp * fp)
    o = float(rev.orientation)
    k_mer = o * (-fpp) / w ** 3
    k_par = o / (p.f * w)
    support = o * (p.z * fp - p.f) / w
    return RevolutionGeometry(
        z=p.z, f=p.f, h=p.h, boundary=p.boundary, orientation=rev.orientation,
        fp=fp, fpp=fpp, w=w, k_mer=k_mer, k_par=k_par, support=support,
    )


def sphere_band_profile(radius: float, half_width: float, samples: int,
                        boundary: str = "neumann") -> ProfileCurve:
    """Profile of the band |z| <= half_width of a round 2-sphere."""
    if not 0 < half_width < radius:
        raise DomainError("need 0 < half_width < radius")
    z = np.linspace(-half_width, half_width, samples)
    return ProfileCurve(z=z, f=np.sqrt(radius ** 2 - z ** 2), boundary=boundary)


def cylinder_profile(radius: float, half_width: float, samples: int,
                     boundary: str = "neumann") -> ProfileCurve:
    """Constant profile: the tube of the given radius."""
    if not (radius > 0 and half_width > 0):
        raise DomainError("radius and half_width must be positive")
    z = np.linspace(-half_width, half_width, samples)
    return ProfileCurve(z=z, f=np.full_like(z, radius), boundary=boundary)


# ---------------------------------------------------------------------------
# pointwise queries

def dimension(model: HypersurfaceModel) -> int:
    return model.n


def exact_curvatures(model) -> np.ndarray:
    """Curvature vector of a position-independent model."""
    if isinstance(model, Hyperplane):
        return np.zeros(model.n)
    if isinstance(model, Sphere):
        return np.full(model.n, 1.0 / model.radius)
    if isinstance(model, Cylinder):
        k = np.zeros(model.n)
        k[:model.m] = 1.0 / model.radius
        return k
    raise DomainError(f"{type(model).__name__} has no constant curvature data")


def exact_support(model) -> float:
    """Support value <X,N> of a position-independent model."""
    if isinstance(model, Hyperplane):
        return 0.0
    if isinstance(model, (Sphere, Cylinder)):
        return -model.radius
    raise DomainError(f"{type(model).__name__} has no constant support value")


def _locate_node(rev: Revolution, point) -> int:
    x = np.asarray(point, dtype=float)
    if x.shape != (3,):
        raise DomainError("revolution points live in R^3")
    p = rev.profile
    j = int(round((x[2] - p.z[0]) / p.h))
    if not 0 <= j < p.size or abs(x[2] - p.z[j]) > ON_MODEL_TOL:
        raise DomainError("point is not an axial grid node of the profile")
    rho = float(np.hypot(x[0], x[1]))
    if abs(rho - p.f[j]) > ON_MODEL_TOL:
        raise DomainError("point radius does not match the profile")
    return j


def _validate_point(model, point) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    n = model.n
    if x.shape != (n + 1,):
        raise DomainError(f"point must live in R^{n + 1}")
    if isinstance(model, Hyperplane):
        if abs(x[-1]) > ON_MODEL_TOL:
            raise DomainError("point is off the hyperplane")
    elif isinstance(model, Sphere):
        if abs(np.linalg.norm(x) - model.radius) > ON_MODEL_TOL:
            raise DomainError("point is off the sphere")
    elif isinstance(model, Cylinder):
        if abs(np.linalg.norm(x[:model.m + 1]) - model.radius) > ON_MODEL_TOL:
            raise DomainError("point is off the cylinder")
    return x


def principal_curvatures(model: HypersurfaceModel, point) -> np.ndarray:
    """Principal curvatures of the model at a point on it.

    Revolution models are queried at grid nodes and return the pair
    (meridional, parallel) from the difference stencils.
    """
    if isinstance(model, (Hyperplane, Sphere, Cylinder)):
        _validate_point(model, point)
        return exact_curvatures(model)
    if isinstance(model, EllipsoidRev):
        model = model.as_revolution()
    if isinstance(model, Revolution):
        j = _locate_node(model, point)
        g = revolution_geometry(model)
        return np.array([g.k_mer[j], g.k_par[j]])
    raise DomainError(f"unsupported model {type(model).__name__}")


def support_function(model: HypersurfaceModel, point) -> float:
    """<X, N> at a point on the model, inward convention on closed models."""
    if isinstance(model, (Hyperplane, Sphere, Cylinder)):
        _validate_point(model, point)
        return exact_support(model)
    if isinstance(model, EllipsoidRev):
        model = model.as_revolution()
    if isinstance(model, Revolution):
        j = _locate_node(model, point)
        return float(revolution_geometry(model).support[j])
    raise DomainError(f"unsupported model {type(model).__name__}")


def shrinker_residual(model: HypersurfaceModel, r: int, point) -> float:
    """sigma_r + <X,N> at the point; zero iff the shrinker equation holds."""
    n = model.n
    if not 1 <= r <= n:
        raise DomainError(f"r={r} out of range 1..{n}")
    k = principal_curvatures(model, point)
    return elem_sym(k, r) + support_function(model, point)


# ---------------------------------------------------------------------------
# deterministic sampling

@dataclass(frozen=True, eq=False)
class PointSample:
    position: np.ndarray
    curvatures: np.ndarray
    support_value: float


@dataclass(frozen=True, eq=False)
class SampleArrays:
    """Column view of a sample set: one row per sample."""

    positions: np.ndarray   # (S, n+1)
    curvatures: np.ndarray  # (S, n)
    support: np.ndarray     # (S,)

    @property
    def count(self) -> int:
        return int(self.support.size)


def _axis_sizes(ndims: int, resolution: int) -> list:
    """Product-grid sizes: the first two axes get `resolution`, the rest 3."""
    return [resolution] * min(2, ndims) + [3] * max(0, ndims - 2)


def _sphere_positions(n: int, radius: float, resolution: int) -> np.ndarray:
    sizes = _axis_sizes(n, resolution)
    axes = []
    for i, size in enumerate(sizes):
        if i < n - 1:   # polar angles, open interval (0, pi)
            axes.append((np.arange(size) + 0.5) * np.pi / size)
        else:           # final azimuthal angle
            axes.append(np.arange(size) * 2.0 * np.pi / size)
    mesh = np.meshgrid(*axes, indexing="ij")
    ang = np.stack([m.ravel() for m in mesh], axis=1)
    count = ang.shape[0]
    x = np.empty((count, n + 1))
    sin_prod = np.ones(count)
    for i in range(n):
        x[:, i] = sin_prod * np.cos(ang[:, i])
        sin_prod = sin_prod * np.sin(ang[:, i])
    x[:, n] = sin_prod
    return radius * x


def _box_positions(ndims: int, extent: float, resolution: int) -> np.ndarray:
    sizes = _axis_sizes(ndims, resolution)
    axes = [np.linspace(-extent, extent, size) for size in sizes]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def sample_arrays(model: HypersurfaceModel, resolution: int) -> SampleArrays:
    """Deterministic sample grid with per-sample curvatures and support."""
    if resolution < 8:
        raise DomainError("resolution must be >= 8")
    if isinstance(model, Sphere):
        pos = _sphere_positions(model.n, model.radius, resolution)
        count = pos.shape[0]
        return SampleArrays(
            positions=pos,
            curvatures=np.tile(exact_curvatures(model), (count, 1)),
            support=np.full(count, exact_support(model)),
        )
    if isinstance(model, Hyperplane):
        flat = _box_positions(model.n, 2.0, resolution)
        pos = np.concatenate([flat, np.zeros((flat.shape[0], 1))], axis=1)
        count = pos.shape[0]
        return SampleArrays(
            positions=pos,
            curvatures=np.zeros((count, model.n)),
            support=np.zeros(count),
        )
    if isinstance(model, Cylinder):
        sph = _sphere_positions(model.m, model.radius, resolution)
        ax_dims = model.n - model.m
        sizes = _axis_sizes(model.n, resolution)[model.m:]
        axes = [np.linspace(-model.extent, model.extent, s) for s in sizes]
        mesh = np.meshgrid(*axes, indexing="ij")
        ax = np.stack([m.ravel() for m in mesh], axis=1) if ax_dims else np.zeros((1, 0))
        pos = np.concatenate(
            [np.repeat(sph, ax.shape[0], axis=0),
             np.tile(ax, (sph.shape[0], 1))],
            axis=1,
        )
        count = pos.shape[0]
        return SampleArrays(
            positions=pos,
            curvatures=np.tile(exact_curvatures(model), (count, 1)),
            support=np.full(count, exact_support(model)),
        )
    if isinstance(model, EllipsoidRev):
        model = model.as_revolution(resolution)
    if isinstance(model, Revolution):
        g = revolution_geometry(model)
        return SampleArrays(
            positions=g.positions(),
            curvatures=np.stack([g.k_mer, g.k_par], axis=1),
            support=g.support.copy(),
        )
    raise DomainError(f"unsupported model {type(model).__name__}")


def sample_points(model: HypersurfaceModel, resolution: int) -> list:
    """Same sampling as sample_arrays, wrapped one PointSample per row."""
    arr = sample_arrays(model, resolution)
    return [
        PointSample(
            position=arr.positions[i],
            curvatures=arr.curvatures[i],
            support_value=float(arr.support[i]),
        )
        for i in range(arr.count)
    ]


def self_shrinkers(n_max: int) -> list:
    """All catalog self-shrinkers with n <= n_max, as (model, r) pairs.

    Hyperplanes for every r, spheres of radius delta_n(r), and cylinders
    of radius delta_m(r) for r <= m <= n-1.
    """
    out = []
    for n in range(1, n_max + 1):
        for r in range(1, n + 1):
            out.append((Hyperplane(n=n), r))
            out.append((Sphere(n=n, radius=shrinker_radius(n, r)), r))
            for m in range(r, n):
                out.append(
                    (Cylinder(n=n, m=m, radius=shrinker_radius(m, r)), r)
                )
    return out
