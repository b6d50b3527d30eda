"""Discrete curvature-weighted second-order operators on revolution surfaces.

For a rotationally invariant function F on a surface of revolution the
operator tr(P_{r-1} Hess F) reduces to the one-dimensional flux form

    L F = (1/(f w)) d/dz ( (f * lambda_mer / w) dF/dz ),

where lambda_mer is the eigenvalue of P_{r-1} on the meridional
direction (1 for r = 1, k_parallel for r = 2), f the distance to the
axis and w = sqrt(1 + f'^2).  The drifted variant subtracts <X, grad F>.
Identity checks report max-norm residuals over interior nodes only (two
nodes trimmed per open boundary, where the stencils are lower order);
no discrete maximum principle is claimed for semidefinite weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fd
from .catalog import (
    Cylinder,
    EllipsoidRev,
    HypersurfaceModel,
    Revolution,
    RevolutionGeometry,
    Sphere,
    cylinder_profile,
    exact_curvatures,
    exact_support,
    revolution_geometry,
    sphere_band_profile,
)
from .errors import DomainError, NotSelfShrinkerError
from .symfun import elem_sym_all, elem_sym_excluding

TRUNCATION_ORDER = 2


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Rotationally invariant function sampled on the profile grid."""

    values: np.ndarray
    geometry: Revolution

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.shape != self.geometry.profile.z.shape:
            raise DomainError("field length does not match the grid")
        if not np.all(np.isfinite(v)):
            raise DomainError("field has non-finite values")


@dataclass(frozen=True, eq=False)
class OperatorResult:
    field: ScalarField
    truncation_order: int = TRUNCATION_ORDER

    @property
    def values(self) -> np.ndarray:
        return self.field.values


def _geom(field: ScalarField) -> RevolutionGeometry:
    return revolution_geometry(field.geometry)


def _lambda_meridian(g: RevolutionGeometry, r: int) -> np.ndarray:
    """Meridional eigenvalue of P_{r-1} built pointwise from curvatures."""
    if r == 1:
        return np.ones_like(g.f)
    if r == 2:
        return g.k_par
    raise DomainError("revolution operators support r in {1, 2}")


def surface_gradient(field: ScalarField) -> np.ndarray:
    """Signed magnitude of grad F along the (unit) meridional direction."""
    g = _geom(field)
    df = fd.deriv1(field.values, g.h, g.boundary)
    return df / g.w


def position_gradient_term(field: ScalarField) -> np.ndarray:
    """<X, grad F> nodewise: (f f' + z) F_z / w^2."""
    g = _geom(field)
    df = fd.deriv1(field.values, g.h, g.boundary)
    return (g.f * g.fp + g.z) * df / (g.w * g.w)


def lr_apply(field: ScalarField, r: int) -> OperatorResult:
    """Divergence-form discretization of tr(P_{r-1} Hess F).

    Second order in the interior; for r = 1 this is the discrete
    Laplace-Beltrami operator of the surface.
    """
    g = _geom(field)
    lam = _lambda_meridian(g, r)
    coef = g.f * lam / g.w
    flux = fd.flux_divergence(coef, field.values, g.h, g.boundary)
    values = flux / (g.f * g.w)
    return OperatorResult(field=ScalarField(values=values, geometry=field.geometry))


def drifted_apply(field: ScalarField, r: int) -> OperatorResult:
    """Drifted operator: lr_apply minus the position drift <X, grad F>."""
    base = lr_apply(field, r)
    values = base.values - position_gradient_term(field)
    return OperatorResult(field=ScalarField(values=values, geometry=field.geometry))


# ---------------------------------------------------------------------------
# identity verification

@dataclass(frozen=True)
class ConvergenceReport:
    identity: str
    r: int
    resolutions: tuple
    residuals: tuple
    observed_orders: tuple

    def passes(self, order_band=(1.5, 2.5), finest_tol: float = 1e-3) -> bool:
        if self.residuals[-1] > finest_tol:
            return False
        return all(order_band[0] <= p <= order_band[1] for p in self.observed_orders)

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "r": self.r,
            "resolutions": list(self.resolutions),
            "residuals": list(self.residuals),
            "observedOrders": list(self.observed_orders),
        }


def _as_revolution(model: HypersurfaceModel, resolution: int) -> Revolution:
    """Discretize a model as a revolution surface at the given node count."""
    if isinstance(model, Revolution):
        return model
    if isinstance(model, EllipsoidRev):
        return model.as_revolution(resolution)
    if isinstance(model, Sphere):
        if model.n != 2:
            raise DomainError("revolution operators need n = 2")
        return Revolution(profile=sphere_band_profile(
            model.radius, 0.3 * model.radius, resolution))
    if isinstance(model, Cylinder):
        if model.n != 2:
            raise DomainError("revolution operators need n = 2")
        return Revolution(profile=cylinder_profile(
            model.radius, 2.0 * model.radius, resolution))
    raise DomainError(f"cannot discretize {type(model).__name__} as a revolution")


def _sigma_fields(g: RevolutionGeometry):
    """sigma_1, sigma_2 nodewise (n = 2, so sigma_3 = 0)."""
    s1 = g.k_mer + g.k_par
    s2 = g.k_mer * g.k_par
    return s1, s2


def _support_identity_residual(rev: Revolution, r: int) -> float:
    g = revolution_geometry(rev)
    s1, s2 = _sigma_fields(g)
    sig = {0: np.ones_like(s1), 1: s1, 2: s2, 3: np.zeros_like(s1)}
    support = ScalarField(values=g.support, geometry=rev)
    lhs = lr_apply(support, r).values
    dsig = fd.deriv1(sig[r], g.h, g.boundary)
    grad_term = (g.f * g.fp + g.z) * dsig / (g.w * g.w)
    rhs = -r * sig[r] - (s1 * sig[r] - (r + 1) * sig[r + 1]) * g.support - grad_term
    cut = g.interior()
    return float(np.abs(lhs - rhs)[cut].max())


def _position_identity_residual(rev: Revolution, r: int) -> float:
    g = revolution_geometry(rev)
    s1, s2 = _sigma_fields(g)
    sig = {0: np.ones_like(s1), 1: s1, 2: s2}
    radius_sq = ScalarField(values=g.f ** 2 + g.z ** 2, geometry=rev)
    lhs = 0.5 * lr_apply(radius_sq, r).values
    rhs = (2 - r + 1) * sig[r - 1] + r * sig[r] * g.support
    cut = g.interior()
    return float(np.abs(lhs - rhs)[cut].max())


def _refinement_report(identity: str, residual_fn, model, r,
                       resolutions) -> ConvergenceReport:
    resolutions = [int(m) for m in resolutions]
    residuals = []
    spacings = []
    for m in resolutions:
        rev = _as_revolution(model, m)
        residuals.append(residual_fn(rev, r))
        spacings.append(rev.profile.h)
    orders = []
    for i in range(len(residuals) - 1):
        ratio = residuals[i] / residuals[i + 1] if residuals[i + 1] > 0 else math.inf
        href = spacings[i] / spacings[i + 1]
        orders.append(math.log(ratio) / math.log(href) if math.isfinite(ratio) else math.inf)
    return ConvergenceReport(
        identity=identity, r=r, resolutions=tuple(resolutions),
        residuals=tuple(residuals), observed_orders=tuple(orders),
    )


def verify_support_identity(model, r: int, resolutions) -> ConvergenceReport:
    """Refinement study of the support-function identity.

    Checks L_{r-1}<X,N> = -r sigma_r
                          - (sigma_1 sigma_r - (r+1) sigma_{r+1}) <X,N>
                          - <grad sigma_r, X>
    which holds on any hypersurface, shrinker or not.
    """
    if r not in (1, 2):
        raise DomainError("revolution operators support r in {1, 2}")
    return _refinement_report(
        "support", _support_identity_residual, model, r, resolutions)


def verify_position_identity(model, r: int, resolutions) -> ConvergenceReport:
    """Refinement study of (1/2) L_{r-1} ||X||^2 = (n-r+1) sigma_{r-1}
    + r sigma_r <X,N>."""
    if r not in (1, 2):
        raise DomainError("revolution operators support r in {1, 2}")
    return _refinement_report(
        "position", _position_identity_residual, model, r, resolutions)


def verify_product_rule(f: ScalarField, g_field: ScalarField, r: int) -> float:
    """Max-norm residual of L(fg) = f Lg + g Lf + 2 <P grad f, grad g>."""
    if f.geometry is not g_field.geometry:
        pa, pb = f.geometry.profile, g_field.geometry.profile
        same = (
            pa.z.shape == pb.z.shape
            and np.array_equal(pa.z, pb.z)
            and np.array_equal(pa.f, pb.f)
            and f.geometry.orientation == g_field.geometry.orientation
        )
        if not same:
            raise DomainError("fields live on different geometries")
    geom = _geom(f)
    lam = _lambda_meridian(geom, r)
    fg = ScalarField(values=f.values * g_field.values, geometry=f.geometry)
    lhs = lr_apply(fg, r).values
    cross = 2.0 * lam * surface_gradient(f) * surface_gradient(g_field)
    rhs = (f.values * lr_apply(g_field, r).values
           + g_field.values * lr_apply(f, r).values + cross)
    cut = geom.interior()
    return float(np.abs(lhs - rhs)[cut].max())


@dataclass(frozen=True)
class ShrinkerPdeReport:
    """Residuals of the two stationary identities on a model shrinker."""

    residual_linear: float    # |(||sqrt(P_{r-1})A||^2 - r) * sigma_r|
    residual_squared: float   # |sigma_r^2 (r - ||sqrt(P_{r-1})A||^2)|

    @property
    def worst(self) -> float:
        return max(self.residual_linear, self.residual_squared)


def verify_shrinker_pde(model, r: int, shrinker_tol: float = 1e-8) -> ShrinkerPdeReport:
    """Stationary form of the shrinker identities on an exact model.

    On the catalog models sigma_r is constant, so the drifted terms and
    gradient terms vanish and both identities reduce to multiples of
    (||sqrt(P_{r-1})A||^2 - r) * sigma_r.
    """
    n = model.n
    if not 1 <= r <= n:
        raise DomainError(f"r={r} out of range 1..{n}")
    k = exact_curvatures(model)
    support = exact_support(model)
    sig = elem_sym_all(k)
    if abs(sig[r] + support) > shrinker_tol:
        raise NotSelfShrinkerError(
            f"model violates sigma_r = -<X,N> by {abs(sig[r] + support):.3e}"
        )
    norm_sq = float(
        sum(elem_sym_excluding(k, j, r - 1) * k[j] ** 2 for j in range(n))
    )
    sigma_r = float(sig[r])
    return ShrinkerPdeReport(
        residual_linear=abs((norm_sq - r) * sigma_r),
        residual_squared=abs(sigma_r ** 2 * (r - norm_sq)),
    )
