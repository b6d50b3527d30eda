"""Finite-difference stencils on uniform 1-D grids.

Two boundary modes are supported: "periodic" wraps the stencil, and
"neumann" is the open/non-periodic mode, handled with one-sided stencils
at the two end nodes (exact for zero-slope boundary data, second order
for first derivatives, lower order for second derivatives at the ends).
Consumers trim end nodes from any residual they report.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

BOUNDARY_MODES = ("periodic", "neumann")


def _check(values: np.ndarray, boundary: str) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 5:
        raise DomainError("grid needs at least 5 nodes")
    if boundary not in BOUNDARY_MODES:
        raise DomainError(f"unknown boundary mode {boundary!r}")
    return v


def _ghosts(v: np.ndarray):
    """Cubic-extrapolated ghost values one node beyond each end."""
    left = 4.0 * v[0] - 6.0 * v[1] + 4.0 * v[2] - v[3]
    right = 4.0 * v[-1] - 6.0 * v[-2] + 4.0 * v[-3] - v[-4]
    return left, right


def deriv1(values, h: float, boundary: str = "neumann") -> np.ndarray:
    """First derivative, centered everywhere (ghost nodes at open ends)."""
    v = _check(values, boundary)
    if boundary == "periodic":
        return (np.roll(v, -1) - np.roll(v, 1)) / (2.0 * h)
    left, right = _ghosts(v)
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
    d[0] = (v[1] - left) / (2.0 * h)
    d[-1] = (right - v[-2]) / (2.0 * h)
    return d


def deriv2(values, h: float, boundary: str = "neumann") -> np.ndarray:
    """Second derivative, centered everywhere (ghost nodes at open ends)."""
    v = _check(values, boundary)
    if boundary == "periodic":
        return (np.roll(v, -1) - 2.0 * v + np.roll(v, 1)) / (h * h)
    left, right = _ghosts(v)
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (h * h)
    d[0] = (v[1] - 2.0 * v[0] + left) / (h * h)
    d[-1] = (right - 2.0 * v[-1] + v[-2]) / (h * h)
    return d


def flux_divergence(coef, values, h: float, boundary: str = "neumann") -> np.ndarray:
    """Conservative form (d/dz)(coef * dv/dz) with half-node coefficients.

    Second order in the interior.  In the open mode the end nodes use
    quadratically extrapolated ghost values (first-order there; trim).
    """
    c = _check(coef, boundary)
    v = _check(values, boundary)
    if c.shape != v.shape:
        raise DomainError("coefficient and value grids differ in length")
    if boundary == "periodic":
        c_half = 0.5 * (c + np.roll(c, -1))       # coef at j+1/2
        flux = c_half * (np.roll(v, -1) - v) / h  # flux at j+1/2
        return (flux - np.roll(flux, 1)) / h
    out = np.empty_like(v)
    c_half = 0.5 * (c[:-1] + c[1:])               # length M-1, at j+1/2
    flux = c_half * (v[1:] - v[:-1]) / h
    out[1:-1] = (flux[1:] - flux[:-1]) / h
    # ghosts: quadratic extrapolation of v, linear extrapolation of coef
    c_left = 0.5 * (3.0 * c[0] - c[1])
    v_left = 3.0 * v[0] - 3.0 * v[1] + v[2]
    flux_left = c_left * (v[0] - v_left) / h
    out[0] = (flux[0] - flux_left) / h
    c_right = 0.5 * (3.0 * c[-1] - c[-2])
    v_right = 3.0 * v[-1] - 3.0 * v[-2] + v[-3]
    flux_right = c_right * (v_right - v[-1]) / h
    out[-1] = (flux_right - flux[-1]) / h
    return out


def trim_slice(boundary: str, width: int = 2) -> slice:
    """Interior slice for residual reporting (end nodes are lower order)."""
    if boundary == "periodic":
        return slice(None)
    return slice(width, -width)
