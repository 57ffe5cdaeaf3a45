"""Tricomi U, Whittaker W and parabolic cylinder D.

Every value comes from the Laplace integral

    U(a, b, z) = Gamma(a)^-1 int_0^oo exp(-z t) t^(a-1) (1 + t)^(b-a-1) dt,

valid for Re(a) > 0 and Re(z) > 0. The integrand is assembled in log space,
so large parameters neither overflow nor underflow before the final
exponential. Parameters with small Re(a) are handled by Kummer's
transformation or, failing that, by the downward recurrence in ``a``, which
is stable because U is the minimal solution as ``a`` grows. When ``a`` or
``a - b + 1`` is a nonpositive integer the asymptotic 2F0 series terminates
and is summed exactly.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .hypergeom import hyp_pfq
from .numerics import (
    DEFAULT_TOL,
    DomainError,
    Tolerance,
    is_nonpositive_integer,
    ln_gamma,
)
from .quadrature import QuadratureResult, integrate_semi_infinite

__all__ = ["tricomi_u", "tricomi_u_scaled", "whittaker_w", "parabolic_d", "MAX_LIFT"]

# real part above which the Laplace integral is used directly
_DIRECT_MIN_RE = 1.0
# largest number of recurrence steps the lift may take
MAX_LIFT = 400


def _check_z(z: complex):
    if not z.real > 0:
        raise DomainError(f"Re(z) must be positive, got z = {z!r}")


def _laplace(a: complex, b: complex, z: complex, log_scale: complex, tol: Tolerance) -> QuadratureResult:
    """exp(log_scale) * U(a, b, z) from the Laplace integral, Re(a) > 0."""
    lg = ln_gamma(a)
    c = b - a - 1.0
    if a.imag == 0 and c.imag == 0 and z.imag == 0 and log_scale.imag == 0:
        am1, cr, zr, base = a.real - 1.0, c.real, z.real, (log_scale - lg).real

        def f(t):
            return np.exp(base + am1 * np.log(t) + cr * np.log1p(t) - zr * t)
    else:
        base = log_scale - lg

        def f(t):
            return np.exp(base + (a - 1.0) * np.log(t) + c * np.log1p(t) - z * t)

    # centre the substitution on the bulk, near t = max(1, |a - 1|) / |z|
    scale = abs(z) / max(1.0, abs(a - 1.0))
    return integrate_semi_infinite(f, 0.0, scale, tol.tightened(10.0))


def _terminating(a: complex, b: complex, z: complex, log_scale: complex, tol: Tolerance) -> complex:
    series = hyp_pfq([a, a - b + 1.0], [], -1.0 / z, tol).value
    return cmath.exp(log_scale - a * cmath.log(z)) * series


def _u_scaled(a: complex, b: complex, z: complex, log_scale: complex, tol: Tolerance) -> complex:
    if is_nonpositive_integer(a) or is_nonpositive_integer(a - b + 1.0):
        return _terminating(a, b, z, log_scale, tol)
    if a.real >= _DIRECT_MIN_RE:
        return _laplace(a, b, z, log_scale, tol).value
    # Kummer: U(a, b, z) = z^(1-b) U(a-b+1, 2-b, z)
    a2 = a - b + 1.0
    if a2.real >= _DIRECT_MIN_RE:
        return _u_scaled(a2, 2.0 - b, z, log_scale + (1.0 - b) * cmath.log(z), tol)
    # lift: U(a-1) = (2a - b + z) U(a) - a (a - b + 1) U(a+1), run downward
    m = math.ceil(_DIRECT_MIN_RE - a.real)
    if m > MAX_LIFT:
        raise DomainError(f"cannot lift a = {a!r} into the integrable region in {MAX_LIFT} steps")
    top = a + m
    u_hi = _laplace(top + 1.0, b, z, log_scale, tol).value
    u_mid = _laplace(top, b, z, log_scale, tol).value
    for k in range(m):
        c = top - k
        u_hi, u_mid = u_mid, (2.0 * c - b + z) * u_mid - c * (c - b + 1.0) * u_hi
    return u_mid


def tricomi_u(a, b, z, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Confluent hypergeometric function of the second kind U(a, b, z).

    Parameters
    ----------
    a, b : complex
    z : complex
        Must satisfy ``Re(z) > 0``.
    tol : Tolerance

    Returns
    -------
    complex

    Raises
    ------
    DomainError
        ``Re(z) <= 0``, or ``a`` too far left to lift within ``MAX_LIFT`` steps.

    Examples
    --------
    >>> round(tricomi_u(1, 2, 2).real, 12)
    0.5
    """
    a, b, z = complex(a), complex(b), complex(z)
    _check_z(z)
    if a == 0:
        return 1.0 + 0j
    return _u_scaled(a, b, z, 0j, tol)


def tricomi_u_scaled(a, b, z, log_scale, tol: Tolerance = DEFAULT_TOL) -> complex:
    """exp(log_scale) * U(a, b, z), with the scale applied inside the integrand.

    Useful when U and its prefactor would separately overflow or underflow.
    """
    a, b, z, log_scale = complex(a), complex(b), complex(z), complex(log_scale)
    _check_z(z)
    if a == 0:
        return cmath.exp(log_scale)
    return _u_scaled(a, b, z, log_scale, tol)


def whittaker_w(kappa, mu, z, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Whittaker function W_{kappa, mu}(z) for Re(z) > 0.

    Uses W = z^(mu + 1/2) exp(-z/2) U(1/2 - kappa + mu, 2 mu + 1, z) with the
    principal power; the prefactor is folded into the log-space integrand.
    """
    kappa, mu, z = complex(kappa), complex(mu), complex(z)
    _check_z(z)
    a = 0.5 - kappa + mu
    log_pre = (mu + 0.5) * cmath.log(z) - 0.5 * z
    if a == 0:
        return cmath.exp(log_pre)
    return _u_scaled(a, 2.0 * mu + 1.0, z, log_pre, tol)


def parabolic_d(nu, z, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Parabolic cylinder function D_nu(z) = 2^(nu/2) e^(-z^2/4) U(-nu/2, 1/2, z^2/2).

    Requires ``Re(z^2) > 0``.
    """
    nu, z = complex(nu), complex(z)
    w = 0.5 * z * z
    _check_z(w)
    log_pre = 0.5 * nu * math.log(2.0) - 0.5 * w
    if nu == 0:
        return cmath.exp(log_pre)
    return _u_scaled(-0.5 * nu, 0.5 + 0j, w, log_pre, tol)
