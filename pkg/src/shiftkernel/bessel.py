"""Bessel functions of complex order.

I and J come from their power series, Y from the Neumann combination of J,
and the Hankel functions from J and Y. The Macdonald function is the single
source of truth for K:

    K_nu(x) = int_0^oo exp(-x cosh u) cosh(nu u) du,   x > 0,

truncated where the integrand underflows and integrated by tanh-sinh. For
purely imaginary order the integrand is exp(-x cosh u) cos(t u), so the
result is real to the last bit; for such orders and x <= 1 the ascending
series in I_{+-i rho} is used instead.

``bessel_k_complex_arg`` evaluates K at complex argument on a rotated
contour with a plain trapezoidal rule. It shares no code with the DE engine
and serves as an independent oracle for the Hankel relations.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    ConvergenceError,
    DomainError,
    Tolerance,
    as_integer,
    reciprocal_gamma,
)
from .quadrature import QuadratureResult, integrate_finite

__all__ = [
    "bessel_i",
    "bessel_j",
    "bessel_y",
    "bessel_k",
    "bessel_k_result",
    "bessel_k_imag_orders",
    "bessel_k_complex_arg",
    "hankel",
    "MAX_IMAG_ORDER",
    "INTEGER_ORDER_OFFSET",
]

MAX_IMAG_ORDER = 50.0
INTEGER_ORDER_OFFSET = 1e-6
# exp(-750) underflows in double precision
_LOG_UNDERFLOW = 750.0
# imaginary-order K switches to the ascending series at or below this x
_SERIES_MAX_X = 1.0
_EPS = 2.0**-53


def _power_series(nu: complex, z: complex, sign: float, tol: Tolerance) -> complex:
    """(z/2)^nu sum_k (sign z^2/4)^k / (k! Gamma(nu + k + 1))."""
    if z == 0:
        if nu == 0:
            return 1.0 + 0j
        if nu.real > 0:
            return 0j
        raise DomainError(f"order {nu!r} is singular at z = 0")
    q = sign * 0.25 * z * z
    term = reciprocal_gamma(nu + 1.0)
    k = 0
    if term == 0:
        # nu + 1 is a pole: the series starts at k = 1 - (nu + 1)
        raise DomainError("negative integer order should be reflected first")
    total = term
    small = 0
    while True:
        k += 1
        term *= q / (k * (nu + k))
        total += term
        if abs(term) <= tol.threshold(abs(total)):
            small += 1
            if small == 3:
                break
        else:
            small = 0
        if k >= tol.max_terms:
            raise ConvergenceError(f"Bessel series not converged in {tol.max_terms} terms", total)
    return cmath.exp(nu * cmath.log(0.5 * z)) * total


def bessel_i(nu, z, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Modified Bessel function of the first kind I_nu(z).

    Negative integer orders use I_{-m} = I_m.

    Examples
    --------
    >>> bessel_i(0, 0)
    (1+0j)
    """
    nu, z = complex(nu), complex(z)
    m = as_integer(nu)
    if m is not None and m < 0:
        nu = complex(-m)
    return _power_series(nu, z, 1.0, tol)


def bessel_j(nu, z, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Bessel function of the first kind J_nu(z).

    Negative integer orders use J_{-m} = (-1)^m J_m.
    """
    nu, z = complex(nu), complex(z)
    m = as_integer(nu)
    if m is not None and m < 0:
        return (-1.0) ** m * _power_series(complex(-m), z, -1.0, tol)
    return _power_series(nu, z, -1.0, tol)


def _neumann(nu: complex, z: complex, tol: Tolerance) -> complex:
    s = cmath.sin(math.pi * nu)
    return (bessel_j(nu, z, tol) * cmath.cos(math.pi * nu) - bessel_j(-nu, z, tol)) / s


def bessel_y(nu, z, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Bessel function of the second kind Y_nu(z).

    Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi). At integer order the
    formula is evaluated at nu +- ``INTEGER_ORDER_OFFSET`` and averaged, which
    is accurate to about 1e-8.
    """
    nu, z = complex(nu), complex(z)
    if abs(nu.imag) < 1e-300 and abs(nu.real - round(nu.real)) < INTEGER_ORDER_OFFSET:
        n = complex(round(nu.real))
        d = INTEGER_ORDER_OFFSET
        return 0.5 * (_neumann(n + d, z, tol) + _neumann(n - d, z, tol))
    return _neumann(nu, z, tol)


def hankel(kind: int, nu, x, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Hankel function H^(1)_nu(x) = J + iY or H^(2)_nu(x) = J - iY.

    Examples
    --------
    >>> h = hankel(1, 0.5, 1.0)
    >>> round(h.real, 7), round(h.imag, 7)
    (0.6713967, -0.4310989)
    """
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    x = complex(x)
    if not (x.imag == 0 and x.real > 0):
        raise DomainError("hankel needs a real positive argument")
    j = bessel_j(nu, x, tol)
    y = bessel_y(nu, x, tol)
    return j + 1j * y if kind == 1 else j - 1j * y


def _k_upper(nu: complex, x: float) -> float:
    """Truncation point where exp(-x cosh u + |Re nu| u) has underflowed.

    Zero means the whole integrand underflows and K is 0 in double precision.
    """
    target = _LOG_UNDERFLOW + abs(nu.imag) * math.pi
    u = math.acosh(max(1.0, target / x))
    while x * math.cosh(u) - abs(nu.real) * u < target:
        u += 0.5
    return u


def _check_k_args(nu: complex, x) -> float:
    x = complex(x)
    if x.imag != 0 or not x.real > 0:
        raise DomainError(f"bessel_k needs real x > 0, got {x!r}")
    if abs(nu.imag) > MAX_IMAG_ORDER:
        raise DomainError(f"|Im(nu)| = {abs(nu.imag):g} exceeds {MAX_IMAG_ORDER}")
    return x.real


def bessel_k_result(nu, x, tol: Tolerance = DEFAULT_TOL) -> QuadratureResult:
    """K_nu(x) from the cosh integral, with its quadrature diagnostics."""
    nu = complex(nu)
    x = _check_k_args(nu, x)
    upper = _k_upper(nu, x)
    if upper == 0.0:
        return QuadratureResult(0j, 0.0, 0, True)
    if nu.real == 0 and nu.imag != 0 and x <= _SERIES_MAX_X:
        val = _k_imag_series(np.array([nu.imag]), x, tol)[0]
        return QuadratureResult(complex(val), _EPS * abs(val), 0, True)
    if nu.real == 0:
        rho = nu.imag

        def f(u):
            return np.exp(-x * np.cosh(u)) * np.cos(rho * u)
    else:

        def f(u):
            e = -x * np.cosh(u)
            return 0.5 * (np.exp(e + nu * u) + np.exp(e - nu * u))

    return integrate_finite(f, 0.0, upper, tol)


def bessel_k(nu, x, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Macdonald function K_nu(x) for real x > 0 and |Im nu| <= 50.

    Examples
    --------
    >>> round(bessel_k(0.5, 1.0).real, 10)
    0.4610685044
    """
    return complex(bessel_k_result(nu, x, tol).value)


def _k_imag_series(rhos: np.ndarray, x: float, tol: Tolerance) -> np.ndarray:
    """K_{i rho}(x) = -pi Im(g) / sinh(pi rho), g = sum_k (x/2)^(2k + i rho) / (k! Gamma(k + 1 + i rho)).

    This is (pi/2)(I_{-i rho} - I_{i rho}) / sin(i rho pi) with the two
    series merged; it is free of cancellation for x <= 1.
    """
    rho = np.abs(rhos)
    nu = 1j * rho
    term = np.exp(nu * math.log(0.5 * x)) * np.array([reciprocal_gamma(1.0 + v) for v in nu])
    total = term.copy()
    q = 0.25 * x * x
    k = 0
    while True:
        k += 1
        term = term * q / (k * (k + nu))
        total += term
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            break
    out = np.empty(rho.shape)
    small = rho < 1e-300
    with np.errstate(invalid="ignore", divide="ignore"):
        out[~small] = -math.pi * total.imag[~small] / np.sinh(math.pi * rho[~small])
    if small.any():
        # rho -> 0 limit: K_0 from the cosh integral
        out[small] = bessel_k(0.0, x, tol).real
    return out


def bessel_k_imag_orders(rhos, x: float, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """K_{i rho}(x) for an array of real ``rhos``.

    For x <= 1 the ascending series is used; otherwise the cosh integral
    with one set of nodes shared by all orders.
    """
    rhos = np.asarray(rhos, dtype=float)
    x = _check_k_args(complex(0, float(np.max(np.abs(rhos)))), x)
    if x <= _SERIES_MAX_X:
        return _k_imag_series(rhos, x, tol)
    upper = _k_upper(complex(0, float(np.max(np.abs(rhos)))), x)
    if upper == 0.0:
        return np.zeros(rhos.shape)

    def f(u):
        return np.exp(-x * np.cosh(u))[:, None] * np.cos(np.outer(u, rhos))

    return np.real(integrate_finite(f, 0.0, upper, tol, n_out=rhos.size).value)


def bessel_k_complex_arg(nu, z, rel: float = 1e-13, theta: float = math.pi / 3,
                         max_halvings: int = 14) -> complex:
    """K_nu(z) for |arg z| <= pi/2 on a rotated contour.

    K_nu(z) = 1/2 int exp(-z cosh t + nu t) dt over the real line, deformed
    to t = s + i phi(s) with phi(s) = -sign(arg z) theta tanh(s). On the
    deformed path the integrand decays double-exponentially even for purely
    imaginary z. The trapezoidal rule is refined by step halving until two
    successive values agree to ``rel``.
    """
    nu, z = complex(nu), complex(z)
    if z == 0 or abs(cmath.phase(z)) > 0.5 * math.pi + 1e-15:
        raise DomainError("bessel_k_complex_arg needs |arg z| <= pi/2 and z != 0")
    sgn = math.copysign(1.0, cmath.phase(z)) if z.imag != 0 else 0.0
    th = sgn * theta

    def g(s):
        t = s - 1j * th * np.tanh(s)
        dt = 1.0 - 1j * th / np.cosh(s) ** 2
        return 0.5 * np.exp(-z * np.cosh(t) + nu * t) * dt

    # half-width where the integrand has underflowed on both sides
    decay = abs(z) * min(1.0, abs(math.cos(cmath.phase(z))) + math.sin(theta) * abs(sgn))
    big = abs(nu) + 1.0
    L = 1.0
    while decay * 0.5 * math.exp(L) - big * L < _LOG_UNDERFLOW:
        L += 0.5
    h = 0.5
    prev = None
    for _ in range(max_halvings):
        n = int(math.ceil(L / h))
        s = np.arange(-n, n + 1) * h
        with np.errstate(under="ignore"):
            val = h * complex(np.sum(g(s)))
        if prev is not None and abs(val - prev) <= rel * abs(val):
            return val
        prev = val
        h *= 0.5
    raise ConvergenceError("rotated-contour K did not converge", prev)
