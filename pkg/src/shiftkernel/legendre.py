"""Associated Legendre functions on t > 1 and Gegenbauer polynomials.

P^mu_nu(t) = Gamma(1 - mu)^-1 ((t + 1)/(t - 1))^(mu/2) 2F1(-nu, nu + 1; 1 - mu; (1 - t)/2)

The hypergeometric argument is nonpositive on t > 1 and is handled by the
Pfaff transformation. The array routine takes the offset s = t - 1 so that
points close to t = 1 keep their relative accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypergeom import hyp2f1_pfaff_array, hyp_2f1_cont, hyp_pfq
from .numerics import DEFAULT_TOL, DomainError, Tolerance, as_integer, gamma, pochhammer, reciprocal_gamma
from .quadrature import integrate_finite

__all__ = [
    "LegendreArgs",
    "legendre_p",
    "legendre_p_offset",
    "gegenbauer_c",
    "gegenbauer_norm",
    "gegenbauer_inner_product",
]

# below this offset the 2F1 factor equals its value at 0 to machine precision
_NEAR_ONE = 2.0**-52


@dataclass(frozen=True)
class LegendreArgs:
    """Degree ``nu``, order ``mu`` and real argument ``t`` of P^mu_nu(t)."""

    nu: complex
    mu: complex
    t: float

    def __post_init__(self):
        mu = complex(self.mu)
        m = as_integer(mu)
        if m is not None and m >= 1:
            raise DomainError(f"order mu = {m} is a positive integer")
        if not self.t >= 1.0 or (self.t == 1.0 and mu.real > 0):
            raise DomainError(f"argument t = {self.t} outside t > 1")


def _check_order(mu: complex):
    m = as_integer(mu)
    if m is not None and m >= 1:
        raise DomainError(f"order mu = {m} is a positive integer")


def legendre_p(nu, mu, t: float, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Associated Legendre function of the first kind P^mu_nu(t) for real t > 1.

    Parameters
    ----------
    nu, mu : complex
        Degree and order; ``mu`` must not be a positive integer.
    t : float
        Argument, ``t > 1`` (``t = 1`` is allowed when ``Re(mu) <= 0``).

    Examples
    --------
    >>> abs(legendre_p(1, -1, 2.0) - 3 ** 0.5 / 2) < 1e-14
    True
    """
    args = LegendreArgs(complex(nu), complex(mu), float(t))
    return complex(legendre_p_offset(args.nu, args.mu, np.array([args.t - 1.0]), tol)[0])


def legendre_p_offset(nu, mu, s, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Vectorized P^mu_nu(1 + s) for an array of offsets s >= 0."""
    nu, mu = complex(nu), complex(mu)
    _check_order(mu)
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("offsets must be nonnegative")
    if np.any(s == 0) and mu.real > 0:
        raise DomainError("t = 1 needs Re(mu) <= 0")
    rg = reciprocal_gamma(1.0 - mu)
    out = np.zeros(s.shape, dtype=complex)
    if rg == 0:
        return out
    pos = s > 0
    with np.errstate(divide="ignore"):
        logs = np.log(s[pos])
    power = np.exp(0.5 * mu * (np.log(s[pos] + 2.0) - logs))
    far = s[pos] >= _NEAR_ONE
    f = np.ones(power.shape, dtype=complex)
    if far.any():
        f[far] = hyp2f1_pfaff_array(-nu, nu + 1.0, 1.0 - mu, -0.5 * s[pos][far], tol)
    out[pos] = rg * power * f
    if (~pos).any():
        # t = 1 with Re(mu) <= 0: the power vanishes unless mu = 0
        out[~pos] = rg if mu == 0 else 0.0
    return out


def gegenbauer_c(k: int, rho: float, x: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Gegenbauer polynomial C^rho_k(x) from the terminating hypergeometric form.

    C^rho_k(x) = (2 rho)_k / k! * 2F1(-k, k + 2 rho; rho + 1/2; (1 - x)/2)
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    lead = pochhammer(2.0 * rho, k) / math.factorial(k)
    f = hyp_pfq([-k, k + 2.0 * rho], [rho + 0.5], 0.5 * (1.0 - x), tol).value
    return float((lead * f).real)


def gegenbauer_norm(k: int, rho: float) -> float:
    """2^(1 - 2 rho) pi Gamma(k + 2 rho) / (k! (k + rho) Gamma(rho)^2)."""
    return float((2.0 ** (1.0 - 2.0 * rho) * math.pi * gamma(k + 2.0 * rho)
                  / (math.factorial(k) * (k + rho) * gamma(rho) ** 2)).real)


def gegenbauer_inner_product(k: int, m: int, rho: float, tol: Tolerance = DEFAULT_TOL):
    """int_{-1}^{1} (1 - x^2)^(rho - 1/2) C^rho_k(x) C^rho_m(x) dx by tanh-sinh.

    Returns the :class:`QuadratureResult`.
    """
    if not rho > -0.5:
        raise DomainError("rho must exceed -1/2")

    def f(x, xa, xb):
        # (1 - x^2) = (x + 1)(1 - x) from the exact endpoint distances
        w = np.exp((rho - 0.5) * (np.log(xa) + np.log(xb)))
        return w * _gegenbauer_recurrence(k, rho, x) * _gegenbauer_recurrence(m, rho, x)

    return integrate_finite(f, -1.0, 1.0, tol.tightened(100.0), with_offsets=True)


def _gegenbauer_recurrence(k: int, rho: float, x: np.ndarray) -> np.ndarray:
    """C^rho_k(x) on an array by the three-term recurrence in k."""
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 2.0 * rho * x
    for j in range(1, k):
        # (j+1) C_{j+1} = 2 (j + rho) x C_j - (j + 2 rho - 1) C_{j-1}
        prev, cur = cur, (2.0 * (j + rho) * x * cur - (j + 2.0 * rho - 1.0) * prev) / (j + 1)
    return cur


def hyp_2f1_legendre(nu, mu, t: float, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Scalar 2F1 factor of P^mu_nu(t) via :func:`hyp_2f1_cont` (reference path)."""
    return hyp_2f1_cont(-complex(nu), complex(nu) + 1.0, 1.0 - complex(mu), 0.5 * (1.0 - t), tol).value
