"""Special functions for the shift kernel and numerical audits of its identities."""

from .bessel import bessel_i, bessel_j, bessel_k, bessel_k_imag_orders, bessel_y, hankel
from .confluent import parabolic_d, tricomi_u, whittaker_w
from .hypergeom import SeriesResult, hyp_2f1_cont, hyp_pfq
from .identities import IdentityReport, run_suite
from .kernel import KernelParams, KernelValue, kernel_closed, kernel_integral, kernel_series
from .legendre import gegenbauer_c, legendre_p
from .numerics import (
    ConvergenceError,
    DomainError,
    IntegrandError,
    NumericsError,
    PoleError,
    Tolerance,
    gamma,
    ln_gamma,
    pochhammer,
)
from .quadrature import QuadratureResult, integrate_double, integrate_finite, integrate_semi_infinite

__version__ = "0.1.0"

__all__ = [
    "bessel_i",
    "bessel_j",
    "bessel_k",
    "bessel_k_imag_orders",
    "bessel_y",
    "hankel",
    "parabolic_d",
    "tricomi_u",
    "whittaker_w",
    "SeriesResult",
    "hyp_2f1_cont",
    "hyp_pfq",
    "IdentityReport",
    "run_suite",
    "KernelParams",
    "KernelValue",
    "kernel_closed",
    "kernel_integral",
    "kernel_series",
    "gegenbauer_c",
    "legendre_p",
    "ConvergenceError",
    "DomainError",
    "IntegrandError",
    "NumericsError",
    "PoleError",
    "Tolerance",
    "gamma",
    "ln_gamma",
    "pochhammer",
    "QuadratureResult",
    "integrate_double",
    "integrate_finite",
    "integrate_semi_infinite",
]
