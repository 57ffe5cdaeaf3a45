"""Scalar building blocks shared by every other module.

Complex scalars are plain Python ``complex`` values throughout the package.
This module provides the log-gamma function (Lanczos approximation with
reflection), the reciprocal gamma function, the Pochhammer symbol, the
tolerance record and the exception hierarchy.
"""

from __future__ import annotations

import cmath
import math
import numbers
import warnings
from dataclasses import dataclass, field, replace

__all__ = [
    "NumericsError",
    "PoleError",
    "DomainError",
    "ConvergenceError",
    "IntegrandError",
    "Tolerance",
    "DEFAULT_TOL",
    "ln_gamma",
    "gamma",
    "reciprocal_gamma",
    "pochhammer",
    "is_nonpositive_integer",
    "as_integer",
]

MACHINE_EPS = 2.0**-52
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class NumericsError(Exception):
    """Base class for all evaluation failures raised by this package."""


class PoleError(NumericsError, ValueError):
    """An argument hit a pole of the function being evaluated."""


class DomainError(NumericsError, ValueError):
    """An argument lies outside the supported domain."""


class ConvergenceError(NumericsError, ArithmeticError):
    """A series or quadrature failed to meet its tolerance within budget.

    ``partial`` carries the last available result record, if any.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IntegrandError(NumericsError, ArithmeticError):
    """The integrand returned a non-finite value."""

    def __init__(self, message: str, abscissa: float):
        super().__init__(f"{message} (abscissa {abscissa!r})")
        self.abscissa = abscissa


@dataclass(frozen=True)
class Tolerance:
    """Accuracy targets and work budgets for series and quadrature.

    ``rel_target`` below machine epsilon is clamped to epsilon and the
    ``clamped`` flag is set (a ``RuntimeWarning`` is issued as well).
    """

    rel_target: float = 1e-10
    abs_floor: float = 1e-300
    max_terms: int = 10_000
    max_evals: int = 2_000_000
    clamped: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.rel_target > 0 or not self.abs_floor > 0:
            raise ValueError("rel_target and abs_floor must be positive")
        if self.max_terms < 1 or self.max_evals < 1:
            raise ValueError("max_terms and max_evals must be positive")
        if self.rel_target < MACHINE_EPS:
            warnings.warn(
                f"rel_target {self.rel_target:g} below machine epsilon; clamped",
                RuntimeWarning,
                stacklevel=3,
            )
            object.__setattr__(self, "rel_target", MACHINE_EPS)
            object.__setattr__(self, "clamped", True)

    def tightened(self, factor: float = 10.0) -> "Tolerance":
        """Same budgets with ``rel_target`` divided by ``factor``."""
        rel = max(self.rel_target / factor, MACHINE_EPS)
        return replace(self, rel_target=rel, clamped=False)

    def threshold(self, magnitude: float) -> float:
        return max(self.rel_target * magnitude, self.abs_floor)


DEFAULT_TOL = Tolerance()


# g = 7, n = 9 coefficient set (Godfrey); about 15 significant digits for
# Re(z) >= 1/2.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def as_integer(x) -> int | None:
    """Return ``x`` as an ``int`` if it is an exact integer value, else None."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, numbers.Integral):
        return int(x)
    z = complex(x)
    if z.imag == 0.0 and math.isfinite(z.real) and z.real == math.floor(z.real):
        return int(z.real)
    return None


def is_nonpositive_integer(z, atol: float = 0.0) -> bool:
    z = complex(z)
    if abs(z.imag) > atol or z.real > atol:
        return False
    return abs(z.real - round(z.real)) <= atol


def _wrap_phase(im: float) -> float:
    """Reduce an angle to the principal interval (-pi, pi]."""
    twopi = 2.0 * math.pi
    im = im - twopi * round(im / twopi)
    if im <= -math.pi:
        im += twopi
    elif im > math.pi:
        im -= twopi
    return im


def _sin_pi(z: complex) -> complex:
    # argument reduction keeps sin(pi z) accurate near the integers
    x = z.real - 2.0 * round(z.real / 2.0)
    w = complex(x, z.imag)
    if x > 0.5:
        w = 1.0 - w
    elif x < -0.5:
        w = -1.0 - w
    return cmath.sin(math.pi * w)


def _log_sin_pi(z: complex) -> complex:
    if abs(z.imag) < 30.0:
        return cmath.log(_sin_pi(z))
    # |sin(pi z)| ~ exp(pi |y|) / 2 overflows for large |y|
    s = 1.0 if z.imag > 0 else -1.0
    # sin(w) = exp(-s i w) * (s i / 2) * (1 - exp(2 s i w))
    w = math.pi * z
    return -s * 1j * w + cmath.log(0.5j * s) + cmath.log(1.0 - cmath.exp(2j * s * w))


def _ln_gamma_right(z: complex) -> complex:
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def ln_gamma(z) -> complex:
    """Logarithm of the gamma function.

    The imaginary part is the principal argument of Gamma(z), in (-pi, pi],
    so ``exp(ln_gamma(z))`` reproduces Gamma(z). Real arguments give a real
    part equal to ``log|Gamma(x)|`` and an imaginary part of 0 or pi.

    Raises
    ------
    PoleError
        If ``z`` is a nonpositive integer.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"ln_gamma argument not finite: {z!r}")
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z!r}")
    if z.imag == 0.0 and 0 < z.real <= 171 and z.real == math.floor(z.real):
        return complex(math.log(math.factorial(int(z.real) - 1)), 0.0)
    if z.real >= 0.5:
        val = _ln_gamma_right(z)
    else:
        val = math.log(math.pi) - _log_sin_pi(z) - _ln_gamma_right(1.0 - z)
    return complex(val.real, _wrap_phase(val.imag))


def gamma(z) -> complex:
    """Gamma function; real arguments give results with zero imaginary part."""
    z = complex(z)
    if z.imag == 0.0 and 0 < z.real <= 171 and z.real == math.floor(z.real):
        return complex(float(math.factorial(int(z.real) - 1)), 0.0)
    lg = ln_gamma(z)
    if z.imag == 0.0:
        sign = -1.0 if lg.imag != 0.0 else 1.0
        return complex(sign * math.exp(lg.real), 0.0)
    return cmath.exp(lg)


def reciprocal_gamma(z) -> complex:
    """1/Gamma(z), an entire function; exactly 0 at the nonpositive integers."""
    z = complex(z)
    if is_nonpositive_integer(z):
        return 0j
    lg = ln_gamma(z)
    if z.imag == 0.0:
        sign = -1.0 if lg.imag != 0.0 else 1.0
        return complex(sign * math.exp(-lg.real), 0.0)
    return cmath.exp(-lg)


def pochhammer(lam, nu) -> complex:
    """Pochhammer symbol (lam)_nu = Gamma(lam + nu) / Gamma(lam).

    Integer ``nu`` is evaluated as a direct product, so (0)_0 = 1 and
    (0)_m = 0 exactly for m >= 1. Negative integers use
    (lam)_{-m} = 1 / ((lam - 1)(lam - 2)...(lam - m)).
    """
    lam = complex(lam)
    m = as_integer(nu)
    if m is not None:
        acc = 1.0 + 0j
        if m >= 0:
            for k in range(m):
                acc *= lam + k
            return acc
        for k in range(1, -m + 1):
            acc *= lam - k
        if acc == 0:
            raise PoleError(f"({lam!r})_{m} has a pole")
        return 1.0 / acc
    nu = complex(nu)
    top = lam + nu
    if is_nonpositive_integer(top):
        raise PoleError(f"Gamma({top!r}) pole in ({lam!r})_({nu!r})")
    if is_nonpositive_integer(lam):
        return 0j
    ratio = cmath.exp(ln_gamma(top) - ln_gamma(lam))
    if lam.imag == 0.0 and nu.imag == 0.0:
        return complex(ratio.real, 0.0)
    return ratio
