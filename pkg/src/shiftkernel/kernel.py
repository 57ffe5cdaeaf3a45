"""The shift-subgroup kernel ker(u; n, k0, sigma, sigma_hat) in three representations.

``kernel_integral`` evaluates the Legendre integral representation and is
the ground truth. ``kernel_series`` sums the Whittaker series in either of
its two published coefficient variants. ``kernel_closed`` dispatches to the
Macdonald-function closed forms that exist for special parameters.

The common prefactor carries cot(pi sigma_hat) for even n. When sigma_hat is
an integer at which (sigma_hat)_{n-1} vanishes, the product
cot(pi sigma_hat) (sigma_hat)_{n-1} is replaced by its limit
(1/pi) d/dsigma_hat (sigma_hat)_{n-1}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .bessel import bessel_k_result, hankel
from .confluent import whittaker_w
from .hypergeom import SeriesResult, hyp_pfq, terminating_index
from .legendre import legendre_p_offset
from .numerics import (
    DEFAULT_TOL,
    DomainError,
    PoleError,
    Tolerance,
    _sin_pi,
    as_integer,
    gamma,
    pochhammer,
)
from .quadrature import QuadratureResult, integrate_semi_infinite

__all__ = [
    "KernelParams",
    "KernelValue",
    "VARIANTS",
    "cot_pochhammer",
    "kernel_prefactor",
    "kernel_integral",
    "kernel_series",
    "kernel_closed",
    "kernel_closed_imaginary",
    "closed_form_pattern",
    "NoClosedFormError",
]

VARIANTS = ("lemma-statement", "proof-eq-b")
SERIES_MAX_TERMS = 200
# integrand nodes with u (t - 1) beyond this margin are dropped
_TAIL_MARGIN = 50.0


class NoClosedFormError(LookupError):
    """No closed form is known for the requested parameters."""


@dataclass(frozen=True)
class KernelParams:
    """Arguments (u, n, k0, sigma, sigma_hat) of one kernel evaluation."""

    u: float
    n: int
    k0: int
    sigma: complex
    sigma_hat: complex

    def __post_init__(self):
        if not (isinstance(self.u, (int, float)) and self.u > 0 and math.isfinite(self.u)):
            raise DomainError(f"u must be a positive real number, got {self.u!r}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        if int(self.k0) != self.k0 or self.k0 < 0:
            raise DomainError(f"k0 must be a nonnegative integer, got {self.k0!r}")
        object.__setattr__(self, "u", float(self.u))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k0", int(self.k0))
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "sigma_hat", complex(self.sigma_hat))

    @property
    def eta(self) -> int:
        return self.n % 2

    def with_u(self, u: float) -> "KernelParams":
        return KernelParams(u, self.n, self.k0, self.sigma, self.sigma_hat)

    def as_dict(self) -> dict:
        return {"u": self.u, "n": self.n, "k0": self.k0, "sigma": self.sigma, "sigma_hat": self.sigma_hat}


@dataclass(frozen=True)
class KernelValue:
    """A kernel value with the method that produced it and its diagnostics."""

    value: complex
    method: str
    diagnostics: object
    variant: str | None = None
    formula: str | None = None
    notes: str = field(default="", compare=False)

    @property
    def converged(self) -> bool:
        return bool(getattr(self.diagnostics, "converged", True))


def _cot_pi(z: complex) -> complex:
    return _sin_pi(z + 0.5) / _sin_pi(z)


def cot_pochhammer(sigma_hat, n: int) -> complex:
    """cot(pi sigma_hat) (sigma_hat)_{n-1}, with the finite limit where it is 0 * oo.

    Raises
    ------
    PoleError
        ``sigma_hat`` is an integer and (sigma_hat)_{n-1} does not vanish.
    """
    sh = complex(sigma_hat)
    m = as_integer(sh)
    if m is None:
        return _cot_pi(sh) * pochhammer(sh, n - 1)
    factors = [m + k for k in range(n - 1)]
    if 0 not in factors:
        raise PoleError(f"cot(pi sigma_hat) has a pole at sigma_hat = {m} and (sigma_hat)_{n - 1} != 0")
    # derivative of the product at its simple zero, over pi
    acc = 1.0
    for f in factors:
        if f != 0:
            acc *= f
    return complex(acc / math.pi)


def _parity_factor(p: KernelParams) -> complex:
    if p.eta == 0:
        return (-1) ** (p.n // 2) * cot_pochhammer(p.sigma_hat, p.n)
    return (-1) ** ((p.n + 1) // 2) * pochhammer(p.sigma_hat, p.n - 1)


def kernel_prefactor(p: KernelParams) -> complex:
    """Bracketed parity factor times (i/2) (-sigma)_{k0} (sigma_hat)_{n-1} (sigma_hat + n - 1)_{k0}.

    For even n the cotangent is folded together with (sigma_hat)_{n-1} by
    :func:`cot_pochhammer`.
    """
    return (_parity_factor(p) * 0.5j * pochhammer(-p.sigma, p.k0)
            * pochhammer(p.sigma_hat + p.n - 1, p.k0))


def _legendre_degrees(p: KernelParams):
    half = 0.5 * p.n
    return half + p.sigma - 1.0, -half - p.sigma_hat, complex(1.0 - p.k0 - half)


def kernel_integral(p: KernelParams, tol: Tolerance = DEFAULT_TOL) -> KernelValue:
    """Kernel from its integral representation over t in (1, oo).

    prefactor * int_1^oo P^mu_{n/2+sigma-1}(t) P^mu_{-n/2-sigma_hat}(t) exp(-u t) dt,
    mu = 1 - k0 - n/2. A vanishing prefactor returns exact zero with no
    quadrature.
    """
    pre = kernel_prefactor(p)
    if pre == 0:
        return KernelValue(0j, "integral", QuadratureResult(0j, 0.0, 0, True), formula="ir",
                           notes="prefactor vanishes")
    nu1, nu2, mu = _legendre_degrees(p)
    u = p.u
    growth = abs(nu1) + abs(nu2) + abs(mu) + 2.0
    leg_tol = tol.tightened(100.0)

    def f(s):
        out = np.zeros(s.shape, dtype=complex)
        live = u * s <= _TAIL_MARGIN + growth * np.log(2.0 + s)
        if live.any():
            sl = s[live]
            out[live] = (legendre_p_offset(nu1, mu, sl, leg_tol) * legendre_p_offset(nu2, mu, sl, leg_tol)
                         * np.exp(-u * sl))
        return out

    q = integrate_semi_infinite(f, 0.0, u, tol)
    value = pre * math.exp(-u) * q.value
    return KernelValue(complex(value), "integral", q, formula="ir")


def _series_terms(p: KernelParams, variant: str):
    """Parameters of the i-th series term: coefficient step, 4F3 and W indices."""
    n, k0, s, sh = p.n, p.k0, p.sigma, p.sigma_hat
    half = 0.5 * n
    a1, a2 = 1.0 - s - half, k0 - s
    extra = half + k0 if variant == "proof-eq-b" else None
    if p.eta == 0:
        def hyp(i):
            return [1.0 - half - k0 - i, 1.0 + sh - half, k0 - sh, -i], [half + k0, half + s - i, 1.0 + s - k0 - i]

        def windex(i):
            return 0.5 * (s + sh) - k0 - i, 0.5 * (n + s + sh - 1.0)
    else:
        sign = -1.0 if variant == "lemma-statement" else 1.0

        def hyp(i):
            return ([1.0 - half - k0 - i, half + sh, n + k0 + sh - 1.0, -i],
                    [half + k0, half + sign * s - i, 1.0 + s - k0 - i])

        def windex(i):
            return 0.5 * (1.0 + s - sh - n) - k0 - i, 0.5 * (s - sh)
    return a1, a2, extra, hyp, windex


def _series_prefactor(p: KernelParams, variant: str) -> complex:
    n, k0, s, sh = p.n, p.k0, p.sigma, p.sigma_hat
    g = gamma(0.5 * n + k0)
    common = 1j * pochhammer(-s, k0) * pochhammer(sh + n - 1, k0) / g
    if variant == "proof-eq-b":
        common /= g
    log2u = math.log(2.0 * p.u)
    if p.eta == 0:
        return (-1) ** (n // 2) * cmath.exp(-0.5 * (n + s + sh) * log2u) * cot_pochhammer(sh, n) * common
    return (-1) ** ((n + 1) // 2) * cmath.exp(0.5 * (sh - s - 1.0) * log2u) * pochhammer(sh, n - 1) * common


def kernel_series(p: KernelParams, variant: str = "lemma-statement", tol: Tolerance = DEFAULT_TOL,
                  max_terms: int = SERIES_MAX_TERMS) -> KernelValue:
    """Kernel from the Whittaker series.

    Parameters
    ----------
    p : KernelParams
    variant : {"lemma-statement", "proof-eq-b"}
        ``"proof-eq-b"`` inserts 1/(n/2 + k0)_i into the coefficients, divides
        by a second Gamma(n/2 + k0) and, for odd n, uses n/2 + sigma - i in
        place of n/2 - sigma - i among the 4F3 denominators.
    tol : Tolerance
    max_terms : int
        Cap for nonterminating sums. Non-convergence is reported through
        ``diagnostics.converged`` rather than raised.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    pre = _series_prefactor(p, variant)
    if pre == 0:
        return KernelValue(0j, "series", SeriesResult(0j, 0, 0.0, True), variant=variant,
                           notes="prefactor vanishes")
    a1, a2, extra, hyp, windex = _series_terms(p, variant)
    stop = terminating_index([a1, a2])
    limit = max_terms if stop is None else min(stop + 1, max_terms)
    z = 2.0 * p.u
    wtol = tol.tightened(10.0)
    coef = 1.0 + 0j
    total = 0j
    small = 0
    last = 0.0
    used = 0
    converged = stop is not None and stop + 1 <= max_terms
    for i in range(limit):
        if i > 0:
            coef *= (a1 + i - 1) * (a2 + i - 1) / i
            if extra is not None:
                coef /= extra + i - 1
        used = i + 1
        if coef == 0:
            term = 0j
        else:
            num, den = hyp(i)
            try:
                f = hyp_pfq(num, den, 1.0, tol).value
            except PoleError as exc:
                raise PoleError(f"4F3 of series term {i} has a pole: {exc}") from exc
            kappa, mu = windex(i)
            term = coef * f * whittaker_w(kappa, mu, z, wtol) if f != 0 else 0j
        total += term
        last = abs(term)
        if stop is None:
            if last <= tol.threshold(abs(total)):
                small += 1
                if small == 3:
                    converged = True
                    break
            else:
                small = 0
    tail = 0.0 if (stop is not None and converged) else 2.0 * last
    diag = SeriesResult(complex(pre * total), used, tail * abs(pre), converged)
    return KernelValue(complex(pre * total), "series", diag, variant=variant,
                       notes="" if converged else f"not converged in {max_terms} terms")


def closed_form_pattern(p: KernelParams) -> str | None:
    """Name of the closed form covering ``p``, or None."""
    if p.k0 != 0:
        return None
    if p.eta == 0:
        if p.sigma_hat == 0:
            return "a3" if p.sigma == 0 else "a2"
        if p.sigma == 0:
            return "thm4"
        return None
    if p.sigma == 0:
        return "kf1"
    if p.sigma_hat == 0:
        return "kf2"
    return None


def kernel_closed(p: KernelParams, tol: Tolerance = DEFAULT_TOL, kf2_factor: str = "printed") -> KernelValue:
    """Kernel from the Macdonald-function closed form matching ``p``.

    Patterns (all with k0 = 0): even n with sigma_hat = 0 ("a2", "a3" when
    also sigma = 0); even n with sigma = 0 ("thm4"); odd n with sigma = 0
    ("kf1"); odd n with sigma_hat = 0 ("kf2").

    ``kf2_factor`` selects the constant of the "kf2" form: ``"printed"``
    uses (0)_{n-1}, which vanishes for n >= 3; ``"factorial"`` uses (n-2)!.

    Raises
    ------
    NoClosedFormError
        No pattern matches.
    """
    pattern = closed_form_pattern(p)
    if pattern is None:
        raise NoClosedFormError(f"no closed form for {p}")
    n, u, s, sh = p.n, p.u, p.sigma, p.sigma_hat
    half = 0.5 * n
    notes = ""
    if pattern in ("a2", "a3"):
        order = 0.5 * (n - 1) + s
        c = (-1) ** (n // 2) * 1j * (2.0 * u) ** (0.5 * (1 - n)) * math.factorial(n - 2) / (
            math.pi ** 1.5 * gamma(half))
    elif pattern == "thm4":
        order = sh + 0.5 * (n - 1)
        c = (-1) ** (n // 2) * 1j * cot_pochhammer(sh, n) / (
            (2.0 * u) ** (0.5 * (n - 1)) * math.sqrt(math.pi) * gamma(half))
    else:
        if pattern == "kf1":
            order, lead = sh + 0.5 * (n - 1), pochhammer(sh, n - 1)
        else:
            order = s + 0.5 * (n - 1)
            if kf2_factor == "printed":
                lead = pochhammer(0, n - 1)
                if n >= 3:
                    notes = "printed factor (0)_{n-1} vanishes"
            elif kf2_factor == "factorial":
                lead = math.factorial(n - 2) if n >= 2 else 1.0
            else:
                raise ValueError("kf2_factor must be 'printed' or 'factorial'")
        c = (-1) ** ((n + 1) // 2) * 1j * lead / (
            (2.0 * u) ** (0.5 * (n - 1)) * math.sqrt(math.pi) * gamma(half))
    if c == 0:
        return KernelValue(0j, "closed", QuadratureResult(0j, 0.0, 0, True), formula=pattern, notes=notes)
    k = bessel_k_result(order, u, tol)
    return KernelValue(complex(c * k.value), "closed", k, formula=pattern, notes=notes)


def kernel_closed_imaginary(omega: float, n: int, eta: int, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Hankel closed form of the kernel at u = (-1)^(eta+1) i omega for even n, k0 = sigma = sigma_hat = 0.

    Evaluates, as printed,
    (-1)^(n/2) 2^(-(n+1)/2) omega^((1-n)/2) pi^(-1/2) i^((n+1)/2) (n-1)! / Gamma(n/2) H^(1+eta)_{(1-n)/2}(omega).
    """
    if n % 2 or n < 2:
        raise DomainError("the Hankel closed form needs even n >= 2")
    if eta not in (0, 1):
        raise ValueError("eta must be 0 or 1")
    if not omega > 0:
        raise DomainError("omega must be positive")
    c = ((-1) ** (n // 2) * 2.0 ** (-0.5 * (n + 1)) * omega ** (0.5 * (1 - n)) / math.sqrt(math.pi)
         * cmath.exp(0.25j * math.pi * (n + 1)) * math.factorial(n - 1) / gamma(0.5 * n))
    return complex(c * hankel(1 + eta, 0.5 * (1 - n), omega, tol))
