"""Generalized hypergeometric series.

``hyp_pfq`` sums the pFq series term by term with an explicit
termination check; ``hyp_2f1_cont`` extends 2F1 to the negative real axis
with the Pfaff transformation; ``hyp2f1_pfaff_array`` is the vectorized
variant used by the Legendre integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    ConvergenceError,
    DomainError,
    PoleError,
    Tolerance,
    is_nonpositive_integer,
)

__all__ = [
    "SeriesResult",
    "DivergenceError",
    "hyp_pfq",
    "hyp_pfq_zero_param",
    "hyp_2f1_cont",
    "hyp2f1_pfaff_array",
    "terminating_index",
]


class DivergenceError(ConvergenceError):
    """The series has zero radius of convergence (or |z| is beyond it)."""


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float
    converged: bool


def _near_int_tol(x: complex, tol: Tolerance) -> float:
    return max(tol.abs_floor, 8 * 2.0**-52 * abs(x))


def terminating_index(num, tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Smallest m such that some numerator parameter equals -m, or None."""
    best = None
    for a in num:
        a = complex(a)
        if is_nonpositive_integer(a, _near_int_tol(a, tol)):
            m = -int(round(a.real))
            best = m if best is None else min(best, m)
    return best


def hyp_pfq_zero_param(num, den, z) -> complex:
    """Value of a pFq having an exact zero among its numerator parameters.

    Every term past the first carries the factor (0)_n = 0, so the value is
    exactly 1 regardless of the other parameters and of ``z``.
    """
    if not any(complex(a) == 0 for a in num):
        raise ValueError("no numerator parameter equals 0")
    return 1.0 + 0j


def _geometric_tail(term: float, ratio: float) -> float:
    """Tail bound |term| r / (1 - r) for term ratio r; infinite while terms grow."""
    if ratio >= 1.0:
        return math.inf
    return term * ratio / (1.0 - ratio)


def hyp_pfq(num, den, z, tol: Tolerance = DEFAULT_TOL) -> SeriesResult:
    """Sum the generalized hypergeometric series pFq(num; den; z).

    Parameters
    ----------
    num, den : sequences of complex
        Numerator and denominator parameters.
    z : complex
        Argument.
    tol : Tolerance
        ``rel_target`` drives the stopping rule: three consecutive terms
        whose geometric tail bound |term| r / (1 - r), with r the current
        term ratio, is below ``rel_target * |partial sum|``. ``max_terms``
        caps the work.

    Terminating series (a numerator equal to -m) are summed exactly through
    index m. A zero numerator parameter returns exactly 1.

    Raises
    ------
    PoleError
        A denominator parameter -d is reached before the series terminates.
    DivergenceError
        p > q + 1, or p = q + 1 with |z| > 1, for a nonterminating series.
    ConvergenceError
        The stopping rule was not met within ``max_terms`` terms.
    """
    num = [complex(a) for a in num]
    den = [complex(b) for b in den]
    z = complex(z)
    if any(a == 0 for a in num):
        return SeriesResult(1.0 + 0j, 1, 0.0, True)
    m = terminating_index(num, tol)
    for b in den:
        if is_nonpositive_integer(b, _near_int_tol(b, tol)):
            d = -int(round(b.real))
            if m is None or m > d:
                raise PoleError(f"denominator parameter {b!r} is a pole of the series")
    if z == 0:
        return SeriesResult(1.0 + 0j, 1, 0.0, True)
    p, q = len(num), len(den)
    if m is None:
        if p > q + 1:
            raise DivergenceError(f"{p}F{q} series diverges for z != 0")
        if p == q + 1 and abs(z) > 1:
            raise DivergenceError(f"{p}F{q} series diverges for |z| = {abs(z):g} > 1")

    term = 1.0 + 0j
    total = 1.0 + 0j
    if m is not None:
        if m + 1 > tol.max_terms:
            raise ConvergenceError(f"terminating series needs {m + 1} terms > max_terms")
        for n in range(m):
            ratio = z / (n + 1)
            for a in num:
                ratio *= a + n
            for b in den:
                ratio /= b + n
            term *= ratio
            total += term
        return SeriesResult(total, m + 1, 0.0, True)

    small = 0
    for n in range(tol.max_terms - 1):
        ratio = z / (n + 1)
        for a in num:
            ratio *= a + n
        for b in den:
            ratio /= b + n
        term *= ratio
        total += term
        tail = _geometric_tail(abs(term), abs(ratio))
        if tail <= tol.threshold(abs(total)):
            small += 1
            if small == 3:
                return SeriesResult(total, n + 2, tail, True)
        else:
            small = 0
    partial = SeriesResult(total, tol.max_terms, abs(term), False)
    raise ConvergenceError(f"{p}F{q} not converged in {tol.max_terms} terms", partial)


def hyp_2f1_cont(a, b, c, z: float, tol: Tolerance = DEFAULT_TOL, method: str = "auto") -> SeriesResult:
    """Gauss 2F1(a, b; c; z) for real z < 1.

    ``method="auto"`` sums the series directly for 0 <= z < 1 (and for
    terminating series) and applies the Pfaff transformation
    2F1(a, b; c; z) = (1 - z)^(-a) 2F1(a, c - b; c; z / (z - 1)) for z < 0,
    which maps the negative axis into [0, 1). ``"direct"`` and ``"pfaff"``
    force one route.
    """
    if isinstance(z, complex):
        if z.imag != 0:
            raise DomainError("hyp_2f1_cont supports real z only")
        z = z.real
    z = float(z)
    if not z < 1.0:
        raise DomainError(f"hyp_2f1_cont needs z < 1, got {z}")
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0 or b == 0:
        return SeriesResult(1.0 + 0j, 1, 0.0, True)
    if method not in ("auto", "direct", "pfaff"):
        raise ValueError(f"unknown method {method!r}")
    terminating = terminating_index([a, b], tol) is not None
    if method == "direct" or (method == "auto" and (z >= 0.0 or terminating)):
        if z <= -1.0 and not terminating:
            raise DomainError("direct series needs |z| < 1 unless terminating")
        return hyp_pfq([a, b], [c], z, tol)
    if terminating_index([b], tol) is not None and terminating_index([a], tol) is None:
        a, b = b, a
    w = z / (z - 1.0)
    try:
        inner = hyp_pfq([a, c - b], [c], w, tol)
    except PoleError as exc:
        raise PoleError(f"transformed series hits a pole: {exc}") from exc
    scale = (1.0 - z) ** (-a)
    return SeriesResult(inner.value * scale, inner.terms_used,
                        inner.tail_estimate * abs(scale), inner.converged)


def hyp2f1_pfaff_array(a, b, c, z, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Vectorized 2F1(a, b; c; z) for an array of real z <= 0.

    Same transformation as :func:`hyp_2f1_cont`; points drop out of the
    working set once their own stopping rule is met.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z > 0):
        raise DomainError("hyp2f1_pfaff_array needs z <= 0")
    a, b, c = complex(a), complex(b), complex(c)
    out = np.ones(z.shape, dtype=complex)
    if a == 0 or b == 0 or z.size == 0:
        return out
    if terminating_index([b], tol) is not None and terminating_index([a], tol) is None:
        a, b = b, a
    bb = c - b
    m = terminating_index([a, bb], tol)
    if is_nonpositive_integer(c, _near_int_tol(c, tol)):
        d = -int(round(c.real))
        if m is None or m > d:
            raise PoleError(f"denominator parameter {c!r} is a pole of the series")
    flat = z.ravel()
    w = flat / (flat - 1.0)
    scale = np.exp(-a * np.log1p(-flat))
    total = np.ones(flat.shape, dtype=complex)
    term = np.ones(flat.shape, dtype=complex)
    if m is not None:
        for n in range(m):
            term = term * ((a + n) * (bb + n) / ((c + n) * (n + 1))) * w
            total += term
        return (total * scale).reshape(z.shape)

    active = np.arange(flat.size)
    small = np.zeros(flat.size, dtype=np.int8)
    wa = w.copy()
    for n in range(tol.max_terms - 1):
        coef = (a + n) * (bb + n) / ((c + n) * (n + 1))
        term = term * coef * wa
        total[active] += term
        r = np.abs(coef * wa)
        with np.errstate(divide="ignore"):
            tail = np.where(r < 1.0, np.abs(term) * r / (1.0 - r), np.inf)
        hit = tail <= np.maximum(tol.rel_target * np.abs(total[active]), tol.abs_floor)
        small = np.where(hit, small + 1, 0)
        keep = small < 3
        if not keep.all():
            active, term, wa, small = active[keep], term[keep], wa[keep], small[keep]
            if active.size == 0:
                return (total * scale).reshape(z.shape)
    raise ConvergenceError(f"2F1 array not converged in {tol.max_terms} terms; max z = {flat[active].min()}")
