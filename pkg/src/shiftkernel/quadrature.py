"""Double-exponential quadrature.

tanh-sinh for finite intervals and exp-sinh for [a, oo). Each level halves
the step of the trapezoidal rule in the transformed variable and reuses all
previous abscissae; the error estimate is the difference between successive
levels. Abscissae are generated deterministically and summed in a fixed
order, so results are bit-reproducible.

Integrands are called with numpy arrays (``vectorized=True``, the default)
or one float at a time. Integrands with endpoint singularities should ask for
the distance to the endpoint (``with_offset`` / ``with_offsets``) instead of
recomputing it from the rounded abscissa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import DEFAULT_TOL, ConvergenceError, IntegrandError, Tolerance

__all__ = [
    "QuadratureResult",
    "integrate_semi_infinite",
    "integrate_finite",
    "integrate_double",
]

UNDERFLOW = 1e-300
_HALF_PI = 0.5 * math.pi
_EPS = 2.0**-52

# transformed-variable windows; outside them the weights vanish in double
_EXPSINH_RANGE = (-6.5, 3.2)
_TANHSINH_RANGE = (-6.0, 6.0)
_H0 = 0.5
_TRIM_REL = 1e-20


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int
    converged: bool
    level_errors: tuple = field(default=(), compare=False)


def _call(f, args, vectorized):
    if vectorized:
        vals = f(*args)
        vals = np.asarray(vals, dtype=complex)
        if vals.shape != args[0].shape:
            vals = np.broadcast_to(vals, args[0].shape).astype(complex)
        return vals
    return np.array([complex(f(*(a[i] for a in args))) for i in range(args[0].size)], dtype=complex)


def _call_vector(f, args):
    vals = np.asarray(f(*args), dtype=complex)
    if vals.ndim != 2 or vals.shape[0] != args[0].shape[0]:
        raise ValueError("vector-valued integrand must return shape (len(x), m)")
    return vals


def _check(vals, x):
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        if bad.ndim > 1:
            i = int(np.argmax(bad.any(axis=1)))
        raise IntegrandError("integrand returned a non-finite value", float(x[i]))
    vals[np.abs(vals) < UNDERFLOW] = 0.0
    return vals


def _de_levels(transform, s_range, tol: Tolerance, strict: bool, label: str) -> QuadratureResult:
    """Refine the trapezoidal rule on the transformed line until converged.

    ``transform(s)`` returns the weighted integrand values at the nodes ``s``,
    shape ``(len(s),)`` or ``(len(s), m)`` for vector-valued integrands.
    """
    s_lo, s_hi = s_range
    h = _H0
    total = 0j
    total_abs = 0.0
    evals = 0
    prev = None
    prev_err = None
    errors = []
    level = 0
    lo_k, hi_k = math.ceil(s_lo / h), math.floor(s_hi / h)
    s = np.arange(lo_k, hi_k + 1, dtype=float) * h
    sig_lo, sig_hi = s_lo, s_hi
    while True:
        contrib = transform(s)
        evals += s.size
        total = total + contrib.sum(axis=0)
        mags = np.abs(contrib)
        if mags.ndim > 1:
            mags = mags.max(axis=1)
        total_abs += mags.sum()
        value = h * total
        if level == 1:
            # drop the parts of the window whose contributions are negligible
            nodes = np.concatenate([prev_nodes, s])
            allm = np.concatenate([prev_mags, mags])
            top = allm.max() if allm.size else 0.0
            if top > 0:
                keep = nodes[allm > _TRIM_REL * top]
                sig_lo = max(s_lo, keep.min() - 0.5)
                sig_hi = min(s_hi, keep.max() + 0.5)
        if prev is not None:
            err = float(np.max(np.abs(value - prev)))
            errors.append(err)
            thr = max(tol.rel_target * float(np.max(np.abs(value))), tol.abs_floor, 64 * _EPS * h * total_abs)
            if err <= thr and prev_err is not None and prev_err <= thr:
                return QuadratureResult(value, err, evals, True, tuple(errors))
            prev_err = err
        prev = value
        prev_nodes, prev_mags = s, mags
        level += 1
        h *= 0.5
        j_lo = math.ceil((sig_lo / h - 1) / 2)
        j_hi = math.floor((sig_hi / h - 1) / 2)
        s = (2.0 * np.arange(j_lo, j_hi + 1, dtype=float) + 1.0) * h
        if evals + s.size > tol.max_evals:
            result = QuadratureResult(value, errors[-1] if errors else math.inf, evals, False, tuple(errors))
            if strict:
                raise ConvergenceError(f"{label}: not converged within {tol.max_evals} evaluations", result)
            return result


def integrate_semi_infinite(f, a: float = 0.0, decay_scale: float = 1.0, tol: Tolerance = DEFAULT_TOL,
                            *, vectorized: bool = True, with_offset: bool = False,
                            strict: bool = True) -> QuadratureResult:
    """Integrate ``f`` over [a, oo) with the exp-sinh rule.

    The substitution is t = a + exp(pi/2 sinh s) / decay_scale, so
    ``decay_scale`` should be comparable to the exponential decay rate of
    ``f``. With ``with_offset=True`` the integrand is called as
    ``f(t, t - a)`` where the offset is exact even when ``t`` rounds to ``a``.
    """
    if not decay_scale > 0:
        raise ValueError("decay_scale must be positive")
    length = 1.0 / decay_scale

    def transform(s):
        e = np.exp(_HALF_PI * np.sinh(s))
        off = length * e
        ok = (off > 0) & np.isfinite(off)
        out = np.zeros(s.shape, dtype=complex)
        if not ok.any():
            return out
        off_ok = off[ok]
        t = a + off_ok
        args = (t, off_ok) if with_offset else (t,)
        vals = _check(_call(f, args, vectorized), t)
        w = off_ok * _HALF_PI * np.cosh(s[ok])
        out[ok] = w * vals
        return out

    return _de_levels(transform, _EXPSINH_RANGE, tol, strict, "semi-infinite quadrature")


def integrate_finite(f, a: float, b: float, tol: Tolerance = DEFAULT_TOL, *, vectorized: bool = True,
                     with_offsets: bool = False, strict: bool = True, n_out: int | None = None) -> QuadratureResult:
    """Integrate ``f`` over [a, b] with the tanh-sinh rule.

    With ``with_offsets=True`` the integrand is called as
    ``f(x, x - a, b - x)``; otherwise abscissae that round onto an endpoint
    are skipped. With ``n_out=m`` the integrand returns an array of shape
    ``(len(x), m)`` and ``value`` is a length-``m`` array; convergence is
    judged on the largest component.
    """
    if n_out is not None and (a == b or b < a):
        raise ValueError("vector-valued integration needs a < b")
    if a == b:
        return QuadratureResult(0j, 0.0, 0, True)
    if b < a:
        if with_offsets:
            raise ValueError("with_offsets requires a < b")
        r = integrate_finite(f, b, a, tol, vectorized=vectorized, strict=strict)
        return QuadratureResult(-r.value, r.abs_error_estimate, r.evaluations, r.converged, r.level_errors)
    half = 0.5 * (b - a)

    def transform(s):
        y = _HALF_PI * np.sinh(s)
        ey = np.exp(-2.0 * np.abs(y))
        # distances to the nearer and farther endpoint
        near = 2.0 * half * ey / (1.0 + ey)
        far = 2.0 * half / (1.0 + ey)
        xa = np.where(y < 0, near, far)
        xb = np.where(y < 0, far, near)
        x = np.where(y < 0, a + xa, b - xb)
        w = half * _HALF_PI * np.cosh(s) * 4.0 * ey / (1.0 + ey) ** 2
        ok = (near > 0) & (w > 0)
        if not with_offsets:
            ok &= (x > a) & (x < b)
        out = np.zeros(s.shape if n_out is None else (s.size, n_out), dtype=complex)
        if not ok.any():
            return out
        args = (x[ok], xa[ok], xb[ok]) if with_offsets else (x[ok],)
        if n_out is None:
            out[ok] = w[ok] * _check(_call(f, args, vectorized), x[ok])
        else:
            out[ok] = w[ok][:, None] * _check(_call_vector(f, args), x[ok])
        return out

    return _de_levels(transform, _TANHSINH_RANGE, tol, strict, "finite quadrature")


def integrate_double(f, outer, inner, tol: Tolerance = DEFAULT_TOL, *, strict: bool = True,
                     outer_decay: float = 1.0, inner_decay: float = 1.0) -> QuadratureResult:
    """Iterated integral  int_outer dx  int_inner dy  f(x, y).

    ``outer`` and ``inner`` are ``(lo, hi)`` pairs; ``hi`` may be ``math.inf``.
    ``f(x, y)`` receives a float ``x`` and an array ``y``. The inner integrals
    run with a tolerance ten times tighter than the outer one. Failures are
    raised as :class:`ConvergenceError` naming the failing layer.
    """
    (a, b), (c, d) = outer, inner
    if a == b:
        return QuadratureResult(0j, 0.0, 0, True)
    inner_tol = tol.tightened(10.0)
    count = [0]

    def g(x):
        vals = np.empty(x.shape, dtype=complex)
        for i, xi in enumerate(x):
            xi = float(xi)
            try:
                r = (integrate_semi_infinite(lambda y: f(xi, y), c, inner_decay, inner_tol)
                     if math.isinf(d) else integrate_finite(lambda y: f(xi, y), c, d, inner_tol))
            except ConvergenceError as exc:
                raise ConvergenceError(f"inner layer failed at x = {xi!r}: {exc}", exc.partial) from exc
            count[0] += r.evaluations
            vals[i] = r.value
        return vals

    try:
        if math.isinf(b):
            res = integrate_semi_infinite(g, a, outer_decay, tol, strict=strict)
        else:
            res = integrate_finite(g, a, b, tol, strict=strict)
    except ConvergenceError as exc:
        if str(exc).startswith("inner layer"):
            raise
        raise ConvergenceError(f"outer layer failed: {exc}", exc.partial) from exc
    return QuadratureResult(res.value, res.abs_error_estimate, res.evaluations + count[0],
                            res.converged, res.level_errors)
