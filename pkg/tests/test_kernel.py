import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftkernel.bessel import bessel_k
from shiftkernel.kernel import (
    SERIES_MAX_TERMS,
    VARIANTS,
    KernelParams,
    NoClosedFormError,
    closed_form_pattern,
    cot_pochhammer,
    kernel_closed,
    kernel_closed_imaginary,
    kernel_integral,
    kernel_prefactor,
    kernel_series,
)
from shiftkernel.numerics import DomainError, PoleError, pochhammer


def rel(a, b):
    return abs(a - b) / abs(b)


# [PAPER] -i e^{-u} / sqrt(2 pi u)
def test_c1_value():
    v = kernel_integral(KernelParams(1, 1, 0, -0.5, 0)).value
    assert rel(v, -1j * math.exp(-1) / math.sqrt(2 * math.pi)) < 1e-9
    assert abs(v.imag + 0.1467626) < 1e-7


# [TRIVIAL] prefactor zero short-circuits
def test_prefactor_zero_is_exact():
    r = kernel_integral(KernelParams(1.3, 2, 1, 0, 0.25))
    assert r.value == 0 and r.diagnostics.evaluations == 0


# [DERIVED] closed form with an independent K oracle
def test_n2_all_zero_value():
    ref = -1j * 2 ** -0.5 * math.pi ** -1.5 * float(mp.besselk(0.5, 1))
    for v in (kernel_integral(KernelParams(1, 2, 0, 0, 0)).value, kernel_closed(KernelParams(1, 2, 0, 0, 0)).value):
        assert rel(v, ref) < 1e-9
    # the value quoted as -0.0585513i is a rounding slip; the formula gives -0.0585498i
    assert abs(ref.imag + 0.0585498) < 1e-7


def test_series_terminates_single_term():
    for var in VARIANTS:
        s = kernel_series(KernelParams(1, 2, 0, 0, 0), var)
        assert s.diagnostics.terms_used == 1 and s.converged


def test_series_three_terms_and_value():
    p = KernelParams(1, 2, 0, 2, 0)
    s = kernel_series(p, "lemma-statement")
    assert s.diagnostics.terms_used == 3 and s.diagnostics.tail_estimate == 0
    assert rel(s.value, kernel_integral(p).value) < 1e-7


def test_kf1_example_formula():
    p = KernelParams(2, 3, 0, 0, 1j)
    pre = 1j * (1j * (1j + 1)) / (4 * math.sqrt(math.pi) * math.gamma(1.5))
    ref = pre * complex(mp.besselk(1 + 1j, 2))
    c = kernel_closed(p)
    assert c.formula == "kf1" and rel(c.value, ref) < 1e-9
    assert rel(kernel_integral(p).value, ref) < 1e-7


def test_kf2_printed_form_vanishes():
    c = kernel_closed(KernelParams(1, 3, 0, 0.7, 0))
    assert c.value == 0 and "vanishes" in c.notes
    # and the integral agrees, because (sigma_hat)_{n-1} = (0)_2 also sits in its prefactor
    assert kernel_integral(KernelParams(1, 3, 0, 0.7, 0)).value == 0


def test_kf2_factorial_variant_nonzero():
    assert kernel_closed(KernelParams(1, 3, 0, 0.7, 0), kf2_factor="factorial").value != 0


@pytest.mark.parametrize("pattern,args", [
    ("a2", (2, 0, 0.3, 0)), ("a3", (4, 0, 0, 0)), ("thm4", (2, 0, 0, 0.3)),
    ("kf1", (3, 0, 0, -1 + 1j)), ("kf2", (1, 0, 0.7, 0)),
])
@pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
def test_closed_forms_match_integral(pattern, args, u):
    p = KernelParams(u, *args)
    assert closed_form_pattern(p) == pattern
    assert rel(kernel_closed(p).value, kernel_integral(p).value) < 1e-7


def test_no_closed_form():
    with pytest.raises(NoClosedFormError):
        kernel_closed(KernelParams(1, 2, 1, 0.3, 0.3))


def test_cot_pochhammer_limit_branch():
    # lim cot(pi s) (s)_{n-1} at s = 0 is (n-2)!/pi
    assert abs(cot_pochhammer(0, 2) - 1 / math.pi) < 1e-15
    assert abs(cot_pochhammer(0, 4) - 2 / math.pi) < 1e-15
    # s = -1, n = 4: (s)_3 = s(s+1)(s+2) has derivative (-1)(1) = -1 at the zero factor
    assert abs(cot_pochhammer(-1, 4) + 1 / math.pi) < 1e-15
    s = 0.3
    assert rel(cot_pochhammer(s, 3), pochhammer(s, 2) / cmath.tan(math.pi * s)) < 1e-14


def test_cot_pochhammer_pole():
    with pytest.raises(PoleError):
        cot_pochhammer(1, 4)


def test_limit_branch_first_order():
    base = kernel_integral(KernelParams(1, 2, 0, 0.5, 0)).value
    diffs = [abs(kernel_integral(KernelParams(1, 2, 0, 0.5, e)).value - base) for e in (1e-3, 1e-4, 1e-5)]
    for a, b in zip(diffs, diffs[1:]):
        assert 7 < a / b < 13


def test_kernel_params_validation():
    with pytest.raises(DomainError):
        KernelParams(0, 2, 0, 0, 0)
    with pytest.raises(DomainError):
        KernelParams(1, 0, 0, 0, 0)
    with pytest.raises(DomainError):
        KernelParams(1, 2, -1, 0, 0)
    assert KernelParams(1, 3, 0, 0, 0).eta == 1


def test_prefactor_parity():
    p = KernelParams(1, 3, 0, 0.2, 0.4)
    ref = (-1) ** 2 * 0.5j * pochhammer(0.4, 2)
    assert rel(kernel_prefactor(p), ref) < 1e-14


def test_series_cap():
    assert SERIES_MAX_TERMS == 200
    s = kernel_series(KernelParams(1, 2, 0, 0.5, 0.3), "lemma-statement")
    assert s.diagnostics.terms_used <= SERIES_MAX_TERMS


@settings(max_examples=15, deadline=None)
@given(st.floats(0.3, 3), st.sampled_from([2, 4]), st.floats(-0.4, 1.5))
def test_a2_closed_form_invariant(u, n, sigma):
    p = KernelParams(u, n, 0, sigma, 0)
    assert rel(kernel_closed(p).value, kernel_integral(p).value) < 1e-7


def test_hankel_closed_form_is_evaluable():
    v = kernel_closed_imaginary(1.0, 2, 0)
    assert math.isfinite(abs(v)) and v != 0
    with pytest.raises(DomainError):
        kernel_closed_imaginary(1.0, 3, 0)


def test_integral_depends_only_on_u():
    # same parameters at two u values are related by the closed form's u-dependence
    a, b = KernelParams(1.0, 2, 0, 0, 0), KernelParams(2.0, 2, 0, 0, 0)
    ratio = kernel_integral(b).value / kernel_integral(a).value
    ref = (2.0 ** -0.5) * bessel_k(0.5, 2.0) / bessel_k(0.5, 1.0)
    assert rel(ratio, ref) < 1e-9
