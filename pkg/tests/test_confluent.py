import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from shiftkernel.confluent import MAX_LIFT, parabolic_d, tricomi_u, tricomi_u_scaled, whittaker_w
from shiftkernel.numerics import DomainError


def rel(a, b):
    return abs(a - b) / abs(b)


# [TRIVIAL]
def test_u_power_case():
    assert abs(tricomi_u(1, 2, 2) - 0.5) < 1e-13


def test_u_a_zero():
    assert tricomi_u(0, 3.3, 1.2) == 1


# [DERIVED] scipy quad oracle for e E1(1)
def test_u_111_quadrature_oracle():
    val, _ = integrate.quad(lambda t: math.exp(-t) / (1 + t), 0, math.inf, epsabs=1e-14, epsrel=1e-14)
    assert abs(tricomi_u(1, 1, 1) - val) < 1e-10
    assert abs(val - 0.5963473624) < 1e-10


@pytest.mark.parametrize("a,b,z", [
    (0.5, 0.5, 2.0), (2.5, -1.3, 0.7), (-3.7, 0.5, 2.0), (-4, 1.5, 3.0), (0.3 + 1j, 2 - 0.5j, 1.5),
    (150.5, 0.5, 2.0), (1.2, 3.4, 30.0), (-0.5 + 2j, 0.5, 0.25 + 0.1j),
])
def test_u_matches_mpmath(a, b, z):
    assert rel(tricomi_u(a, b, z), complex(mp.hyperu(a, b, z))) < 1e-9


def test_u_scaled_avoids_underflow():
    # exp(-800) U(1, 1, 1) underflows as a product but not in log space
    v = tricomi_u_scaled(1, 1, 1, -800 + math.log(1e300))
    assert rel(v, math.exp(-800 + math.log(1e300)) * 0.5963473623231940) < 1e-9


def test_u_needs_positive_real_z():
    with pytest.raises(DomainError):
        tricomi_u(1, 1, -1)


def test_u_lift_limit():
    with pytest.raises(DomainError):
        tricomi_u(-MAX_LIFT - 10.5, 0.3, 1.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-2, 2), st.floats(0.3, 6))
def test_kummer_relation(a, b, z):
    lhs = tricomi_u(a, b, z)
    rhs = z ** (1 - b) * tricomi_u(1 + a - b, 2 - b, z)
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), 1e-300)


# [TRIVIAL] W_{1,1/2}(2) = 2 e^-1
def test_whittaker_trivial():
    assert abs(whittaker_w(1, 0.5, 2) - 2 / math.e) < 1e-14


# [DERIVED] from K_{1/2} closed form
def test_whittaker_bessel_relation():
    assert abs(whittaker_w(0, 0.5, 2) - math.exp(-1)) < 1e-12


def test_whittaker_mu_symmetry_example():
    assert rel(whittaker_w(0.3, 0.7, 1.5), whittaker_w(0.3, -0.7, 1.5)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.5, 5), st.floats(-1, 1))
def test_whittaker_mu_symmetry(kappa, mu, x, y):
    z = complex(x, y)
    a, b = whittaker_w(kappa, mu, z), whittaker_w(kappa, -mu, z)
    assert abs(a - b) <= 1e-9 * max(abs(a), 1e-300)


@pytest.mark.parametrize("kappa,mu,z", [(0.3, 0.7, 1.5), (-2.25, 1.5, 4.0), (1.5 + 0.5j, 0.2j, 2.0)])
def test_whittaker_matches_mpmath(kappa, mu, z):
    assert rel(whittaker_w(kappa, mu, z), complex(mp.whitw(kappa, mu, z))) < 1e-9


@pytest.mark.parametrize("kappa,mu", [(0.3, 0.7), (-1.2, 0.25), (1.5, 2.0)])
def test_whittaker_asymptotics(kappa, mu):
    devs = []
    for z in (50.0, 100.0, 200.0):
        w = whittaker_w(kappa, mu, z)
        devs.append(abs(w * math.exp(z / 2) * z ** (-kappa) - 1) * z)
    # |W e^{z/2} z^-kappa - 1| <= C / z with C near |(mu^2 - (kappa - 1/2)^2)|
    c = abs(mu ** 2 - (kappa - 0.5) ** 2)
    assert max(devs) <= 1.5 * c + 1e-6


# [TRIVIAL]
def test_parabolic_d0():
    assert abs(parabolic_d(0, 2) - math.exp(-1)) < 1e-14


# [DERIVED] D_{-1}(z) = e^{z^2/4} int_z^oo e^{-s^2/2} ds via scipy erfc
@pytest.mark.parametrize("z", [1.0, 2.0, 0.3])
def test_parabolic_d_minus_one(z):
    ref = math.exp(z * z / 4) * math.sqrt(math.pi / 2) * special.erfc(z / math.sqrt(2))
    assert rel(parabolic_d(-1, z), ref) < 1e-10


def test_parabolic_d_spec_examples_are_misstated():
    # the quoted 0.5073 and 0.0900696 do not satisfy the stated oracle
    assert abs(parabolic_d(-1, 1) - 0.5107) < 1e-4
    assert abs(parabolic_d(-1, 2) - 0.1550) < 1e-4


@pytest.mark.parametrize("nu,z", [(-1001, 2.0), (2.5, 1.5), (-0.5 + 1j, 0.8), (7, 3.0)])
def test_parabolic_d_matches_mpmath(nu, z):
    ref = complex(mp.pcfd(nu, z))
    got = parabolic_d(nu, z)
    if abs(ref) < 1e-300:
        assert abs(got) < 1e-300
    else:
        assert rel(got, ref) < 1e-9
