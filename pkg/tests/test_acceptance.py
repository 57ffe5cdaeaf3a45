"""Acceptance criteria at their stated tolerances; one summary line each."""

import math
import random
import time

import numpy as np
import pytest

from shiftkernel.bessel import bessel_i, bessel_k, hankel
from shiftkernel.cli import format_reports
from shiftkernel.identities import (
    CLOSED_FAMILIES,
    RATIO_SPREAD,
    SERIES_FAMILIES,
    SUITES,
    ratio_spread,
    run_suite,
    verify_hankel_relation,
)
from shiftkernel.numerics import gamma, pochhammer

pytestmark = pytest.mark.slow


@pytest.fixture(scope="session")
def full_run():
    """Every suite once, with per-suite wall time."""
    reports, timing = {}, {}
    for name in SUITES:
        t0 = time.perf_counter()
        reports[name] = run_suite(name)
        timing[name] = time.perf_counter() - t0
    return reports, timing


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_01_gamma_pochhammer(record):
    with record(1, "gamma reflection/recurrence at 1e-12; (0)_0 = 1, (0)_2 = 0"):
        rng = random.Random(20240601)
        for _ in range(100):
            z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
            if abs(z.imag) < 1e-3 and abs(z.real - round(z.real)) < 1e-3:
                continue
            refl = gamma(z) * gamma(1 - z)
            assert _rel(refl, math.pi / np.sin(math.pi * z)) <= 1e-12, z
            assert _rel(gamma(z + 1), z * gamma(z)) <= 1e-12, z
            lam, n = complex(rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.randint(0, 6)
            assert _rel(pochhammer(lam, n + 1), pochhammer(lam, n) * (lam + n)) <= 1e-12, (lam, n)
        assert pochhammer(0, 0) == 1
        assert pochhammer(0, 2) == 0


def test_criterion_02_theorem1_terminating(full_run, record):
    with record(2, "Theorem 1 terminating cases at 1e-9"):
        reps = [r for r in full_run[0]["thm1"]
                if r.params["n"] in (2, 4) and r.params["sigma"] in (0, 1, 2, 3)
                and r.params["u"] in (0.5, 1.0, 2.0, 5.0)]
        assert len(reps) == 32
        bad = [(r.params, r.rel_diff) for r in reps if not (r.status == "match" and r.rel_diff <= 1e-9)]
        assert not bad, bad


def test_criterion_03_theorem2(full_run, record):
    with record(3, "Theorem 2 partial sums within 1e-6, tails decaying beyond j = 5"):
        reps = full_run[0]["thm2"]
        assert [r.params["u"] for r in reps] == [0.25, 1.0, 4.0]
        bad = [(r.params["u"], r.status, r.rel_diff, r.notes.split(";")[0]) for r in reps if r.status != "match"]
        assert not bad, bad


def test_criterion_04_c1(full_run, record):
    with record(4, "c1 closed form at 1e-9"):
        reps = full_run[0]["c1"]
        assert sorted(r.params["u"] for r in reps) == [0.5, 1.0, 2.0, 4.0]
        assert all(r.status == "match" and r.rel_diff <= 1e-9 for r in reps), [r.rel_diff for r in reps]


def test_criterion_05_closed_forms(full_run, record):
    with record(5, "closed-form patterns at 1e-7 on 3x3 grids; kf2 audited"):
        reps = full_run[0]["closed"]
        for pattern in ("a2", "a3", "kf1"):
            sub = [r for r in reps if r.identity_id == f"closed-{pattern}"]
            assert len(sub) == 3 * len(CLOSED_FAMILIES[pattern]) == 9
            bad = [(r.params, r.rel_diff) for r in sub if not (r.status == "match" and r.rel_diff <= 1e-7)]
            assert not bad, (pattern, bad)
        kf2 = [r for r in reps if r.identity_id == "closed-kf2"]
        assert kf2 and all(r.status != "error" for r in kf2)
        flagged = [r for r in kf2 if r.params["n"] >= 3]
        assert flagged and all("(0)_{n-1}" in r.notes and "ratio" in r.notes for r in flagged)


def test_criterion_06_series_ratio_audit(full_run, record):
    with record(6, "series/integral ratio spread <= 1e-6 for every family"):
        reps = full_run[0]["series"]
        failing = []
        for n, k0, s, sh in SERIES_FAMILIES:
            fam = [r for r in reps if (r.params["n"], r.params["k0"], r.params["sigma"], r.params["sigma_hat"])
                   == (n, k0, s, sh)]
            assert len(fam) == 4 and all("selected" in r.notes for r in fam)
            if any(r.status == "error" for r in fam):
                failing.append(((n, k0, s, sh), "error"))
                continue
            spread = ratio_spread([r.ratio for r in fam])
            if not (spread <= RATIO_SPREAD and all(r.status in ("match", "constant-ratio") for r in fam)):
                failing.append(((n, k0, s, sh), f"{spread:.2e}"))
        assert not failing, f"{len(failing)} of {len(SERIES_FAMILIES)} families fail: {failing}"


def test_criterion_07_kl_weak_orthogonality(full_run, record):
    with record(7, "KL weak orthogonality within 1e-2, runtime <= 3 min"):
        (rep,) = full_run[0]["kl"]
        expected = math.pi ** 2 / (2.0 * math.sinh(math.pi))
        assert _rel(rep.lhs, expected) <= 1e-2, rep.lhs
        assert rep.status == "match"
        assert full_run[1]["kl"] <= 180.0, full_run[1]["kl"]


def test_criterion_08_cr_lemma(full_run, record):
    with record(8, "K_{i rho}(2 pi u)^2 integral at 1e-6"):
        reps = [r for r in full_run[0]["concluding"] if r.identity_id == "cr-lemma-2.3"]
        assert sorted(r.params["rho"] for r in reps) == [0.5, 1.0, 2.0]
        assert all(r.status == "match" and r.rel_diff <= 1e-6 for r in reps), [r.rel_diff for r in reps]


def test_criterion_09_pointwise_products(full_run, record):
    with record(9, "product ratios constant to 1e-6; T3 strict match at 1e-7"):
        reps = full_run[0]["products"]
        problems = []
        for tid in ("T3", "T5", "T6", "T7"):
            sub = [r for r in reps if r.identity_id == f"product-{tid}"]
            assert len(sub) == 4
            spread = ratio_spread([r.ratio for r in sub])
            if not spread <= RATIO_SPREAD:
                problems.append(f"{tid} spread {spread:.2e}")
        t3 = [r for r in reps if r.identity_id == "product-T3"]
        if not all(abs(r.ratio - 1) <= 1e-7 for r in t3):
            problems.append(f"T3 ratio {t3[0].ratio:.10g}")
        assert not problems, problems


def test_criterion_10_bessel_layer(record):
    with record(10, "K symmetry and reality, Wronskian at 1e-9, Hankel-Macdonald at 1e-8"):
        for nu in (0.3, 1.7 + 0.4j, 2j):
            for x in (0.5, 1.0, 3.0):
                assert _rel(bessel_k(-nu, x), bessel_k(nu, x)) <= 1e-12
        for rho in (0.5, 3.0, 10.0):
            for x in (0.3, 2.0, 8.0):
                k = bessel_k(1j * rho, x)
                assert abs(k.imag) <= 1e-12 * max(abs(k), 1e-300) + 1e-300
        for nu in (0.0, 0.5, 1.3, 4.0):
            for x in (0.5, 1.5, 5.0):
                # I K' - I' K = -1/x, derivatives from the order recurrences
                di = bessel_i(nu + 1, x) + nu / x * bessel_i(nu, x)
                dk = -bessel_k(nu + 1, x) + nu / x * bessel_k(nu, x)
                w = bessel_i(nu, x) * dk - di * bessel_k(nu, x)
                assert _rel(w, -1.0 / x) <= 1e-9, (nu, x)
        for eta in (0, 1):
            for nu in (0.5, 1.5, 2.5):
                for u in (0.5, 1.0, 3.0):
                    r = verify_hankel_relation(eta, nu, u)
                    assert r.rel_diff <= 1e-8, (eta, nu, u, r.rel_diff)
        for eta, sign in ((0, 1), (1, -1)):
            for u in (0.5, 2.0):
                exact = -sign * 1j * math.sqrt(2 / (math.pi * u)) * np.exp(sign * 1j * u)
                assert _rel(hankel(1 + eta, 0.5, u), exact) <= 1e-12


def test_criterion_11_gegenbauer(full_run, record):
    with record(11, "Gegenbauer orthogonality, off-diagonal 1e-10 abs, diagonal 1e-10 rel"):
        reps = full_run[0]["gegenbauer"]
        assert max(max(r.params["k"], r.params["m"]) for r in reps) == 6
        for r in reps:
            if r.params["k"] == r.params["m"]:
                assert r.rel_diff <= 1e-10, r.params
            else:
                assert abs(r.lhs) <= 1e-10, r.params
            assert r.status == "match"


def test_criterion_12_determinism(full_run, record):
    with record(12, "two full-suite runs give byte-identical JSON"):
        first = [r for name in SUITES for r in full_run[0][name]]
        second = run_suite("all")
        assert format_reports(first, "json") == format_reports(second, "json")
