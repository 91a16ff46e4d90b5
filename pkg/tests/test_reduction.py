"""Reduction constants, the amplitude/phase transform, and coupling assembly.

The finite-lambda re-derivation below recomputes the two normalized slope
constants from central differences of the uncoupled field at the limit-cycle
radius, independent of the closed forms under test.
"""
import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfphase import (HarmonicTerm, NormalFormCoefficients, PhaseCouplingSet,
                       SystemParams, abc_constants, beta_gamma, build_coupling,
                       canonical_xi_chi, coupling_from_text, coupling_to_text,
                       evaluate_harmonics, limit_cycle, reduction_constants,
                       uncoupled_field, wrap_angle, xi_chi_lambda_split)

from conftest import make_rng, random_coeffs, random_params


def params_51(a2=0.3):
    """The worked example: lam=0.1, omega=1, eps=0.5, a1=-1, one a2 term."""
    return SystemParams(lam=0.1, omega=1.0, epsilon=0.5, n_osc=3,
                        coeffs=NormalFormCoefficients(a1=-1.0, a2=a2))


# ---------------------------------------------------------------------------
# limit cycle and slope constants


def test_limit_cycle_radius_and_frequency():
    r2, om = limit_cycle(params_51())
    assert r2 == 0.1
    assert om == 1.0
    assert abs(math.sqrt(r2) - 0.3162) < 5e-5


def test_limit_cycle_shrinks_to_bifurcation():
    params = SystemParams(lam=1e-12, omega=1.0, epsilon=0.0, n_osc=4,
                          coeffs=NormalFormCoefficients(a1=-1.0))
    r2, _ = limit_cycle(params)
    assert r2 == 1e-12


def test_limit_cycle_with_rotational_shear():
    params = SystemParams(lam=0.2, omega=1.0, epsilon=0.0, n_osc=4,
                          coeffs=NormalFormCoefficients(a1=complex(-0.5, 0.25)))
    r2, om = limit_cycle(params)
    assert r2 == 0.4
    assert om == 1.0 + 0.25 * 0.4


def test_abc_examples():
    assert abc_constants(NormalFormCoefficients(a1=-1.0)) == (-2.0, 0.0, 0.0, 0.0)
    assert abc_constants(NormalFormCoefficients(a1=complex(-1, 1))) == (-2.0, 2.0, 2.0, -1.0)
    a0, b0, c0, c = abc_constants(NormalFormCoefficients(a1=complex(-4, 2)))
    assert (a0, b0, c0, c) == (-2.0, 2.0, 1.0, -0.5)


def test_finite_lambda_rederivation():
    # U_R(r) = lam*r + re(a1) r^3 vanishes at R*; its slope there over lam
    # must equal -2, and the normalized angular slope must equal
    # -2 im(a1)/re(a1), both independent of lam under the cubic truncation.
    rng = make_rng(7)
    for trial in range(10):
        a1 = complex(-rng.uniform(0.3, 3.0), rng.normal())
        lam = rng.uniform(0.01, 0.8)
        params = SystemParams(lam=lam, omega=rng.normal(), epsilon=0.0, n_osc=4,
                              coeffs=NormalFormCoefficients(a1=a1))
        r2, _ = limit_cycle(params)
        r_star = math.sqrt(r2)
        h = 1e-6 * r_star

        def u_radial(r):
            return uncoupled_field(r + 0j, params).real

        def v_angular(r):
            # imaginary part of U(r)/r, the rotation rate at radius r
            return uncoupled_field(r + 0j, params).imag / r

        a_lam = (u_radial(r_star + h) - u_radial(r_star - h)) / (2 * h) / lam
        b_slope = (v_angular(r_star + h) - v_angular(r_star - h)) / (2 * h)
        c_lam = r_star * b_slope / lam
        a0, _, c0, _ = abc_constants(params.coeffs)
        assert abs(a_lam - a0) < 1e-6
        assert abs(c_lam - c0) < 1e-6 * max(1.0, abs(c0))


def test_limit_cycle_rejects_subcritical():
    coeffs = NormalFormCoefficients(a1=-1.0)
    object.__setattr__(coeffs, "a1", 1.0 + 0j)  # bypass the constructor guard
    params = SystemParams.__new__(SystemParams)
    object.__setattr__(params, "lam", 0.1)
    object.__setattr__(params, "omega", 1.0)
    object.__setattr__(params, "epsilon", 0.0)
    object.__setattr__(params, "n_osc", 4)
    object.__setattr__(params, "coeffs", coeffs)
    with pytest.raises(ValueError):
        limit_cycle(params)


# ---------------------------------------------------------------------------
# the amplitude/phase transform


def test_beta_gamma_at_zero_shear():
    beta, gamma = beta_gamma(0.7, 0.3, 0.0)
    assert abs(beta - 0.7) < 1e-15
    assert abs(gamma - (0.3 - math.pi / 2)) < 1e-15


def test_beta_gamma_unit_shear():
    beta, gamma = beta_gamma(1.0, 0.0, 1.0)
    assert abs(beta - math.sqrt(2)) < 1e-15
    assert abs(gamma - (-3 * math.pi / 4)) < 1e-15


def test_beta_gamma_zero_amplitude_convention():
    assert beta_gamma(0.0, 123.4, -5.6) == (0.0, 0.0)


def test_beta_gamma_rejects_negative_amplitude():
    with pytest.raises(ValueError):
        beta_gamma(-0.1, 0.0, 0.0)


@given(st.floats(min_value=0.0, max_value=10.0),
       st.floats(min_value=-math.pi, max_value=math.pi),
       st.floats(min_value=-5.0, max_value=5.0))
def test_beta_gamma_defining_identity(alpha, theta, c):
    beta, gamma = beta_gamma(alpha, theta, c)
    for t in np.linspace(-math.pi, math.pi, 100):
        lhs = beta * math.cos(gamma + t)
        rhs = alpha * math.sin(theta + t) - c * alpha * math.cos(theta + t)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, beta)


# ---------------------------------------------------------------------------
# coupling assembly


def test_build_coupling_zero_coupling():
    params = SystemParams(lam=0.1, omega=1.3, epsilon=0.2, n_osc=5,
                          coeffs=NormalFormCoefficients(a1=-1.0))
    coupling = build_coupling(params)
    assert coupling.omega_tilde_const == 1.3
    assert coupling.mean_field_freq_amp == 0.0
    assert coupling.g2 == ()
    for terms in (coupling.g3, coupling.g4, coupling.g5):
        assert len(terms) == 1 and terms[0].amplitude == 0.0
    assert canonical_xi_chi(coupling) == []


def test_build_coupling_worked_example():
    coupling = build_coupling(params_51())
    assert coupling.r_star_sq == 0.1
    assert coupling.omega_tilde_const == 1.0
    assert abs(coupling.beta[2] - 0.3) < 1e-15
    assert abs(coupling.gamma[2] - (-math.pi / 2)) < 1e-15
    assert len(coupling.g2) == 1
    term = coupling.g2[0]
    assert term.order == 1
    assert abs(term.amplitude - 0.03) < 1e-15
    assert abs(term.phase_offset - math.pi / 2) < 1e-12
    # g2(phi) = 0.03 cos(phi + pi/2) = -0.03 sin(phi)
    for phi in np.linspace(0, 2 * np.pi, 17):
        assert abs(evaluate_harmonics(coupling.g2, phi) + 0.03 * np.sin(phi)) < 1e-15


def test_build_coupling_merges_order1_phasors():
    rng = make_rng(8)
    coeffs = random_coeffs(rng, only=["a_minus1", "a3", "a8", "a10"])
    params = SystemParams(lam=0.3, omega=0.5, epsilon=0.1, n_osc=4, coeffs=coeffs)
    coupling = build_coupling(params)
    assert len(coupling.g2) == 1
    b, g, r2 = coupling.beta, coupling.gamma, coupling.r_star_sq
    phasor = (b[-1] * cmath.exp(1j * g[-1])
              + r2 * (b[3] * cmath.exp(1j * g[3]) + b[8] * cmath.exp(1j * g[8])
                      + b[10] * cmath.exp(1j * g[10])))
    assert abs(coupling.g2[0].amplitude - abs(phasor)) < 1e-14
    assert abs(wrap_angle(coupling.g2[0].phase_offset - cmath.phase(phasor))) < 1e-12


def test_build_coupling_order2_and_higher_terms():
    rng = make_rng(9)
    coeffs = random_coeffs(rng, only=["a6", "a7", "a9", "a11"])
    params = SystemParams(lam=0.2, omega=1.0, epsilon=0.05, n_osc=6, coeffs=coeffs)
    coupling = build_coupling(params)
    r2 = coupling.r_star_sq
    assert len(coupling.g2) == 1 and coupling.g2[0].order == 2
    assert abs(coupling.g2[0].amplitude - r2 * coupling.beta[6]) < 1e-15
    for terms, k in ((coupling.g3, 7), (coupling.g4, 9), (coupling.g5, 11)):
        assert len(terms) == 1 and terms[0].order == 1
        assert abs(terms[0].amplitude - r2 * coupling.beta[k]) < 1e-15
        assert abs(wrap_angle(terms[0].phase_offset - coupling.gamma[k])) < 1e-12


def test_build_coupling_delta_correction():
    coeffs = NormalFormCoefficients(a1=-1.0, a_minus1=cmath.rect(0.4, 0.7))
    params = SystemParams(lam=0.25, omega=1.0, epsilon=0.1, n_osc=4, coeffs=coeffs)
    plain = build_coupling(params, delta=0.0)
    shifted = build_coupling(params, delta=0.8)
    assert shifted.delta_corr == pytest.approx(0.25 * 0.8 * 0.4, abs=1e-15)
    assert shifted.delta_phase == pytest.approx(0.7, abs=1e-15)
    # the order-1 phasor loses delta_corr * e^{i theta_-1}
    p0 = plain.g2[0]
    p1 = shifted.g2[0]
    lost = (p0.amplitude * cmath.exp(1j * p0.phase_offset)
            - p1.amplitude * cmath.exp(1j * p1.phase_offset))
    assert abs(lost - 0.08 * cmath.exp(1j * 0.7)) < 1e-14


def test_mean_field_frequency_terms():
    rng = make_rng(10)
    coeffs = random_coeffs(rng, only=["a4", "a5"])
    params = SystemParams(lam=0.2, omega=0.7, epsilon=0.3, n_osc=5, coeffs=coeffs)
    coupling = build_coupling(params)
    r2 = coupling.r_star_sq
    _, om = limit_cycle(params)
    want_const = om + 0.3 * r2 * coupling.beta[4] * math.cos(coupling.gamma[4])
    assert abs(coupling.omega_tilde_const - want_const) < 1e-14
    assert abs(coupling.mean_field_freq_amp - 0.3 * r2 * coupling.beta[5]) < 1e-15


# ---------------------------------------------------------------------------
# canonical harmonic tables


def _g2_from_maps(coupling, phi):
    """g2 evaluated directly from the unmerged beta/gamma maps."""
    b, g, r2 = coupling.beta, coupling.gamma, coupling.r_star_sq
    val = (b[-1] * np.cos(g[-1] + phi)
           - coupling.delta_corr * np.cos(coupling.delta_phase + phi)
           + r2 * (b[2] * np.cos(g[2] - phi) + b[3] * np.cos(g[3] + phi)
                   + b[6] * np.cos(g[6] + 2 * phi) + b[8] * np.cos(g[8] + phi)
                   + b[10] * np.cos(g[10] + phi)))
    return val


def test_canonical_terms_match_unmerged_sum():
    rng = make_rng(11)
    for trial in range(10):
        params = random_params(rng, n_osc=5)
        coupling = build_coupling(params, delta=rng.uniform(-1, 1))
        grid = np.linspace(0, 2 * np.pi, 1000)
        merged = evaluate_harmonics(coupling.g2, grid)
        direct = _g2_from_maps(coupling, grid)
        assert np.max(np.abs(merged - direct)) < 1e-12


def test_canonical_xi_chi_single_term_g5():
    rng = make_rng(12)
    coeffs = random_coeffs(rng, only=["a11"])
    params = SystemParams(lam=0.15, omega=1.0, epsilon=0.1, n_osc=4, coeffs=coeffs)
    coupling = build_coupling(params)
    table = canonical_xi_chi(coupling)
    assert [tag for tag, _ in table] == ["g5"]
    term = table[0][1]
    assert abs(term.amplitude - coupling.r_star_sq * coupling.beta[11]) < 1e-15
    assert abs(wrap_angle(term.phase_offset - coupling.gamma[11])) < 1e-12


def test_canonical_xi_chi_worked_example():
    # one order-1 entry: 0.03 cos(phi + pi/2), i.e. -0.03 sin(phi)
    table = canonical_xi_chi(build_coupling(params_51()))
    assert len(table) == 1
    tag, term = table[0]
    assert tag == "g2" and term.order == 1
    assert abs(term.amplitude - 0.03) < 1e-15
    assert abs(term.phase_offset - math.pi / 2) < 1e-12


def test_lambda_split_reassembles():
    rng = make_rng(13)
    for trial in range(5):
        params = random_params(rng, n_osc=4)
        delta = rng.uniform(-0.5, 0.5)
        coupling = build_coupling(params, delta=delta)
        split = xi_chi_lambda_split(coupling)
        assert all(power in (0, 1) for _, power, _ in split)
        # rescale cubic entries by r_star_sq and compare against the tables
        rebuilt = {}
        for tag, power, term in split:
            scale = coupling.r_star_sq if power == 1 else 1.0
            key = (tag, term.order)
            rebuilt[key] = rebuilt.get(key, 0j) + scale * term.amplitude * cmath.exp(
                1j * term.phase_offset)
        for tag, term in canonical_xi_chi(coupling):
            got = rebuilt.pop((tag, term.order))
            want = term.amplitude * cmath.exp(1j * term.phase_offset)
            assert abs(got - want) < 1e-13
        for leftover in rebuilt.values():
            assert abs(leftover) < 1e-13


# ---------------------------------------------------------------------------
# serialization and invariants


def test_coupling_text_round_trip(rng):
    for trial in range(5):
        params = random_params(rng, n_osc=6)
        coupling = build_coupling(params, delta=rng.uniform(-1, 1))
        text = coupling_to_text(coupling)
        back = coupling_from_text(text)
        assert back == coupling
        assert coupling_to_text(back) == text


def test_coupling_set_rejects_bad_term_counts():
    term = HarmonicTerm(1.0, 0.0, 1)
    good = dict(omega_tilde_const=1.0, beta={k: 0.0 for k in [-1] + list(range(2, 12))},
                gamma={k: 0.0 for k in [-1] + list(range(2, 12))},
                r_star_sq=0.1, epsilon=0.1, n_osc=4,
                g3=(term,), g4=(term,), g5=(term,), mean_field_freq_amp=0.0)
    PhaseCouplingSet(g2=(term,), **good)
    with pytest.raises(ValueError):
        PhaseCouplingSet(g2=(term, term), **good)
    bad = dict(good)
    bad["g3"] = (term, term)
    with pytest.raises(ValueError):
        PhaseCouplingSet(g2=(), **bad)
    bad = dict(good)
    bad["g5"] = ()
    with pytest.raises(ValueError):
        PhaseCouplingSet(g2=(), **bad)


def test_harmonic_term_validation():
    with pytest.raises(ValueError):
        HarmonicTerm(-0.1, 0.0, 1)
    with pytest.raises(ValueError):
        HarmonicTerm(1.0, 0.0, 0)
    term = HarmonicTerm(1.0, 3 * math.pi, 1)
    assert -math.pi < term.phase_offset <= math.pi


def test_reduction_constants_bundle():
    consts = reduction_constants(params_51(), delta=0.4)
    assert consts.r_star_sq == 0.1
    assert consts.omega_cap == 1.0
    assert consts.a0 == -2.0
    assert consts.b0 == 0.0
    assert consts.c0 == 0.0
    assert consts.delta == 0.4
