"""Reduction of the coupled normal form to phase-only coupling data.

For weak coupling the dynamics collapses onto an attracting torus of
near-circular limit cycles. On it each coupling monomial contributes a
single circular harmonic to one of four interaction functions: g2 (pairwise),
g3 and g4 (three-phase), g5 (four-phase), plus a phase-independent and a
mean-field shift of the common frequency. This module computes the
limit-cycle data, the averaging constants, the amplitude/phase transform of
the coefficients, and assembles the full coupling set.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .angles import wrap_angle
from .normal_form import COUPLING_INDICES, NormalFormCoefficients, SystemParams


@dataclass(frozen=True)
class ReductionConstants:
    """Derived constants of the phase reduction.

    r_star_sq is the squared limit-cycle radius, omega_cap the frequency on
    the cycle. a0, b0, c0 are the radial-attraction, forcing and mixing
    constants at the bifurcation; c_ratio = c0/a0 enters the coefficient
    transform. delta is the optional fifth-order correction coefficient and
    is exactly zero when the cubic truncation is taken at face value.
    """

    r_star_sq: float
    omega_cap: float
    a0: float
    b0: float
    c0: float
    c_ratio: float
    delta: float = 0.0


@dataclass(frozen=True)
class HarmonicTerm:
    """One term amplitude * cos(order * phi + phase_offset)."""

    amplitude: float
    phase_offset: float
    order: int = 1

    def __post_init__(self):
        if not np.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude}")
        if not np.isfinite(self.phase_offset):
            raise ValueError("phase_offset must be finite")
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order!r}")
        object.__setattr__(self, "amplitude", float(self.amplitude))
        # wrap only out-of-range offsets: wrap_angle is not bitwise-idempotent,
        # and serialization round trips must preserve the stored float exactly
        p = float(self.phase_offset)
        if not -math.pi < p <= math.pi:
            p = wrap_angle(p)
        object.__setattr__(self, "phase_offset", p)


def evaluate_harmonics(terms, phi):
    """Evaluate sum of amplitude*cos(order*phi + offset) over a term list.

    phi may be a scalar or an array; the result matches its shape.
    """
    out = np.zeros_like(np.asarray(phi, dtype=float))
    for t in terms:
        out = out + t.amplitude * np.cos(t.order * np.asarray(phi, dtype=float)
                                         + t.phase_offset)
    if np.ndim(phi) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class PhaseCouplingSet:
    """Everything the phase model needs, derived once from the coefficients.

    beta/gamma hold the per-coefficient amplitude and phase for every
    coupling index; g2..g5 hold the same content canonicalized into merged
    harmonics. delta_corr and delta_phase carry the optional fifth-order
    pairwise correction (amplitude lam*delta*|a_minus1|, entering g2 with a
    minus sign); both are zero in the default cubic truncation.
    """

    omega_tilde_const: float
    beta: dict
    gamma: dict
    r_star_sq: float
    epsilon: float
    n_osc: int
    g2: tuple
    g3: tuple
    g4: tuple
    g5: tuple
    mean_field_freq_amp: float
    delta_corr: float = 0.0
    delta_phase: float = 0.0

    def __post_init__(self):
        for name in ("g3", "g4", "g5"):
            terms = getattr(self, name)
            if len(terms) != 1 or terms[0].order != 1:
                raise ValueError(f"{name} must hold exactly one order-1 term")
        orders = [t.order for t in self.g2]
        if sorted(orders) != sorted(set(orders)) or any(o > 2 for o in orders):
            raise ValueError("g2 may hold at most one order-1 and one order-2 term")


def limit_cycle(params: SystemParams):
    """Limit-cycle radius squared and frequency of the uncoupled oscillator.

    Returns
    -------
    (r_star_sq, omega_cap) : tuple of float
        r_star_sq = lam / (-re(a1)), omega_cap = omega + im(a1) * r_star_sq.
        Exact because the cubic truncation has no higher radial terms.
    """
    a1 = params.coeffs.a1
    if a1.real >= 0:
        raise ValueError("re(a1) must be negative for an attracting cycle")
    r2 = params.lam / (-a1.real)
    return r2, params.omega + a1.imag * r2


def abc_constants(coeffs: NormalFormCoefficients):
    """Averaging constants at the bifurcation point.

    a0 is the relative radial attraction rate (-2 exactly for the cubic),
    b0 the phase forcing 2*im(a1)/sqrt(-re(a1)), c0 the radius-to-phase
    mixing -2*im(a1)/re(a1), and c_ratio = c0/a0 = im(a1)/re(a1).
    """
    a1 = coeffs.a1
    if a1.real >= 0:
        raise ValueError("re(a1) must be negative for an attracting cycle")
    a0 = -2.0
    b0 = 2.0 * a1.imag / math.sqrt(-a1.real)
    c0 = -2.0 * a1.imag / a1.real
    return a0, b0, c0, c0 / a0


def reduction_constants(params: SystemParams, delta: float = 0.0) -> ReductionConstants:
    """Bundle limit-cycle data and averaging constants in one record."""
    r2, om = limit_cycle(params)
    a0, b0, c0, c_ratio = abc_constants(params.coeffs)
    return ReductionConstants(r2, om, a0, b0, c0, c_ratio, float(delta))


def beta_gamma(alpha_k: float, theta_k: float, c_ratio: float):
    """Transform one coefficient's (modulus, argument) to its harmonic form.

    Solves beta*cos(gamma + t) = alpha*sin(theta + t) - c_ratio*alpha*cos(theta + t)
    for all t, via the phasor identity beta*e^{i gamma} = alpha*e^{i theta}(-c_ratio - i).

    Returns
    -------
    (beta_k, gamma_k) : tuple of float
        beta_k = alpha_k*sqrt(1 + c_ratio^2) >= 0; gamma_k in (-pi, pi].
        Zero amplitude returns (0.0, 0.0) by convention.
    """
    if alpha_k < 0:
        raise ValueError(f"alpha_k must be >= 0, got {alpha_k}")
    if alpha_k == 0:
        return 0.0, 0.0
    beta = alpha_k * math.hypot(1.0, c_ratio)
    gamma = wrap_angle(theta_k + math.atan2(-1.0, -c_ratio))
    return beta, gamma


def _term_from_phasor(phasor: complex, order: int):
    """HarmonicTerm for amplitude*cos(order*phi + arg), or None when zero."""
    amp = abs(phasor)
    if amp == 0.0:
        return None
    return HarmonicTerm(amp, cmath.phase(phasor), order)


def _single_term(amplitude: float, phase: float) -> HarmonicTerm:
    if amplitude == 0.0:
        return HarmonicTerm(0.0, 0.0, 1)
    return HarmonicTerm(amplitude, phase, 1)


def g2_order1_phasor(beta: dict, gamma: dict, r_star_sq: float,
                     delta_corr: float, delta_phase: float) -> complex:
    """Merged complex amplitude of the order-1 harmonic of g2.

    The beta[2] term has a reversed argument cos(gamma_2 - phi); evenness of
    cosine folds it in with phase -gamma_2. The fifth-order correction enters
    with a minus sign.
    """
    ph = beta[-1] * cmath.exp(1j * gamma[-1])
    ph += r_star_sq * (beta[2] * cmath.exp(-1j * gamma[2])
                       + beta[3] * cmath.exp(1j * gamma[3])
                       + beta[8] * cmath.exp(1j * gamma[8])
                       + beta[10] * cmath.exp(1j * gamma[10]))
    ph -= delta_corr * cmath.exp(1j * delta_phase)
    return ph


def build_coupling(params: SystemParams, delta: float = 0.0) -> PhaseCouplingSet:
    """Derive the complete phase-coupling data from the normal-form system.

    Parameters
    ----------
    params : SystemParams
    delta : float
        Fifth-order correction coefficient; 0 under the plain cubic
        truncation. Nonzero delta subtracts
        lam*delta*|a_minus1|*cos(arg(a_minus1) + phi) from g2.

    Returns
    -------
    PhaseCouplingSet
    """
    r2, om = limit_cycle(params)
    _, _, _, c_ratio = abc_constants(params.coeffs)

    beta, gamma = {}, {}
    for k in COUPLING_INDICES:
        a = params.coeffs.coupling(k)
        beta[k], gamma[k] = beta_gamma(abs(a), cmath.phase(a) if a != 0 else 0.0,
                                       c_ratio)

    am1 = params.coeffs.a_minus1
    delta_corr = params.lam * float(delta) * abs(am1)
    delta_phase = cmath.phase(am1) if (delta_corr != 0.0 and am1 != 0) else 0.0

    g2_terms = []
    t1 = _term_from_phasor(
        g2_order1_phasor(beta, gamma, r2, delta_corr, delta_phase), 1)
    if t1 is not None:
        g2_terms.append(t1)
    t2 = _term_from_phasor(r2 * beta[6] * cmath.exp(1j * gamma[6]), 2)
    if t2 is not None:
        g2_terms.append(t2)

    return PhaseCouplingSet(
        omega_tilde_const=om + params.epsilon * r2 * beta[4] * math.cos(gamma[4]),
        beta=beta,
        gamma=gamma,
        r_star_sq=r2,
        epsilon=params.epsilon,
        n_osc=params.n_osc,
        g2=tuple(g2_terms),
        g3=(_single_term(r2 * beta[7], gamma[7]),),
        g4=(_single_term(r2 * beta[9], gamma[9]),),
        g5=(_single_term(r2 * beta[11], gamma[11]),),
        mean_field_freq_amp=params.epsilon * r2 * beta[5],
        delta_corr=delta_corr,
        delta_phase=delta_phase,
    )


def canonical_xi_chi(coupling: PhaseCouplingSet):
    """Merged (xi, chi) table of all coupling harmonics.

    Returns a list of (tag, HarmonicTerm) pairs, tags in {"g2","g3","g4","g5"},
    one entry per nonzero harmonic, grouped by function and ordered by
    harmonic order. Amplitudes carry all scale factors. The scale structure
    with the limit-cycle factor pulled out is available from
    xi_chi_lambda_split.
    """
    out = []
    for tag in ("g2", "g3", "g4", "g5"):
        for t in getattr(coupling, tag):
            if t.amplitude != 0.0:
                out.append((tag, t))
    return out


def xi_chi_lambda_split(coupling: PhaseCouplingSet):
    """Canonical table split by power of the bifurcation parameter.

    Each entry is (tag, lambda_power, HarmonicTerm). Power-0 entries are the
    bare pairwise contribution of the linear coupling coefficient; power-1
    entries have the limit-cycle factor r_star_sq (which is proportional to
    lam) divided out of their amplitude, so recombining as
    power0 + r_star_sq * power1 phasors reproduces canonical_xi_chi.
    """
    b, g, r2 = coupling.beta, coupling.gamma, coupling.r_star_sq
    out = []
    lam0 = b[-1] * cmath.exp(1j * g[-1])
    t = _term_from_phasor(lam0, 1)
    if t is not None:
        out.append(("g2", 0, t))
    lam1 = (b[2] * cmath.exp(-1j * g[2]) + b[3] * cmath.exp(1j * g[3])
            + b[8] * cmath.exp(1j * g[8]) + b[10] * cmath.exp(1j * g[10]))
    lam1 -= (coupling.delta_corr / r2) * cmath.exp(1j * coupling.delta_phase)
    t = _term_from_phasor(lam1, 1)
    if t is not None:
        out.append(("g2", 1, t))
    for tag, k, order in (("g2", 6, 2), ("g3", 7, 1), ("g4", 9, 1), ("g5", 11, 1)):
        t = _term_from_phasor(b[k] * cmath.exp(1j * g[k]), order)
        if t is not None:
            out.append((tag, 1, t))
    return out


# ---------------------------------------------------------------------------
# text serialization, so the phase model can run without re-deriving


def coupling_to_text(coupling: PhaseCouplingSet) -> str:
    """Serialize a PhaseCouplingSet to a key-value text document (JSON)."""
    doc = {
        "omega_tilde_const": coupling.omega_tilde_const,
        "beta": {str(k): coupling.beta[k] for k in COUPLING_INDICES},
        "gamma": {str(k): coupling.gamma[k] for k in COUPLING_INDICES},
        "r_star_sq": coupling.r_star_sq,
        "epsilon": coupling.epsilon,
        "n_osc": coupling.n_osc,
        "mean_field_freq_amp": coupling.mean_field_freq_amp,
        "delta_corr": coupling.delta_corr,
        "delta_phase": coupling.delta_phase,
    }
    for tag in ("g2", "g3", "g4", "g5"):
        doc[tag] = [
            {"amplitude": t.amplitude, "phase_offset": t.phase_offset, "order": t.order}
            for t in getattr(coupling, tag)
        ]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def coupling_from_text(text: str) -> PhaseCouplingSet:
    """Inverse of coupling_to_text."""
    doc = json.loads(text)
    def terms(tag):
        return tuple(HarmonicTerm(e["amplitude"], e["phase_offset"], int(e["order"]))
                     for e in doc[tag])
    return PhaseCouplingSet(
        omega_tilde_const=float(doc["omega_tilde_const"]),
        beta={int(k): float(v) for k, v in doc["beta"].items()},
        gamma={int(k): float(v) for k, v in doc["gamma"].items()},
        r_star_sq=float(doc["r_star_sq"]),
        epsilon=float(doc["epsilon"]),
        n_osc=int(doc["n_osc"]),
        g2=terms("g2"),
        g3=terms("g3"),
        g4=terms("g4"),
        g5=terms("g5"),
        mean_field_freq_amp=float(doc["mean_field_freq_amp"]),
        delta_corr=float(doc.get("delta_corr", 0.0)),
        delta_phase=float(doc.get("delta_phase", 0.0)),
    )
