"""Reduced phase equations with naive and moment-based evaluators.

The model couples N phases through one pairwise function (g2, up to second
harmonic), two three-phase functions (g3, g4), one four-phase function (g5)
and a mean-field frequency shift. All sums run over every index combination
including repeats, normalized by 1/N per summation index.

phase_rhs_naive spells the sums out index by index and is the correctness
oracle; phase_rhs_fast regroups every sum through the first two circular
moments and runs in O(N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import wrap_positive
from .reduction import PhaseCouplingSet

# above this size the moment sums switch to exact (compensated) accumulation
_COMPENSATED_THRESHOLD = 10_000


@dataclass
class PhaseState:
    """Length-N phase vector, reduced to [0, 2*pi) on construction."""

    phi: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float)
        if phi.ndim != 1 or phi.size == 0:
            raise ValueError("phases must form a non-empty 1-D real vector")
        if not np.all(np.isfinite(phi)):
            raise ValueError("phases contain non-finite entries")
        self.phi = wrap_positive(phi)

    def __len__(self) -> int:
        return self.phi.size


@dataclass(frozen=True)
class CircularMoments:
    """First and second circular moments Z1, Z2 of a phase vector."""

    z1: complex
    z2: complex


def as_phase_vector(phi) -> np.ndarray:
    """Accept a PhaseState or array-like, return a float vector.

    Arrays are passed through unreduced; the right-hand side is 2*pi
    periodic, and integration keeps winding information in the raw values.
    """
    if isinstance(phi, PhaseState):
        return phi.phi
    v = np.asarray(phi, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("phases must form a non-empty 1-D real vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("phases contain non-finite entries")
    return v


def moments(phi) -> CircularMoments:
    """First and second circular moments of the phase vector.

    For more than 10^4 oscillators the four component sums use exact
    compensated accumulation so the O(N) evaluator stays within its
    tolerance against the naive one.
    """
    v = as_phase_vector(phi)
    n = v.size
    if n > _COMPENSATED_THRESHOLD:
        c1, s1 = np.cos(v), np.sin(v)
        c2, s2 = np.cos(2.0 * v), np.sin(2.0 * v)
        z1 = complex(math.fsum(c1), math.fsum(s1)) / n
        z2 = complex(math.fsum(c2), math.fsum(s2)) / n
    else:
        e1 = np.exp(1j * v)
        z1 = complex(e1.mean())
        z2 = complex((e1 * e1).mean())
    return CircularMoments(z1, z2)


def _check_size(v: np.ndarray, coupling: PhaseCouplingSet):
    if v.size != coupling.n_osc:
        raise ValueError(
            f"state has length {v.size}, coupling expects n_osc={coupling.n_osc}")


def phase_rhs_naive(phi, coupling: PhaseCouplingSet) -> np.ndarray:
    """Literal nested-sum evaluation of the phase right-hand side.

    Cost is O(N^4) overall (the four-phase term is O(N^3) per component).
    Kept deliberately free of moment tricks; serves as the oracle for
    phase_rhs_fast.
    """
    v = as_phase_vector(phi)
    _check_size(v, coupling)
    n = v.size
    eps = coupling.epsilon

    base = coupling.omega_tilde_const
    if coupling.mean_field_freq_amp != 0.0:
        args = coupling.gamma[5] + v[:, None] - v[None, :]
        base = base + coupling.mean_field_freq_amp * float(np.cos(args).sum()) / n**2

    out = np.full(n, base)
    pair_sum = v[:, None] + v[None, :]
    buf3 = np.empty((n, n, n)) if any(t.amplitude != 0.0 for t in coupling.g5) else None

    for j in range(n):
        acc = 0.0
        for t in coupling.g2:
            if t.amplitude != 0.0:
                acc += t.amplitude / n * float(
                    np.cos(t.order * (v - v[j]) + t.phase_offset).sum())
        for t in coupling.g3:
            if t.amplitude != 0.0:
                acc += t.amplitude / n**2 * float(
                    np.cos(pair_sum - 2.0 * v[j] + t.phase_offset).sum())
        for t in coupling.g4:
            if t.amplitude != 0.0:
                acc += t.amplitude / n**2 * float(
                    np.cos(2.0 * v[:, None] - v[None, :] - v[j] + t.phase_offset).sum())
        for t in coupling.g5:
            if t.amplitude != 0.0:
                np.subtract(pair_sum[:, :, None], v[None, None, :], out=buf3)
                buf3 -= v[j] - t.phase_offset
                np.cos(buf3, out=buf3)
                acc += t.amplitude / n**3 * float(buf3.sum())
        out[j] += eps * acc
    return out


def phase_rhs_fast(phi, coupling: PhaseCouplingSet) -> np.ndarray:
    """O(N) evaluation of the phase right-hand side via circular moments.

    Every interaction sum separates into a per-oscillator rotation applied
    to a state-level complex prefactor:

        pairwise order m   -> Re{ Z_m e^{i chi} e^{-i m phi_j} }
        three-phase (g3)   -> Re{ Z_1^2 e^{i chi} e^{-2 i phi_j} }
        three-phase (g4)   -> Re{ Z_2 conj(Z_1) e^{i chi} e^{-i phi_j} }
        four-phase (g5)    -> Re{ Z_1 |Z_1|^2 e^{i chi} e^{-i phi_j} }
        mean-field shift   -> |Z_1|^2 cos(chi)
    """
    v = as_phase_vector(phi)
    _check_size(v, coupling)
    m = moments(v)
    z1, z2 = m.z1, m.z2

    base = coupling.omega_tilde_const
    if coupling.mean_field_freq_amp != 0.0:
        base += (coupling.mean_field_freq_amp * abs(z1) ** 2
                 * math.cos(coupling.gamma[5]))

    c1 = 0j  # prefactor of e^{-i phi_j}
    c2 = 0j  # prefactor of e^{-2 i phi_j}
    for t in coupling.g2:
        phasor = t.amplitude * np.exp(1j * t.phase_offset)
        if t.order == 1:
            c1 += phasor * z1
        else:
            c2 += phasor * z2
    t = coupling.g3[0]
    c2 += t.amplitude * np.exp(1j * t.phase_offset) * z1 * z1
    t = coupling.g4[0]
    c1 += t.amplitude * np.exp(1j * t.phase_offset) * z2 * np.conj(z1)
    t = coupling.g5[0]
    c1 += t.amplitude * np.exp(1j * t.phase_offset) * z1 * (abs(z1) ** 2)

    e1 = np.exp(-1j * v)
    interaction = (c1 * e1).real + (c2 * (e1 * e1)).real
    return base + coupling.epsilon * interaction
