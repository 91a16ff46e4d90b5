"""Fixed-step integration and full-vs-reduced trajectory comparison.

The classical 4th-order one-step scheme is used everywhere: determinism and
a clean order-of-accuracy story matter more here than adaptive efficiency.
Phase trajectories are stored unreduced so winding rates can be measured;
comparison quotients out the global rotation symmetry before taking the sup
deviation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angles import wrap_angle

# reduction below this modulus means the phase description has broken down
_AMPLITUDE_FLOOR = 1e-8


class IntegrationError(RuntimeError):
    """Raised when the state stops being finite mid-run; carries the time."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class AmplitudeCollapseError(RuntimeError):
    """Raised when some |z_k| falls below the floor where phases are defined."""


@dataclass
class Trajectory:
    """States sampled at uniform times; kind is 'full' or 'phase'."""

    times: np.ndarray
    states: np.ndarray
    kind: str

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states)
        if self.kind not in ("full", "phase"):
            raise ValueError(f"kind must be 'full' or 'phase', got {self.kind!r}")
        if self.times.ndim != 1 or self.states.ndim != 2:
            raise ValueError("times must be 1-D and states 2-D")
        if self.times.size != self.states.shape[0]:
            raise ValueError("times and states disagree in length")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    @property
    def n_osc(self) -> int:
        return self.states.shape[1]


@dataclass(frozen=True)
class ComparisonReport:
    """Sup phase deviation and mean winding rates of a model pair.

    max_phase_dev is the sup over time of the largest per-oscillator circular
    distance between extracted and reduced phases, after removing the best
    global rotation at each time.
    """

    horizon: float
    max_phase_dev: float
    freq_full: float
    freq_phase: float

    def as_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "max_phase_dev": self.max_phase_dev,
            "freq_full": self.freq_full,
            "freq_phase": self.freq_phase,
        }


def default_dt(lam: float, omega_cap: float) -> float:
    """Step size resolving both the rotation and the slow attraction scale."""
    candidates = [0.01 / lam]
    if omega_cap != 0.0:
        candidates.append(2.0 * np.pi / (50.0 * abs(omega_cap)))
    return min(candidates)


def integrate(rhs, x0, dt: float, t_end: float) -> Trajectory:
    """Integrate x' = rhs(x) with the classical 4th-order scheme.

    Output is dense at every multiple of dt up to the largest one not
    exceeding t_end (no fractional final step; the step size is part of the
    method). The trajectory kind is inferred from the state dtype: complex
    states are 'full', real states are 'phase'.

    Raises
    ------
    IntegrationError
        If any state component becomes NaN or infinite; the exception
        carries the time of the failed step.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if dt > t_end:
        raise ValueError(f"dt={dt} exceeds t_end={t_end}")

    x = np.atleast_1d(np.asarray(x0))
    if np.iscomplexobj(x):
        x = x.astype(complex)
        kind = "full"
    else:
        x = x.astype(float)
        kind = "phase"
    if not np.all(np.isfinite(x)):
        raise ValueError("initial state contains non-finite entries")

    n_steps = int(np.floor(t_end / dt + 1e-9))
    times = np.arange(n_steps + 1) * dt
    states = np.empty((n_steps + 1, x.size), dtype=x.dtype)
    states[0] = x

    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(1, n_steps + 1):
        k1 = rhs(x)
        k2 = rhs(x + half * k1)
        k3 = rhs(x + half * k2)
        k4 = rhs(x + dt * k3)
        x = x + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        if not np.all(np.isfinite(x)):
            raise IntegrationError(
                f"non-finite state at t={times[i]:g} (step {i})", float(times[i]))
        states[i] = x
    return Trajectory(times, states, kind)


def extract_phases(traj: Trajectory) -> Trajectory:
    """Unwrapped phase paths arg z_k(t) of a full-model trajectory.

    Raises AmplitudeCollapseError if any modulus gets within 1e-8 of zero,
    where the phase is meaningless.
    """
    if traj.kind != "full":
        raise ValueError("extract_phases expects a full-model trajectory")
    mods = np.abs(traj.states)
    if mods.min() < _AMPLITUDE_FLOOR:
        bad_t, bad_k = np.unravel_index(int(np.argmin(mods)), mods.shape)
        raise AmplitudeCollapseError(
            f"|z_{bad_k + 1}| = {mods[bad_t, bad_k]:.3e} at t="
            f"{traj.times[bad_t]:g}: amplitude collapsed, phases undefined")
    phases = np.unwrap(np.angle(traj.states), axis=0)
    return Trajectory(traj.times, phases, "phase")


def mean_winding_rate(phase_traj: Trajectory) -> float:
    """Average of (phi_k(T) - phi_k(0)) / (T - 0) over oscillators."""
    horizon = phase_traj.times[-1] - phase_traj.times[0]
    return float(np.mean(phase_traj.states[-1] - phase_traj.states[0]) / horizon)


def compare(full_traj: Trajectory, phase_traj: Trajectory) -> ComparisonReport:
    """Compare a full-model run against a phase-model run on the same grid.

    At each time the per-oscillator differences between extracted and
    reduced phases are aligned by their circular mean (the global rotation
    is not an observable of the reduced model), and the largest residual
    circular distance over all times and oscillators is reported together
    with both mean winding rates.
    """
    if phase_traj.kind != "phase":
        raise ValueError("second argument must be a phase trajectory")
    if (full_traj.times.size != phase_traj.times.size
            or np.max(np.abs(full_traj.times - phase_traj.times)) > 1e-9):
        raise ValueError("time grids differ between the two trajectories")
    if full_traj.n_osc != phase_traj.n_osc:
        raise ValueError("oscillator counts differ between the two trajectories")

    extracted = extract_phases(full_traj)
    diff = extracted.states - phase_traj.states
    mean_vec = np.exp(1j * diff).mean(axis=1)
    rotation = np.angle(mean_vec)
    residual = wrap_angle(diff - rotation[:, None])
    return ComparisonReport(
        horizon=float(full_traj.times[-1] - full_traj.times[0]),
        max_phase_dev=float(np.max(np.abs(residual))),
        freq_full=mean_winding_rate(extracted),
        freq_phase=mean_winding_rate(phase_traj),
    )


# ---------------------------------------------------------------------------
# delimited-text export


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def trajectory_text(traj: Trajectory, seed=None, r_star: float | None = None,
                    extra_header: dict | None = None) -> str:
    """Render a trajectory as delimited text.

    Full trajectories carry columns t, re(z_k), im(z_k); phase trajectories
    carry t, phi_k and, when r_star is given, additionally r_star*cos(phi_k)
    columns for direct visual comparison with the full model. Floats are
    written with 17 significant digits so parsing recovers them exactly.
    """
    lines = []
    if seed is not None:
        lines.append(f"# seed={seed}")
    lines.append(f"# model={traj.kind}")
    for key, value in (extra_header or {}).items():
        lines.append(f"# {key}={value}")

    n = traj.n_osc
    if traj.kind == "full":
        header = ["t"]
        for k in range(1, n + 1):
            header += [f"re(z_{k})", f"im(z_{k})"]
        lines.append(", ".join(header))
        for i, t in enumerate(traj.times):
            row = [_fmt(t)]
            for k in range(n):
                row += [_fmt(traj.states[i, k].real), _fmt(traj.states[i, k].imag)]
            lines.append(", ".join(row))
    else:
        header = ["t"] + [f"phi_{k}" for k in range(1, n + 1)]
        if r_star is not None:
            header += [f"rcos(phi_{k})" for k in range(1, n + 1)]
        lines.append(", ".join(header))
        for i, t in enumerate(traj.times):
            row = [_fmt(t)] + [_fmt(x) for x in traj.states[i]]
            if r_star is not None:
                row += [_fmt(r_star * np.cos(x)) for x in traj.states[i]]
            lines.append(", ".join(row))
    return "\n".join(lines) + "\n"


def write_trajectory(traj: Trajectory, path, seed=None, r_star=None,
                     extra_header=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(trajectory_text(traj, seed=seed, r_star=r_star,
                                 extra_header=extra_header))
