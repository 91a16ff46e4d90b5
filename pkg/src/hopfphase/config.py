"""Run configuration: JSON parsing, validation, canonical serialization.

A run file is a single JSON object. Complex coefficients accept two spellings,
a two-element array [re, im] or an object {"modulus": m, "phase": p}; the
canonical form written back out is always [re, im]. parse/serialize are exact
inverses on the canonical form, so normalizing a file twice is a no-op.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .integrator import default_dt
from .normal_form import COUPLING_INDICES, NormalFormCoefficients, SystemParams
from .reduction import limit_cycle

_INITIAL_KINDS = ("random-phases", "explicit", "splay", "two-cluster",
                  "perturbed-sync")

_COEFF_KEYS = tuple(
    "a_minus1" if k == -1 else f"a{k}" for k in (-1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11)
)


class ConfigError(ValueError):
    """Invalid or missing configuration data; message names the field."""


@dataclass(frozen=True)
class InitialSpec:
    kind: str = "random-phases"
    phases: tuple = ()
    z: tuple = ()
    q_size: int = 0
    p_size: int = 0
    psi: float = 0.0
    amplitude: float = 0.0


@dataclass(frozen=True)
class SyntheticAB:
    """Hand-specified alpha-polynomial coefficients for the cluster bracket."""

    a1_poly: tuple
    b1_poly: tuple
    a2_poly: tuple
    b2_poly: tuple


@dataclass(frozen=True)
class ClusterScanSpec:
    alpha_grid: int = 64
    psi_grid: int = 64
    synthetic_ab: SyntheticAB | None = None


@dataclass(frozen=True)
class RunConfig:
    lam: float
    omega: float
    epsilon: float
    n_osc: int
    coeffs: NormalFormCoefficients
    delta: float = 0.0
    dt: float | None = None
    t_end: float | None = None
    seed: int = 0
    initial: InitialSpec = field(default_factory=InitialSpec)
    cluster: ClusterScanSpec = field(default_factory=ClusterScanSpec)
    output: str | None = None

    def system_params(self) -> SystemParams:
        return SystemParams(lam=self.lam, omega=self.omega, epsilon=self.epsilon,
                            n_osc=self.n_osc, coeffs=self.coeffs)

    def resolved_dt(self) -> float:
        if self.dt is not None:
            return self.dt
        _, omega_cap = limit_cycle(self.system_params())
        return default_dt(self.lam, omega_cap)


def _require(raw: dict, key: str, label: str | None = None):
    if key not in raw:
        raise ConfigError(f"missing required field '{label or key}'")
    return raw[key]


def _as_float(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{key}' must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"field '{key}' must be finite")
    return value


def _as_int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{key}' must be an integer")
    return value


def _parse_complex(value, key: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, list):
        if len(value) != 2:
            raise ConfigError(f"field '{key}' must be a [re, im] pair")
        return complex(_as_float(value[0], key), _as_float(value[1], key))
    if isinstance(value, dict):
        extra = set(value) - {"modulus", "phase"}
        if extra:
            raise ConfigError(f"field '{key}' has unknown keys {sorted(extra)}")
        mod = _as_float(value.get("modulus", 0.0), f"{key}.modulus")
        ph = _as_float(value.get("phase", 0.0), f"{key}.phase")
        return mod * cmath.exp(1j * ph)
    raise ConfigError(f"field '{key}' must be [re, im] or {{modulus, phase}}")


def _parse_coefficients(raw, parent="coefficients") -> NormalFormCoefficients:
    if not isinstance(raw, dict):
        raise ConfigError(f"field '{parent}' must be an object")
    unknown = set(raw) - set(_COEFF_KEYS)
    if unknown:
        raise ConfigError(f"field '{parent}' has unknown keys {sorted(unknown)}")
    if "a1" not in raw:
        raise ConfigError(f"missing required field '{parent}.a1'")
    values = {key: _parse_complex(raw[key], f"{parent}.{key}") for key in raw}
    try:
        return NormalFormCoefficients(**values)
    except ValueError as exc:
        raise ConfigError(f"field '{parent}': {exc}") from exc


def _parse_initial(raw) -> InitialSpec:
    if not isinstance(raw, dict):
        raise ConfigError("field 'initial' must be an object")
    kind = raw.get("kind", "random-phases")
    if kind not in _INITIAL_KINDS:
        raise ConfigError(
            f"field 'initial.kind' must be one of {list(_INITIAL_KINDS)}, got {kind!r}")
    allowed = {
        "random-phases": set(),
        "explicit": {"phases", "z"},
        "splay": set(),
        "two-cluster": {"q_size", "p_size", "psi"},
        "perturbed-sync": {"amplitude"},
    }[kind]
    extra = set(raw) - allowed - {"kind"}
    if extra:
        raise ConfigError(f"field 'initial' has keys {sorted(extra)} not valid "
                          f"for kind {kind!r}")
    spec = {"kind": kind}
    if kind == "explicit":
        has_phases = "phases" in raw
        has_z = "z" in raw
        if has_phases == has_z:
            raise ConfigError("field 'initial' with kind 'explicit' needs exactly "
                              "one of 'phases' or 'z'")
        if has_phases:
            phases = raw["phases"]
            if not isinstance(phases, list) or not phases:
                raise ConfigError("field 'initial.phases' must be a nonempty list")
            spec["phases"] = tuple(_as_float(x, "initial.phases") for x in phases)
        else:
            z = raw["z"]
            if not isinstance(z, list) or not z:
                raise ConfigError("field 'initial.z' must be a nonempty list")
            spec["z"] = tuple(_parse_complex(x, "initial.z") for x in z)
    elif kind == "two-cluster":
        q_size = _as_int(_require(raw, "q_size", "initial.q_size"),
                         "initial.q_size")
        p_size = _as_int(_require(raw, "p_size", "initial.p_size"),
                         "initial.p_size")
        if q_size < 1 or p_size < 1:
            raise ConfigError("fields 'initial.q_size' and 'initial.p_size' must "
                              "be positive")
        spec.update(q_size=q_size, p_size=p_size,
                    psi=_as_float(raw.get("psi", math.pi), "initial.psi"))
    elif kind == "perturbed-sync":
        amp = _as_float(raw.get("amplitude", 0.1), "initial.amplitude")
        if amp < 0:
            raise ConfigError("field 'initial.amplitude' must be nonnegative")
        spec["amplitude"] = amp
    return InitialSpec(**spec)


def _parse_poly(value, key: str) -> tuple:
    if not isinstance(value, list) or not value or len(value) > 4:
        raise ConfigError(f"field '{key}' must be a list of 1 to 4 numbers "
                          "(ascending polynomial coefficients)")
    return tuple(_as_float(x, key) for x in value)


def _parse_cluster(raw) -> ClusterScanSpec:
    if not isinstance(raw, dict):
        raise ConfigError("field 'cluster' must be an object")
    extra = set(raw) - {"alpha_grid", "psi_grid", "synthetic_ab"}
    if extra:
        raise ConfigError(f"field 'cluster' has unknown keys {sorted(extra)}")
    alpha_grid = _as_int(raw.get("alpha_grid", 64), "cluster.alpha_grid")
    psi_grid = _as_int(raw.get("psi_grid", 64), "cluster.psi_grid")
    if alpha_grid < 1 or psi_grid < 1:
        raise ConfigError("cluster grid sizes must be positive")
    synth = None
    if raw.get("synthetic_ab") is not None:
        sub = raw["synthetic_ab"]
        if not isinstance(sub, dict):
            raise ConfigError("field 'cluster.synthetic_ab' must be an object")
        extra = set(sub) - {"a1", "b1", "a2", "b2"}
        if extra:
            raise ConfigError(
                f"field 'cluster.synthetic_ab' has unknown keys {sorted(extra)}")
        fields = {}
        for name in ("a1", "b1", "a2", "b2"):
            label = f"cluster.synthetic_ab.{name}"
            fields[f"{name}_poly"] = _parse_poly(_require(sub, name, label),
                                                 label)
        synth = SyntheticAB(**fields)
    return ClusterScanSpec(alpha_grid=alpha_grid, psi_grid=psi_grid,
                           synthetic_ab=synth)


_TOP_KEYS = {"lambda", "omega", "epsilon", "n_osc", "coefficients", "delta",
             "dt", "t_end", "seed", "initial", "cluster", "output"}


def parse_config(text: str) -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level fields {sorted(unknown)}")

    lam = _as_float(_require(raw, "lambda"), "lambda")
    if lam <= 0:
        raise ConfigError("field 'lambda' must be positive")
    omega = _as_float(_require(raw, "omega"), "omega")
    epsilon = _as_float(_require(raw, "epsilon"), "epsilon")
    n_osc = _as_int(_require(raw, "n_osc"), "n_osc")
    coeffs = _parse_coefficients(_require(raw, "coefficients"))

    delta = _as_float(raw.get("delta", 0.0), "delta")
    dt = None
    if raw.get("dt") is not None:
        dt = _as_float(raw["dt"], "dt")
        if dt <= 0:
            raise ConfigError("field 'dt' must be positive")
    t_end = None
    if raw.get("t_end") is not None:
        t_end = _as_float(raw["t_end"], "t_end")
        if t_end <= 0:
            raise ConfigError("field 't_end' must be positive")
    seed = _as_int(raw.get("seed", 0), "seed")
    if seed < 0:
        raise ConfigError("field 'seed' must be nonnegative")
    initial = _parse_initial(raw.get("initial", {}))
    cluster = _parse_cluster(raw.get("cluster", {}))
    output = raw.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError("field 'output' must be a string path")

    cfg = RunConfig(lam=lam, omega=omega, epsilon=epsilon, n_osc=n_osc,
                    coeffs=coeffs, delta=delta, dt=dt, t_end=t_end, seed=seed,
                    initial=initial, cluster=cluster, output=output)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    try:
        cfg.system_params()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    init = cfg.initial
    if init.kind == "explicit":
        length = len(init.phases) if init.phases else len(init.z)
        if length != cfg.n_osc:
            raise ConfigError(
                f"field 'initial' lists {length} oscillators but n_osc is "
                f"{cfg.n_osc}")
    if init.kind == "two-cluster" and init.q_size + init.p_size != cfg.n_osc:
        raise ConfigError(
            f"fields 'initial.q_size' + 'initial.p_size' must sum to n_osc "
            f"({cfg.n_osc}), got {init.q_size + init.p_size}")


def _complex_pair(value: complex):
    return [float(value.real), float(value.imag)]


def serialize_config(cfg: RunConfig) -> str:
    """Canonical JSON text; stable key order, complex values as [re, im]."""
    coeff_map = cfg.coeffs.as_dict()
    coefficients = {key: _complex_pair(coeff_map[key]) for key in _COEFF_KEYS}

    init = cfg.initial
    initial: dict = {"kind": init.kind}
    if init.kind == "explicit":
        if init.phases:
            initial["phases"] = [float(x) for x in init.phases]
        else:
            initial["z"] = [_complex_pair(z) for z in init.z]
    elif init.kind == "two-cluster":
        initial.update(q_size=init.q_size, p_size=init.p_size, psi=init.psi)
    elif init.kind == "perturbed-sync":
        initial["amplitude"] = init.amplitude

    cluster: dict = {"alpha_grid": cfg.cluster.alpha_grid,
                     "psi_grid": cfg.cluster.psi_grid,
                     "synthetic_ab": None}
    if cfg.cluster.synthetic_ab is not None:
        synth = cfg.cluster.synthetic_ab
        cluster["synthetic_ab"] = {"a1": list(synth.a1_poly),
                                   "b1": list(synth.b1_poly),
                                   "a2": list(synth.a2_poly),
                                   "b2": list(synth.b2_poly)}

    doc = {
        "lambda": cfg.lam,
        "omega": cfg.omega,
        "epsilon": cfg.epsilon,
        "n_osc": cfg.n_osc,
        "coefficients": coefficients,
        "delta": cfg.delta,
        "dt": cfg.dt,
        "t_end": cfg.t_end,
        "seed": cfg.seed,
        "initial": initial,
        "cluster": cluster,
        "output": cfg.output,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def normalize_config_text(text: str) -> str:
    return serialize_config(parse_config(text))


# ---------------------------------------------------------------------------
# initial states


def initial_phases(cfg: RunConfig) -> np.ndarray:
    """Initial phase vector per the configured initial-condition kind.

    Random draws use the counter-based Philox generator under the configured
    seed, so equal seeds give bit-equal states.
    """
    n = cfg.n_osc
    init = cfg.initial
    if init.kind == "explicit":
        if init.z:
            return np.angle(np.asarray(init.z, dtype=complex))
        return np.asarray(init.phases, dtype=float)
    if init.kind == "splay":
        return 2.0 * np.pi * np.arange(n) / n
    if init.kind == "two-cluster":
        phi = np.zeros(n)
        phi[:init.q_size] = init.psi
        return phi
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    if init.kind == "perturbed-sync":
        return rng.uniform(-init.amplitude, init.amplitude, size=n)
    return rng.uniform(0.0, 2.0 * np.pi, size=n)


def initial_full_state(cfg: RunConfig) -> np.ndarray:
    """Initial complex state; explicit z is used as given, any phase-based
    kind is placed on the circle of limit-cycle radius."""
    if cfg.initial.kind == "explicit" and cfg.initial.z:
        return np.asarray(cfg.initial.z, dtype=complex)
    r_star_sq, _ = limit_cycle(cfg.system_params())
    return math.sqrt(r_star_sq) * np.exp(1j * initial_phases(cfg))
