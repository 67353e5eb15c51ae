"""Experiment configuration: a single JSON document, strictly validated.

Keys match the field names below exactly; unknown keys are a hard error so
a typo in gamma/beta can never silently change an experiment. The
dissipation block uses the key "lambda" (mapped to the ``lam`` attribute).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from logdiss.errors import ConfigError
from logdiss.symbols import DissipationSpec

__all__ = ["SimConfig", "VelocitySpec", "load_config", "parse_sim_config"]

_SPEC_KEYS = {"variant", "gamma", "beta", "lambda", "nu"}
_VELOCITY_KEYS = {"kind", "amplitude", "seed", "time_dependence", "frequency"}
_SIM_KEYS = {
    "dim", "n", "half_width", "spec", "velocity", "theta_seed", "p_list",
    "t_final", "cfl", "sample_every", "out_csv", "out_json",
}


@dataclass(frozen=True)
class VelocitySpec:
    kind: str = "ZERO"
    amplitude: float = 0.0
    seed: int = 0
    time_dependence: str = "STEADY"
    frequency: float = 0.0


@dataclass(frozen=True)
class SimConfig:
    dim: int
    n: int
    half_width: float
    spec: DissipationSpec
    velocity: VelocitySpec
    theta_seed: int = 0
    p_list: tuple[float, ...] = (2.0,)
    t_final: float = 1.0
    cfl: float = 0.5
    sample_every: int = 1
    out_csv: str | None = None
    out_json: str | None = None

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "n": self.n,
            "half_width": self.half_width,
            "spec": {
                "variant": self.spec.variant,
                "gamma": self.spec.gamma,
                "beta": self.spec.beta,
                "lambda": self.spec.lam,
                "nu": self.spec.nu,
            },
            "velocity": {
                "kind": self.velocity.kind,
                "amplitude": self.velocity.amplitude,
                "seed": self.velocity.seed,
                "time_dependence": self.velocity.time_dependence,
                "frequency": self.velocity.frequency,
            },
            "theta_seed": self.theta_seed,
            "p_list": ["inf" if math.isinf(p) else p for p in self.p_list],
            "t_final": self.t_final,
            "cfl": self.cfl,
            "sample_every": self.sample_every,
            "out_csv": self.out_csv,
            "out_json": self.out_json,
        }


def _require_keys(doc: dict, allowed: set, context: str) -> None:
    if not isinstance(doc, dict):
        raise ConfigError(f"{context}: expected an object, got {type(doc).__name__}")
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"{context}: unknown keys {sorted(unknown)}; allowed: {sorted(allowed)}")


def _number(doc: dict, key: str, context: str, default=None):
    if key not in doc:
        if default is None:
            raise ConfigError(f"{context}: missing required key {key!r}")
        return default
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{context}.{key}: expected a number, got {val!r}")
    return val


def parse_dissipation(doc: dict) -> DissipationSpec:
    _require_keys(doc, _SPEC_KEYS, "spec")
    variant = doc.get("variant")
    if variant not in ("A", "A1", "FRACTIONAL", "NONE"):
        raise ConfigError(f"spec.variant: expected A|A1|FRACTIONAL|NONE, got {variant!r}")
    try:
        return DissipationSpec(
            variant=variant,
            gamma=float(_number(doc, "gamma", "spec", 0.0)),
            beta=float(_number(doc, "beta", "spec", 0.0)),
            lam=float(_number(doc, "lambda", "spec", 2.0)),
            nu=float(_number(doc, "nu", "spec", 0.0)),
        )
    except ValueError as exc:
        raise ConfigError(f"spec: {exc}") from exc


def parse_velocity(doc: dict) -> VelocitySpec:
    _require_keys(doc, _VELOCITY_KEYS, "velocity")
    kind = doc.get("kind", "ZERO")
    if kind not in ("ZERO", "STREAM", "COMPRESSIBLE"):
        raise ConfigError(f"velocity.kind: expected ZERO|STREAM|COMPRESSIBLE, got {kind!r}")
    td = doc.get("time_dependence", "STEADY")
    if td not in ("STEADY", "OSCILLATORY"):
        raise ConfigError(f"velocity.time_dependence: expected STEADY|OSCILLATORY, got {td!r}")
    amplitude = float(_number(doc, "amplitude", "velocity", 0.0))
    if amplitude < 0:
        raise ConfigError(f"velocity.amplitude: must be >= 0, got {amplitude}")
    return VelocitySpec(
        kind=kind,
        amplitude=amplitude,
        seed=int(_number(doc, "seed", "velocity", 0)),
        time_dependence=td,
        frequency=float(_number(doc, "frequency", "velocity", 0.0)),
    )


def _parse_p(value, context: str) -> float:
    if value == "inf":
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{context}: p entries must be numbers or \"inf\", got {value!r}")
    p = float(value)
    if p < 1.0:
        raise ConfigError(f"{context}: p must be >= 1, got {p}")
    return p


def parse_sim_config(doc: dict) -> SimConfig:
    _require_keys(doc, _SIM_KEYS, "config")
    dim = _number(doc, "dim", "config")
    n = _number(doc, "n", "config")
    if int(dim) != dim or int(n) != n:
        raise ConfigError("config: dim and n must be integers")
    if "spec" not in doc:
        raise ConfigError("config: missing required key 'spec'")
    spec = parse_dissipation(doc["spec"])
    velocity = parse_velocity(doc.get("velocity", {}))
    p_raw = doc.get("p_list", [2.0])
    if not isinstance(p_raw, list) or not p_raw:
        raise ConfigError("config.p_list: must be a non-empty list")
    p_list = tuple(_parse_p(p, "config.p_list") for p in p_raw)
    t_final = float(_number(doc, "t_final", "config", 1.0))
    if t_final < 0:
        raise ConfigError(f"config.t_final: must be >= 0, got {t_final}")
    cfl = float(_number(doc, "cfl", "config", 0.5))
    if not 0 < cfl <= 1.0:
        raise ConfigError(f"config.cfl: must lie in (0, 1], got {cfl}")
    sample_every = int(_number(doc, "sample_every", "config", 1))
    if sample_every < 1:
        raise ConfigError(f"config.sample_every: must be >= 1, got {sample_every}")
    for key in ("out_csv", "out_json"):
        if key in doc and doc[key] is not None and not isinstance(doc[key], str):
            raise ConfigError(f"config.{key}: must be a string path or null")
    try:
        return SimConfig(
            dim=int(dim),
            n=int(n),
            half_width=float(_number(doc, "half_width", "config")),
            spec=spec,
            velocity=velocity,
            theta_seed=int(_number(doc, "theta_seed", "config", 0)),
            p_list=p_list,
            t_final=t_final,
            cfl=cfl,
            sample_every=sample_every,
            out_csv=doc.get("out_csv"),
            out_json=doc.get("out_json"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
