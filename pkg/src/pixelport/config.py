"""Flat key=value run configuration.

One setting per line, ``key = value``; blank lines and ``#`` comments are
ignored.  No sections, no nesting, so any language can parse it.  Unknown
keys are rejected rather than silently dropped.

The channel is configured either with a uniform squeezing (``mode = ideal``,
``ideal_r``) or from a down-conversion profile (``mode = spdc``) given as
ring parameters (``ring_r0``, ``ring_width``, ``ring_xi``) or as the full
physical parameter set (``spdc_*``), but never both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .spdc import RingParams, SpdcParams

__all__ = ["ConfigError", "RunConfig", "parse_config", "load_config"]


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


_RING_KEYS = ("ring_r0", "ring_width", "ring_xi")
_SPDC_KEYS = (
    "spdc_pump_waist",
    "spdc_mode_waist",
    "spdc_length",
    "spdc_pump_k",
    "spdc_signal_k",
    "spdc_angle",
    "spdc_focal",
    "spdc_xi",
)
_KNOWN_KEYS = frozenset(
    (
        "mode",
        "input",
        "output",
        "fidelity_map",
        "summary",
        "seed",
        "n_shots",
        "pitch",
        "origin_x",
        "origin_y",
        "ideal_r",
    )
    + _RING_KEYS
    + _SPDC_KEYS
)


@dataclass
class RunConfig:
    """Everything one teleportation run needs."""

    mode: str
    input_path: str
    output_path: str = "teleported.csv"
    fidelity_map_path: str = "fidelity_map.csv"
    summary_path: str = "summary.txt"
    seed: int = 0
    n_shots: int = 0
    pitch: float = 1.0
    origin: tuple[float, float] | None = None  # None centers the grid on the axis
    ideal_r: float | None = None
    ring: RingParams | None = None
    spdc: SpdcParams | None = None


def _to_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}") from None


def _to_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {raw!r}") from None


def parse_config(text: str) -> RunConfig:
    """Parse config text; raises ConfigError on anything inconsistent."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        raw[key] = value

    mode = raw.get("mode")
    if mode not in ("ideal", "spdc"):
        raise ConfigError(f"mode must be 'ideal' or 'spdc', got {mode!r}")
    if "input" not in raw:
        raise ConfigError("missing required key 'input'")

    cfg = RunConfig(mode=mode, input_path=raw["input"])
    if "output" in raw:
        cfg.output_path = raw["output"]
    if "fidelity_map" in raw:
        cfg.fidelity_map_path = raw["fidelity_map"]
    if "summary" in raw:
        cfg.summary_path = raw["summary"]
    if "seed" in raw:
        cfg.seed = _to_int("seed", raw["seed"])
    if "n_shots" in raw:
        cfg.n_shots = _to_int("n_shots", raw["n_shots"])
        if cfg.n_shots < 0:
            raise ConfigError("n_shots must be non-negative")
    if "pitch" in raw:
        cfg.pitch = _to_float("pitch", raw["pitch"])
        if not cfg.pitch > 0:
            raise ConfigError("pitch must be positive")
    if ("origin_x" in raw) != ("origin_y" in raw):
        raise ConfigError("origin_x and origin_y must be given together")
    if "origin_x" in raw:
        cfg.origin = (_to_float("origin_x", raw["origin_x"]), _to_float("origin_y", raw["origin_y"]))

    ring_given = [k for k in _RING_KEYS if k in raw]
    spdc_given = [k for k in _SPDC_KEYS if k in raw]
    if mode == "ideal":
        if "ideal_r" not in raw:
            raise ConfigError("mode=ideal requires ideal_r")
        if ring_given or spdc_given:
            raise ConfigError("mode=ideal takes no ring_*/spdc_* keys")
        cfg.ideal_r = _to_float("ideal_r", raw["ideal_r"])
        if cfg.ideal_r < 0:
            raise ConfigError("ideal_r must be non-negative")
    else:
        if "ideal_r" in raw:
            raise ConfigError("mode=spdc takes no ideal_r")
        if ring_given and spdc_given:
            raise ConfigError("give ring_* or spdc_* parameters, not both")
        if len(ring_given) not in (0, len(_RING_KEYS)):
            missing = sorted(set(_RING_KEYS) - set(ring_given))
            raise ConfigError(f"incomplete ring parameters, missing {missing}")
        if len(spdc_given) not in (0, len(_SPDC_KEYS)):
            missing = sorted(set(_SPDC_KEYS) - set(spdc_given))
            raise ConfigError(f"incomplete spdc parameters, missing {missing}")
        if not ring_given and not spdc_given:
            raise ConfigError("mode=spdc requires ring_* or spdc_* parameters")
        try:
            if ring_given:
                cfg.ring = RingParams(
                    r0=_to_float("ring_r0", raw["ring_r0"]),
                    R=_to_float("ring_width", raw["ring_width"]),
                    Xi=_to_float("ring_xi", raw["ring_xi"]),
                )
            else:
                cfg.spdc = SpdcParams(
                    w_p=_to_float("spdc_pump_waist", raw["spdc_pump_waist"]),
                    w_0=_to_float("spdc_mode_waist", raw["spdc_mode_waist"]),
                    L=_to_float("spdc_length", raw["spdc_length"]),
                    k_p=_to_float("spdc_pump_k", raw["spdc_pump_k"]),
                    k_d=_to_float("spdc_signal_k", raw["spdc_signal_k"]),
                    theta_d=_to_float("spdc_angle", raw["spdc_angle"]),
                    f=_to_float("spdc_focal", raw["spdc_focal"]),
                    Xi=_to_float("spdc_xi", raw["spdc_xi"]),
                )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc
        if cfg.spdc is not None and cfg.spdc.theta_d >= math.pi / 2:
            raise ConfigError("spdc_angle must lie below pi/2")
    return cfg


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)
