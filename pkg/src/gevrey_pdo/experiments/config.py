"""Suite configuration: YAML files with a ``schema_version`` and per-suite defaults."""
from __future__ import annotations

import copy
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

SCHEMA_VERSION = 1
SUITES = ("inequalities", "embedding", "conjugation", "quantization", "action", "symbol5")

DEFAULTS = {
    "inequalities": {
        "sweeps": {"d": [1, 2, 3], "sigma": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
                   "K": [1.5, 2.0, 10.0]},
        "samples": {"per_inequality": 1_000_000, "constant_grid": 200},
        "tolerances": {"relative": 1e-12},
    },
    "embedding": {
        "grid": {"d": 1, "N": 256, "L": 4.0},
        "sweeps": {"s": [1.5, 2.0, 3.0], "tau_fraction": [0.25, 0.5, 0.75]},
        "samples": {"alpha_max": 8},
        "tolerances": {"margin": 0.0},
    },
    "quantization": {
        "grid": {"d": 1, "N": 64, "L": 6.283185307179586},
        "sweeps": {"h": [0.0, 0.25, 0.5]},
        "samples": {"cases": 100, "symbol_band": 16, "input_band": 15},
        "tolerances": {"relative": 1e-8},
    },
    "conjugation": {
        "grid": {"d": 1, "N": 128, "L": 6.283185307179586},
        "sweeps": {"sigma": [0.5], "tau": [0.3], "m": [1.0], "N_refine": [64, 128, 256]},
        "samples": {"identity_cases": 50, "kernel_cases": 10, "corpus": 20, "partition": 1_000_000,
                    "weight": 200_000, "symbol_band": 16, "input_band": 32},
        "tolerances": {"identity": 1e-6, "kernel": 1e-10, "stability": 0.2},
    },
    "action": {
        "grid": {"d": 1, "N": 128, "L": 6.283185307179586},
        "sweeps": {"s": [2.0], "delta": [0.25], "tau": [0.4], "N_refine": [128, 256],
                   "diagnostic_bands": [16, 64], "diagnostic_tau_prime_factor": [5.0]},
        "samples": {"inputs": 30, "band": 24, "diagnostic_inputs": 10},
        "tolerances": {"drift": 0.2, "growth": 10.0},
    },
    "symbol5": {
        "grid": {"d": 1, "N": 512, "L": 2.0},
        "sweeps": {"k": [0, 1, 2], "m": [0.0], "s": [2.0], "sigma": [0.5], "tau": [0.3],
                   "orders": [[0, 0], [1, 0], [0, 1]], "gaps": [0.4, 0.2, 0.1, 0.05],
                   "held_out_gaps": [0.3, 0.15, 0.075], "tau_bar": [0.6], "fd_orders": [1, 2]},
        "samples": {"envelope_N": 128, "envelope_L": 6.283185307179586, "fd_points": 81},
        "tolerances": {"order_slack": 0.3},
    },
}

_SECTIONS = ("grid", "sweeps", "samples", "tolerances")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field and domain."""


@dataclass
class SuiteConfig:
    suite: str
    seed: int = 0
    grid: dict = field(default_factory=dict)
    sweeps: dict = field(default_factory=dict)
    samples: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    workers: int = 1

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite, "seed": self.seed,
                "grid": self.grid, "sweeps": self.sweeps, "samples": self.samples,
                "tolerances": self.tolerances, "out": self.out}


def default_config(suite: str, seed: int = 0) -> SuiteConfig:
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    base = copy.deepcopy(DEFAULTS[suite])
    return SuiteConfig(suite, seed, **{k: base.get(k, {}) for k in _SECTIONS})


def config_from_dict(raw: dict, suite: str | None = None) -> SuiteConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")
    name = suite or raw.get("suite")
    if name is None:
        raise ConfigError("config names no suite")
    if suite and raw.get("suite") not in (None, suite):
        raise ConfigError(f"config is for suite {raw.get('suite')!r}, not {suite!r}")
    unknown = set(raw) - {"schema_version", "suite", "seed", "out", *_SECTIONS}
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    cfg = default_config(name, int(raw.get("seed", 0)))
    for sec in _SECTIONS:
        given = raw.get(sec) or {}
        if not isinstance(given, dict):
            raise ConfigError(f"section {sec!r} must be a mapping")
        extra = set(given) - set(getattr(cfg, sec))
        if extra:
            raise ConfigError(f"unknown keys in {sec!r}: {sorted(extra)}")
        getattr(cfg, sec).update(given)
    cfg.out = raw.get("out")
    validate(cfg)
    return cfg


def load_config(path, suite: str | None = None) -> SuiteConfig:
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return config_from_dict(raw, suite)


def _require(cond, what):
    if not cond:
        raise ConfigError(what)


def _all(values, pred, name, domain):
    for v in values:
        _require(isinstance(v, (int, float)) and pred(v), f"{name}={v!r} outside {domain}")


def validate(cfg: SuiteConfig) -> None:
    """Check every sweep value against the domain of the routine that consumes it."""
    _require(cfg.suite in SUITES, f"unknown suite {cfg.suite!r}")
    _require(isinstance(cfg.seed, int) and 0 <= cfg.seed < 2**64, "seed must be a 64-bit unsigned integer")
    g = cfg.grid
    if g:
        _require(g.get("d") in (1, 2, 3), f"grid.d={g.get('d')!r} outside {{1, 2, 3}}")
        n = g.get("N")
        _require(isinstance(n, int) and n >= 4 and n & (n - 1) == 0, f"grid.N={n!r} is not a power of two >= 4")
        _require(isinstance(g.get("L"), (int, float)) and g["L"] > 0, f"grid.L={g.get('L')!r} must be positive")
    sw = cfg.sweeps
    if "sigma" in sw:
        _all(sw["sigma"], lambda v: 0 < v < 1, "sigma", "(0, 1)")
    if "K" in sw:
        _all(sw["K"], lambda v: v > 1, "K", "(1, inf)")
    if "s" in sw:
        _all(sw["s"], lambda v: v > 1, "s", "(1, inf)")
    if "h" in sw:
        _all(sw["h"], lambda v: 0 <= v <= 1, "h", "[0, 1]")
    if "tau" in sw:
        _all(sw["tau"], lambda v: v >= 0, "tau", "[0, inf)")
    if "tau_fraction" in sw:
        _all(sw["tau_fraction"], lambda v: 0 <= v < 1, "tau_fraction", "[0, 1)")
    if "delta" in sw:
        _all(sw["delta"], lambda v: 0 <= v < 1, "delta", "[0, 1)")
    if "d" in sw:
        _all(sw["d"], lambda v: v in (1, 2, 3), "d", "{1, 2, 3}")
    if "m" in sw:
        _all(sw["m"], lambda v: v >= 0, "m", "[0, inf)")
    if "k" in sw:
        _all(sw["k"], lambda v: v in (0, 1, 2, 3), "k", "{0, 1, 2, 3}")
    for key in ("N_refine",):
        if key in sw:
            _all(sw[key], lambda v: isinstance(v, int) and v >= 4 and v & (v - 1) == 0, key, "powers of two")
    for key in ("gaps", "held_out_gaps"):
        if key in sw:
            _all(sw[key], lambda v: v > 0, key, "(0, inf)")
            if sw.get("tau_bar"):
                _all(sw[key], lambda v: v <= sw["tau_bar"][0], key, "(0, tau_bar]")
    for key, val in cfg.samples.items():
        if isinstance(val, int):
            _require(val >= 0, f"samples.{key}={val} must be nonnegative")
    for key, val in cfg.tolerances.items():
        _require(isinstance(val, (int, float)) and val >= 0, f"tolerances.{key}={val!r} must be nonnegative")


def case_rng(seed: int, suite: str, case_index: int) -> np.random.Generator:
    """Philox stream keyed by a hash of ``(seed, suite, case_index)``; independent of execution order."""
    digest = hashlib.blake2b(f"{seed}:{suite}:{case_index}".encode(), digest_size=16).digest()
    return np.random.Generator(np.random.Philox(key=int.from_bytes(digest, "little")))
