"""Experiment configuration: validation, key-value files and figure presets."""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, field, fields, replace
from typing import Dict, Optional, Tuple

from .analytics import DEFAULT_TABLE_GRID, SURFACE_MODES
from .observability import REWARD_BASES

SCENARIOS = ("fo", "po-absolute", "po-mixed", "surface", "game", "lambda-eff",
             "appendix", "coalition", "oracle")
SECTION = "experiment"


class ConfigError(ValueError):
    pass


def _grid(start, stop, step):
    n = int(round((stop - start) / step))
    return tuple(round(start + k * step, 10) for k in range(n + 1))


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = "fo"
    N: int = 2
    alpha: float = 1.0
    gamma_d: float = 0.0
    gamma_i: float = 0.0
    m: int = 1000
    t_max: int = 1000
    seed: int = 0
    t_switch: Optional[int] = None
    out: Optional[str] = None
    window: int = 50
    colored: bool = False
    reward_basis: str = "perceived"
    mode: str = "closed-form"
    gammas: Tuple[float, ...] = DEFAULT_TABLE_GRID
    gamma_i_grid: Tuple[float, ...] = DEFAULT_TABLE_GRID
    alphas: Tuple[float, ...] = ()
    alpha_a: float = 0.0
    alpha_b: float = 1.0
    gamma_a: float = 0.0
    gamma_b: float = 0.9
    total_gamma: float = 1.0
    threads: int = 1

    def validate(self) -> "ExperimentConfig":
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        unit = ["alpha", "gamma_d", "gamma_i", "alpha_a", "alpha_b", "gamma_a", "gamma_b", "total_gamma"]
        for name in unit:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name}={v} must lie in [0, 1]")
        for name in ("gammas", "gamma_i_grid", "alphas"):
            for v in getattr(self, name):
                if not 0.0 <= v <= 1.0:
                    raise ConfigError(f"{name} entry {v} must lie in [0, 1]")
        if self.m < 1 or self.t_max < 1:
            raise ConfigError("m and t_max must be at least 1")
        if self.N < 2:
            raise ConfigError("N must be at least 2")
        if self.window < 1:
            raise ConfigError("window must be at least 1")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        if self.t_switch is not None and self.t_switch < 1:
            raise ConfigError("t_switch must be a positive step index")
        if self.reward_basis not in REWARD_BASES:
            raise ConfigError(f"reward_basis must be one of {REWARD_BASES}")
        if self.mode not in SURFACE_MODES:
            raise ConfigError(f"mode must be one of {SURFACE_MODES}")
        if self.gamma_a > self.total_gamma or self.gamma_b > self.total_gamma:
            raise ConfigError("blocking factors cannot exceed total_gamma")
        return self

    def with_overrides(self, **kw) -> "ExperimentConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw).validate()


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _parse_value(name: str, raw: str):
    kind = _FIELD_TYPES[name]
    raw = raw.strip()
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind == "Optional[int]":
            return None if raw.lower() in ("", "none") else int(raw)
        if kind == "Optional[str]":
            return None if raw.lower() in ("", "none") else raw
        if kind.startswith("Tuple"):
            return tuple(float(x) for x in raw.replace(",", " ").split())
        return raw
    except ValueError:
        raise ConfigError(f"cannot parse {name} = {raw!r}") from None


def parse_config(text: str) -> ExperimentConfig:
    cp = configparser.ConfigParser()
    cp.optionxform = str
    try:
        cp.read_string(text if text.lstrip().startswith("[") else f"[{SECTION}]\n{text}")
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    section = cp[SECTION] if cp.has_section(SECTION) else {}
    values = {}
    for key, raw in section.items():
        name = key.replace("-", "_")
        if name not in _FIELD_TYPES and name.lower() in _FIELD_TYPES:
            name = name.lower()
        if name not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        values[name] = _parse_value(name, raw)
    return ExperimentConfig(**values).validate()


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None


def dump_config(cfg: ExperimentConfig) -> str:
    lines = [f"[{SECTION}]"]
    for f in fields(cfg):
        v = getattr(cfg, f.name)
        if isinstance(v, tuple):
            v = ", ".join(repr(x) for x in v)
        lines.append(f"{f.name} = {'none' if v is None else v}")
    return "\n".join(lines) + "\n"


_FINE = _grid(0.0, 1.0, 0.05)
_COARSE = _grid(0.0, 1.0, 0.25)

# fig1, fig4 and fig10 are model diagrams; their presets run the scenario each one depicts
PRESETS: Dict[str, ExperimentConfig] = {
    "fig1": ExperimentConfig(scenario="po-absolute", alpha=0.0, gamma_d=0.1, gamma_i=0.1, m=10000, t_max=1000),
    "fig2": ExperimentConfig(scenario="lambda-eff", gammas=DEFAULT_TABLE_GRID, m=10000, t_max=1000, seed=2022),
    "fig3a": ExperimentConfig(scenario="po-absolute", alpha=0.0, gamma_d=0.01, gamma_i=0.0, m=10000, t_max=1000),
    "fig3b": ExperimentConfig(scenario="po-absolute", alpha=0.0, gamma_d=0.1, gamma_i=0.0, m=10000, t_max=1000),
    "fig3c": ExperimentConfig(scenario="po-absolute", alpha=0.0, gamma_d=0.01, gamma_i=0.1, m=10000, t_max=1000),
    "fig3d": ExperimentConfig(scenario="po-absolute", alpha=0.0, gamma_d=0.1, gamma_i=0.1, m=10000, t_max=1000),
    "fig4": ExperimentConfig(scenario="po-mixed", alpha=0.5, gamma_d=0.1, gamma_i=0.1, m=10000, t_max=1000),
    "fig5": ExperimentConfig(scenario="po-absolute", alpha=0.0, gamma_d=1.0, gamma_i=1.0, m=10000, t_max=1000),
    "fig6a": ExperimentConfig(scenario="surface", mode="monte-carlo", alphas=(1.0,), gammas=_COARSE,
                              gamma_i_grid=_COARSE, m=10000, t_max=1000),
    "fig6b": ExperimentConfig(scenario="surface", mode="monte-carlo", alphas=(0.5,), gammas=_COARSE,
                              gamma_i_grid=_COARSE, m=10000, t_max=1000),
    "fig6c": ExperimentConfig(scenario="surface", mode="monte-carlo", alphas=(0.0,), gammas=_COARSE,
                              gamma_i_grid=_COARSE, m=10000, t_max=1000),
    "fig7": ExperimentConfig(scenario="surface", mode="closed-form", alphas=(0.5,),
                             gammas=_grid(0.0, 1.0, 0.1), gamma_i_grid=_FINE),
    "fig8": ExperimentConfig(scenario="surface", mode="closed-form", alphas=(0.0, 0.25, 0.5, 0.75, 0.99),
                             gammas=_grid(0.0, 1.0, 0.1), gamma_i_grid=_FINE),
    "fig9a": ExperimentConfig(scenario="coalition", alpha=0.0, total_gamma=1.0, gammas=_FINE),
    "fig9b": ExperimentConfig(scenario="coalition", alpha=1.0, total_gamma=1.0, gammas=_FINE),
    "game": ExperimentConfig(scenario="game", alpha_a=0.0, gamma_a=0.0, alpha_b=1.0, gamma_b=0.9),
    "fig10": ExperimentConfig(scenario="game", alpha_a=0.0, gamma_a=0.0, alpha_b=1.0, gamma_b=0.9),
    "fig11": ExperimentConfig(scenario="appendix", gamma_d=0.1, t_switch=501, m=10000, t_max=1000, window=10),
}


def preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
