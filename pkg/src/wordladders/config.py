"""Engine configuration: every tunable the game rules leave open, in one dataclass."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

# config-file keys that map onto differently named fields
_KEY_ALIASES = {
    "n": "n_threshold",
    "N": "n_threshold",
    "g": "good_plays",
    "τ": "tau",
}

_CHOICES = {
    "ulv_mode": ("chain", "count"),
    "kb_mode": ("transitive", "direct"),
    "np_mode": ("graph", "min_arc"),
    "leaderboard_metric": ("cumulative", "mean_stars"),
}


class ConfigError(ValueError):
    pass


@dataclass
class EngineConfig:
    """Tunables with their shipped defaults.

    n_threshold: production frequency at which a non-KB arc becomes valid.
    good_plays: plays needed on a prompt's graph for a trusted evaluation (g).
    tau: minimum fraction of valid arcs below which a ladder is flagged bad.
    """

    n_threshold: int = 50
    good_plays: int = 50
    tau: float = 0.5
    depth_cap: int = 10
    ulv_mode: str = "chain"
    kb_mode: str = "transitive"
    np_mode: str = "graph"
    advance_threshold: float = 50.0
    n_levels: int = 50
    words_per_level: int = 10
    match_duration: float = 120.0
    time_bonus_max: float = 10.0
    specificity_target: int = 100
    leaderboard_metric: str = "cumulative"
    seed: int = 0

    def __post_init__(self):
        if self.n_threshold < 1:
            raise ConfigError("n_threshold must be >= 1")
        if self.good_plays < 1:
            raise ConfigError("good_plays must be >= 1")
        if not 0.0 <= self.tau <= 1.0:
            raise ConfigError("tau must lie in [0, 1]")
        if self.depth_cap < 1:
            raise ConfigError("depth_cap must be >= 1")
        if self.match_duration <= 0:
            raise ConfigError("match_duration must be positive")
        for key, choices in _CHOICES.items():
            if getattr(self, key) not in choices:
                raise ConfigError(f"{key} must be one of {choices}")


def _coerce(raw: str, target_type: type):
    raw = raw.strip().strip("\"'")
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    return raw


def load_config(path: str | Path) -> EngineConfig:
    """Read a flat ``key = value`` file (TOML/INI style, '#' comments allowed)."""
    fields = {f.name: f.type for f in dataclasses.fields(EngineConfig)}
    types = {f.name: type(f.default) for f in dataclasses.fields(EngineConfig)}
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _KEY_ALIASES:
            key = key.lower()
        key = _KEY_ALIASES.get(key, key)
        if key not in fields:
            raise ConfigError(f"{path}:{lineno}: unknown setting {key!r}")
        try:
            values[key] = _coerce(raw, types[key])
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value {raw!r} for {key}") from None
    return EngineConfig(**values)
