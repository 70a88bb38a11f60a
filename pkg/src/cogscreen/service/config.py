"""key=value service configuration file.

Recognized keys: port, weights_1d, weights_2d, session_ttl_s, and the
per-level game parameters level1.click_threshold, level1.countdown_s,
level1.show_timer_s, level1.rows, level1.cols (same for level2). Lines
starting with '#' and blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..game import DEFAULT_LEVELS, LevelConfig

_LEVEL_FIELDS = {
    "click_threshold": int,
    "countdown_s": float,
    "show_timer_s": float,
    "rows": int,
    "cols": int,
}


@dataclass
class ServiceConfig:
    port: int = 8000
    weights_1d: str | None = None
    weights_2d: str | None = None
    session_ttl_s: float = 1800.0
    levels: dict = field(default_factory=lambda: dict(DEFAULT_LEVELS))


def parse_config(text: str) -> ServiceConfig:
    cfg = ServiceConfig()
    level_overrides: dict[int, dict] = {1: {}, 2: {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "port":
            cfg.port = int(value)
        elif key == "weights_1d":
            cfg.weights_1d = value
        elif key == "weights_2d":
            cfg.weights_2d = value
        elif key == "session_ttl_s":
            cfg.session_ttl_s = float(value)
        elif key.startswith(("level1.", "level2.")):
            level = 1 if key.startswith("level1.") else 2
            fname = key.split(".", 1)[1]
            if fname not in _LEVEL_FIELDS:
                raise ValueError(f"config line {lineno}: unknown level key {key!r}")
            level_overrides[level][fname] = _LEVEL_FIELDS[fname](value)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    for level, overrides in level_overrides.items():
        if overrides:
            cfg.levels[level] = replace(cfg.levels[level], **overrides)
    return cfg


def load_config(path) -> ServiceConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
