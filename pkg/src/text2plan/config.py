"""Pipeline configuration: defaults < config file < command-line flags.

The config file is flat ``key = value`` text; ``#`` starts a comment.
Style options use a ``style.`` prefix, e.g. ``style.wall_stroke = 3``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Mapping

from .render import StyleConfig

CONFIG_ENV = "T2P_CONFIG"

# accepted spellings -> canonical value
CLASSIFIER_MODES = {"rule": "rule", "rule-based": "rule", "cnn": "cnn", "trained": "cnn"}
CENTRALITY_MODES = {"degree": "degree", "pagerank": "pagerank", "power-iteration": "pagerank"}
TRUE = {"1", "true", "yes", "on"}
FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class PipelineConfig:
    reduction_ratio: float = 0.6
    seed: int = 0
    classifier_mode: str = "rule"
    centrality_mode: str = "degree"
    strict: bool = False
    output_dir: Path = Path("out")
    model: Path | None = None
    keep_partial: bool = False
    style: StyleConfig = field(default_factory=StyleConfig)

    def __post_init__(self):
        if not 0 < self.reduction_ratio <= 1:
            raise ValueError(f"ratio must lie in (0, 1], got {self.reduction_ratio}")
        if self.classifier_mode not in ("rule", "cnn"):
            raise ValueError(f"unknown classifier mode {self.classifier_mode!r}")
        if self.centrality_mode not in ("degree", "pagerank"):
            raise ValueError(f"unknown centrality {self.centrality_mode!r}")


# config-file key -> field name
KEYS = {
    "ratio": "reduction_ratio",
    "reduction_ratio": "reduction_ratio",
    "seed": "seed",
    "classifier": "classifier_mode",
    "classifier_mode": "classifier_mode",
    "centrality": "centrality_mode",
    "centrality_mode": "centrality_mode",
    "strict": "strict",
    "out": "output_dir",
    "output_dir": "output_dir",
    "model": "model",
    "keep_partial": "keep_partial",
    "keep-partial": "keep_partial",
}


def parse_config_text(text: str, source: str = "config") -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{source}:{lineno}: expected key = value")
        values[key.strip()] = value.strip()
    return values


def _bool(v: str, key: str) -> bool:
    s = v.strip().lower()
    if s in TRUE:
        return True
    if s in FALSE:
        return False
    raise ValueError(f"{key}: expected a boolean, got {v!r}")


def _convert(name: str, value, key: str):
    if not isinstance(value, str):
        return value
    if name == "reduction_ratio":
        return float(value)
    if name == "seed":
        return int(value)
    if name in ("strict", "keep_partial"):
        return _bool(value, key)
    if name == "classifier_mode":
        try:
            return CLASSIFIER_MODES[value]
        except KeyError:
            raise ValueError(f"{key}: expected rule or cnn, got {value!r}") from None
    if name == "centrality_mode":
        try:
            return CENTRALITY_MODES[value]
        except KeyError:
            raise ValueError(f"{key}: expected degree or pagerank, got {value!r}") from None
    if name in ("output_dir", "model"):
        return Path(value)
    return value


def apply_values(cfg: PipelineConfig, values: Mapping[str, object], source: str = "config") -> PipelineConfig:
    changes: dict[str, object] = {}
    style: dict[str, str] = {}
    style_names = {f.name for f in fields(StyleConfig)}
    for key, value in values.items():
        if key.startswith("style."):
            sub = key[len("style."):]
            if sub not in style_names:
                raise ValueError(f"{source}: unknown style option {sub!r}")
            style[sub] = value
            continue
        if key not in KEYS:
            raise ValueError(f"{source}: unknown option {key!r}")
        name = KEYS[key]
        changes[name] = _convert(name, value, key)
    if style:
        base = {f.name: getattr(cfg.style, f.name) for f in fields(StyleConfig)}
        base.update(style)
        changes["style"] = StyleConfig.from_mapping({k: str(v) for k, v in base.items()})
    return replace(cfg, **changes)


def load_config(path: str | Path | None = None, overrides: Mapping[str, object] | None = None) -> PipelineConfig:
    """Defaults, then the file (``path`` or ``$T2P_CONFIG``), then ``overrides``."""
    cfg = PipelineConfig()
    path = path or os.environ.get(CONFIG_ENV) or None
    if path:
        p = Path(path)
        cfg = apply_values(cfg, parse_config_text(p.read_text(encoding="utf-8"), str(p)), str(p))
    if overrides:
        cfg = apply_values(cfg, {k: v for k, v in overrides.items() if v is not None}, "flags")
    return cfg
