"""Engine configuration: defaults, flat key=value files, env override."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

from .characterize import ExtractionConfig
from .errors import ConfigError
from .expressions import DEFAULT_CONNECTORS, DEFAULT_STOPWORDS, Grammar
from .selection import SelectionParams

__all__ = ["EngineConfig", "ENV_CONFIG"]

ENV_CONFIG = "LITHOID_CONFIG"


@dataclass(frozen=True)
class EngineConfig:
    connectors: tuple[str, ...] = DEFAULT_CONNECTORS
    stopwords: frozenset[str] = DEFAULT_STOPWORDS
    stem: bool = False
    max_phrase_terms: int = 6
    min_term_length: int = 2
    lambda_pref: float = 1.0
    lambda_sel: float = 0.1
    w_partial: float = 0.5
    eta_nav: float = 0.1
    eta_fb: float = 1.0
    result_limit: int = 10
    snapshot_path: str = "lithoid.snapshot"
    listen_addr: str = "127.0.0.1:8472"
    session_ttl: float = 1800.0
    profile_path: str = ""

    def __post_init__(self) -> None:
        for name in ("lambda_pref", "lambda_sel", "w_partial", "eta_nav", "eta_fb"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.result_limit < 1:
            raise ConfigError("result_limit must be >= 1")
        if self.session_ttl <= 0:
            raise ConfigError("session_ttl must be > 0")
        if set(self.connectors) & self.stopwords:
            raise ConfigError("connector and stopword tables must be disjoint")

    @property
    def grammar(self) -> Grammar:
        return Grammar(self.connectors, self.stopwords, self.stem)

    @property
    def extraction(self) -> ExtractionConfig:
        return ExtractionConfig(self.grammar, self.max_phrase_terms, self.min_term_length)

    @property
    def selection_params(self) -> SelectionParams:
        return SelectionParams(self.w_partial, self.lambda_sel)

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "EngineConfig":
        kwargs = {}
        valid = {f.name: f for f in fields(cls)}
        for key, raw in mapping.items():
            key = key.strip().replace("-", "_")
            if key not in valid:
                raise ConfigError(f"unknown config key {key!r}")
            kwargs[key] = _coerce(key, raw.strip(), cls)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        mapping = {}
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            mapping[key] = value
        return cls.from_mapping(mapping)

    @classmethod
    def resolve(cls, path: str | None = None) -> "EngineConfig":
        """Load from an explicit path, else LITHOID_CONFIG, else defaults."""
        path = os.environ.get(ENV_CONFIG) or path
        return cls.from_file(path) if path else cls()


def _coerce(key: str, raw: str, cls) -> object:
    default = getattr(cls, key, None)
    if key == "connectors":
        return tuple(t for t in raw.replace(",", " ").split() if t)
    if key == "stopwords":
        return frozenset(t for t in raw.replace(",", " ").split() if t)
    if isinstance(default, bool):
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
    if isinstance(default, int):
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"{key}: expected an integer, got {raw!r}") from exc
    if isinstance(default, float):
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"{key}: expected a number, got {raw!r}") from exc
    return raw
