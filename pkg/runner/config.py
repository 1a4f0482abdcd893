"""Run configuration: built-in defaults < config file < command-line flags."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields, replace
from typing import Optional

from model import ConfigError
from sources import load_document

DEFAULT_TOTAL_STEPS = {
    "blocksworld": 100,
    "gripper": 100,
    "household": 100,
    "adventure": 150,
}
DEFAULT_SUB_STEPS = 35
BACKENDS = ("http", "replay", "oracle")
STATE_BINDINGS = ("summary", "location")


@dataclass(frozen=True)
class RunConfig:
    task_id: str = ""
    backend: str = "oracle"
    backend_params: dict = field(default_factory=dict)
    http: dict = field(default_factory=dict)
    max_total_steps: Optional[int] = None
    max_sub_steps: int = DEFAULT_SUB_STEPS
    history_window: Optional[int] = None
    seed: Optional[int] = None
    output_dir: str = "results"
    manifest: Optional[str] = None
    state_binding: str = "summary"
    skill_limit: int = 2
    fact_cap: Optional[int] = None
    planner_retries: int = 2
    concurrent_verification: bool = True
    temperature: float = 0.0
    max_tokens: int = 1024
    workers: int = 1

    __hash__ = None

    def validate(self) -> "RunConfig":
        """
        Raises:
            ConfigError naming the first invalid field.
        """
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend: expected one of {', '.join(BACKENDS)}. Received: '{self.backend}'")
        for name in ("max_sub_steps", "skill_limit", "max_tokens", "workers"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ConfigError(f"{name}: must be a positive integer. Received: {getattr(self, name)!r}")
        for name in ("max_total_steps", "history_window", "fact_cap"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or value < 1):
                raise ConfigError(f"{name}: must be a positive integer or unset. Received: {value!r}")
        if not isinstance(self.planner_retries, int) or self.planner_retries < 0:
            raise ConfigError(f"planner_retries: must be zero or more. Received: {self.planner_retries!r}")
        if self.state_binding not in STATE_BINDINGS:
            raise ConfigError(f"state_binding: expected one of {', '.join(STATE_BINDINGS)}. "
                              f"Received: '{self.state_binding}'")
        for name in ("backend_params", "http"):
            if not isinstance(getattr(self, name), dict):
                raise ConfigError(f"{name}: must be a mapping")
        return self

    def total_budget(self, domain: str) -> int:
        if self.max_total_steps is not None:
            return self.max_total_steps
        try:
            return DEFAULT_TOTAL_STEPS[domain]
        except KeyError:
            raise ConfigError(f"No default step budget for domain '{domain}'") from None

    def snapshot(self) -> dict:
        """Fields that decide the episode's behavior (output location and workers excluded)."""
        data = asdict(self)
        data.pop("output_dir")
        data.pop("workers")
        return data


def _field_names():
    return {f.name for f in fields(RunConfig)}


def merge(config: RunConfig, values: dict) -> RunConfig:
    """
    Overlay values onto config. None values are skipped, so flags that were
    not given leave the file setting alone.

    Raises:
        ConfigError on unknown keys.
    """
    unknown = sorted(set(values) - _field_names())
    if unknown:
        raise ConfigError(f"Unknown run configuration keys: {', '.join(unknown)}")
    updates = {key: value for key, value in values.items() if value is not None}
    for name in ("backend_params", "http"):
        if name in updates:
            updates[name] = {**getattr(config, name), **updates[name]}
    return replace(config, **updates)


def load_config(path: Optional[str]) -> dict:
    """
    Read a YAML (or JSON) config file into RunConfig values.

    The `run:` block holds RunConfig fields; the `http:` block holds the
    HTTP backend parameters.
    """
    if not path:
        return {}
    data = load_document(path) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file '{path}' must contain a mapping")
    values = dict(data.get("run") or {})
    if data.get("http"):
        values["http"] = data["http"]
    return values


def build_config(path: Optional[str] = None, **overrides) -> RunConfig:
    config = merge(RunConfig(), load_config(path))
    return merge(config, overrides).validate()
