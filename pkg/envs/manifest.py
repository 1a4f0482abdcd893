"""
Task manifest: explicit fixture tasks plus seeded generate blocks.

    tasks:
      - id: household-picktwo-soapbar
        domain: household
        fixture: household/picktwo_soapbar.json
        replay: household/picktwo_soapbar.replay.yaml
    generate:
      - prefix: blocksworld-rand
        domain: blocksworld
        count: 20
        seed: 7
        blocks: [4, 6]
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Optional

from model import ConfigError
from sources import load_document, package_path, resolve

from . import adventure, blocksworld, gripper, household
from .base import Environment, UnknownTask

DOMAINS = ("blocksworld", "gripper", "household", "adventure")

DEFAULT_MANIFEST = package_path("tasks", "tasks.yaml")
MAX_SEED_ATTEMPTS = 200
RUN_SEED_STRIDE = 1_000_000

_FIXTURE_LOADERS = {
    "blocksworld": blocksworld.from_fixture,
    "gripper": gripper.from_fixture,
    "household": household.from_fixture,
    "adventure": adventure.from_fixture,
}


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    domain: str
    fixture: Optional[str] = None
    replay: Optional[str] = None
    generator: dict = field(default_factory=dict)

    __hash__ = None


def _check_domain(domain, where):
    if domain not in DOMAINS:
        raise ConfigError(f"{where}: unknown domain '{domain}'. Expected one of {', '.join(DOMAINS)}")


def _range(block, key, where):
    value = block.get(key)
    if isinstance(value, int):
        return value, value
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return min(value), max(value)
    raise ConfigError(f"{where}: '{key}' must be an integer or a [lo, hi] pair. Received: {value!r}")


def _generate(domain, params, task_id=None):
    if domain == "blocksworld":
        return blocksworld.generate(params["blocks"], params["seed"], task_id=task_id)
    return gripper.generate(params["balls"], params.get("rooms", 2), params["seed"], task_id=task_id)


def instance_key(env: Environment) -> tuple:
    """Identity of a generated instance: its start state and its goal."""
    return env.state_key(), env.goal_text


def _expand(block, idx):
    """
    Seeded tasks of one generate block. A candidate seed whose instance
    repeats an earlier one in the block is skipped, so every task differs.
    """
    where = f"generate block #{idx}"
    domain = block.get("domain")
    _check_domain(domain, where)
    if domain not in ("blocksworld", "gripper"):
        raise ConfigError(f"{where}: only blocksworld and gripper tasks can be generated")

    count = int(block.get("count", 1))
    base_seed = int(block.get("seed", 0))
    prefix = block.get("prefix") or f"{domain}-gen"
    rng = random.Random(base_seed)
    specs = []
    seen = set()
    candidate = 0
    for n in range(count):
        if domain == "blocksworld":
            lo, hi = _range(block, "blocks", where)
            params = {"blocks": rng.randint(lo, hi)}
        else:
            lo, hi = _range(block, "balls", where)
            params = {"balls": rng.randint(lo, hi), "rooms": int(block.get("rooms", 2))}
        for _ in range(MAX_SEED_ATTEMPTS):
            params["seed"] = base_seed * 1000 + candidate
            candidate += 1
            key = instance_key(_generate(domain, params))
            if key not in seen:
                seen.add(key)
                break
        else:
            raise ConfigError(f"{where}: could not find {count} distinct instances")
        specs.append(TaskSpec(f"{prefix}-{n + 1:02d}", domain, generator=dict(params)))
    return specs


def load_manifest(path: Optional[str] = None) -> list:
    """
    Load a task manifest.

    Returns:
        TaskSpec list in manifest order (explicit tasks first, then generated ones).

    Raises:
        ConfigError on malformed entries or duplicate ids.
    """
    path = path or DEFAULT_MANIFEST
    document = load_document(path) or {}
    if not isinstance(document, dict):
        raise ConfigError(f"Task manifest '{path}' must be a mapping")
    base_dir = os.path.dirname(path) if "://" not in path else None

    specs = []
    for idx, entry in enumerate(document.get("tasks") or [], 1):
        if not isinstance(entry, dict) or not entry.get("id"):
            raise ConfigError(f"Task #{idx} in '{path}' must have an 'id' field.")
        _check_domain(entry.get("domain"), f"task '{entry['id']}'")
        if not entry.get("fixture"):
            raise ConfigError(f"Task '{entry['id']}' must have a 'fixture' field.")
        specs.append(TaskSpec(
            entry["id"],
            entry["domain"],
            fixture=resolve(entry["fixture"], base_dir),
            replay=resolve(entry["replay"], base_dir) if entry.get("replay") else None,
        ))

    for idx, block in enumerate(document.get("generate") or [], 1):
        specs.extend(_expand(block, idx))

    seen = set()
    for spec in specs:
        if spec.task_id in seen:
            raise ConfigError(f"Duplicate task id in manifest: {spec.task_id}")
        seen.add(spec.task_id)
    return specs


def find_task(specs, task_id: str) -> TaskSpec:
    for spec in specs:
        if spec.task_id == task_id:
            return spec
    raise UnknownTask(f"Task '{task_id}' is not in the manifest")


def build(spec: TaskSpec, seed: Optional[int] = None) -> Environment:
    """
    Create a fresh environment for a task.

    A run seed on a generated task is mixed into the task's own seed, so
    tasks of one block stay apart from each other under any run seed.
    """
    if spec.generator:
        params = dict(spec.generator)
        if seed is not None:
            params["seed"] = seed * RUN_SEED_STRIDE + params["seed"]
        return _generate(spec.domain, params, task_id=spec.task_id)
    return _FIXTURE_LOADERS[spec.domain](spec.task_id, load_document(spec.fixture), seed)
