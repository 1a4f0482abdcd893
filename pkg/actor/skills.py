"""
Skill libraries: subgoal-level exemplar sub-trajectories for the actor.

Library fixture (actor/skills/<domain>.json):

    {
      "instructions": "...",
      "example_format": "...",
      "skills": [{"name": "...", "pattern": "<regex>", "exemplar": "..."}],
      "fallback": {"name": "...", "exemplar": "..."}
    }

Patterns are matched case-insensitively against the subgoal description.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from model import ConfigError, Subgoal
from sources import load_document, package_path


@dataclass(frozen=True)
class Skill:
    name: str
    pattern: re.Pattern
    exemplar: str


@dataclass(frozen=True)
class SkillLibrary:
    domain_name: str
    instructions: str
    example_format: str
    skills: tuple
    fallback: Skill


def _skill(raw, where):
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: skill entries must be mappings")
    for key in ("name", "exemplar"):
        if not isinstance(raw.get(key), str) or not raw[key].strip():
            raise ConfigError(f"{where}: skill needs a non-empty '{key}'")
    try:
        pattern = re.compile(raw.get("pattern") or r"(?!)", re.IGNORECASE)
    except re.error as e:
        raise ConfigError(f"{where}: bad pattern for skill '{raw['name']}': {e}") from e
    return Skill(raw["name"], pattern, raw["exemplar"].strip())


def parse_library(data, domain_name="") -> SkillLibrary:
    """
    Raises:
        ConfigError when the document is not a valid skill library.
    """
    if not isinstance(data, dict):
        raise ConfigError("Skill library must be a mapping")
    where = f"skills '{domain_name}'"
    skills = tuple(_skill(raw, where) for raw in data.get("skills") or [])
    if not isinstance(data.get("fallback"), dict):
        raise ConfigError(f"{where}: a 'fallback' skill is required")
    return SkillLibrary(
        domain_name=domain_name,
        instructions=(data.get("instructions") or "").strip(),
        example_format=(data.get("example_format") or "").strip(),
        skills=skills,
        fallback=_skill(data["fallback"], where),
    )


def select_skills(subgoal: Subgoal, library: SkillLibrary, limit: int = 2) -> list:
    """
    Exemplars of the skills whose pattern matches the subgoal, longest match
    first (library order breaks ties), truncated to limit. The fallback
    exemplar is returned when nothing matches.
    """
    if limit < 1:
        raise ValueError(f"limit must be at least 1. Received: {limit}")
    ranked = []
    for order, skill in enumerate(library.skills):
        match = skill.pattern.search(subgoal.description)
        if match:
            ranked.append((-(match.end() - match.start()), order, skill))
    if not ranked:
        return [library.fallback.exemplar]
    ranked.sort(key=lambda item: (item[0], item[1]))
    return [skill.exemplar for _, _, skill in ranked[:limit]]


def load_library(path: str, domain_name: str = "") -> SkillLibrary:
    return parse_library(load_document(path), domain_name)


@lru_cache(maxsize=None)
def get_library(domain: str) -> SkillLibrary:
    """Bundled skill library for a domain name."""
    path = package_path("actor", "skills", f"{domain}.json")
    try:
        return load_library(path, domain)
    except ConfigError as e:
        raise ConfigError(f"No usable skill library for domain '{domain}': {e}") from e
