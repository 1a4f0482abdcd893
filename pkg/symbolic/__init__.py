"""
symbolic package: observation-driven symbolic memory.

Public API:
- DomainRuleset, parse_ruleset, load_ruleset
- init_memory, update_memory
- blocksworld_ruleset(), gripper_ruleset(), household_ruleset(), adventure_ruleset()
- get(domain) -> bundled ruleset for a domain name
"""

from functools import lru_cache

from model import ConfigError
from sources import load_document, package_path

from .engine import init_memory, normalize_entity, update_memory
from .ruleset import DomainRuleset, parse_ruleset

__all__ = [
    "DomainRuleset",
    "adventure_ruleset",
    "blocksworld_ruleset",
    "get",
    "gripper_ruleset",
    "household_ruleset",
    "init_memory",
    "load_ruleset",
    "normalize_entity",
    "parse_ruleset",
    "update_memory",
]


def load_ruleset(path: str) -> DomainRuleset:
    """Load a ruleset fixture from a local path or URL."""
    return parse_ruleset(load_document(path))


@lru_cache(maxsize=None)
def _bundled(name: str) -> DomainRuleset:
    return load_ruleset(package_path("symbolic", "rules", f"{name}.json"))


def blocksworld_ruleset() -> DomainRuleset:
    return _bundled("blocksworld")


def gripper_ruleset() -> DomainRuleset:
    return _bundled("gripper")


def household_ruleset() -> DomainRuleset:
    return _bundled("household")


def adventure_ruleset() -> DomainRuleset:
    return _bundled("adventure")


def get(domain: str) -> DomainRuleset:
    """
    Factory helper for the bundled rulesets.

    domain:
      - 'blocksworld' / 'blocks' -> blocksworld_ruleset()
      - 'gripper' -> gripper_ruleset()
      - 'household' -> household_ruleset()
      - 'adventure' / 'text-adventure' -> adventure_ruleset()

    Raises ConfigError (a ValueError) on unknown domain.
    """

    domain = (domain or "").lower()
    if domain in ("blocksworld", "blocks"):
        return blocksworld_ruleset()
    if domain == "gripper":
        return gripper_ruleset()
    if domain == "household":
        return household_ruleset()
    if domain in ("adventure", "text-adventure"):
        return adventure_ruleset()
    raise ConfigError(f"Unknown ruleset domain: {domain}")
