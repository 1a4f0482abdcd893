"""
Ruleset fixtures: observation patterns, their effects, and the conflict policy.

A ruleset file is JSON:

    {
      "format_version": 1,
      "domain_name": "blocksworld",
      "layout": "state" | "objects" | "receptacles",
      "entity_case": "lower" | "preserve",
      "strip_articles": false,
      "list_separator": ",\\s*(?:and\\s+)?|\\s+and\\s+",
      "manipulators": {"arm": null},
      "manipulator_predicates": {"empty": "arm_empty", "busy": "arm_not_empty"},
      "patterns": [{"match": "...", "flags": "i", "captures": [...],
                    "mentions": [...], "effects": [{"op": ..., ...}]}],
      "slots": [{"name": ..., "predicates": [...], "rules": [{"when": ..., ...}]}],
      "conflict_policy": {"rebuild": "mentioned" | "decided"}
    }
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from model import ConfigError
from model.memory import LAYOUT_OBJECTS, LAYOUT_RECEPTACLES, LAYOUT_STATE

FORMAT_VERSION = 1

EFFECT_OPS = {
    "assert": ("predicate",),
    "hold": ("manipulator", "object"),
    "release": ("manipulator",),
    "locate": ("location",),
    "discover": ("object", "location"),
    "contents": ("location", "items"),
    "pocket": ("object",),
    "unpocket": ("object",),
    "inventory": ("items",),
}

SLOT_CONDITIONS = ("held", "observed", "argument_of", "always")

DEFAULT_SEPARATOR = r",\s*(?:and\s+)?|\s+and\s+"


@dataclass(frozen=True)
class Pattern:
    regex: re.Pattern
    captures: tuple
    mentions: tuple
    effects: tuple


@dataclass(frozen=True)
class SlotRule:
    when: str
    predicate: Optional[str] = None
    then: Optional[str] = None
    position: int = 0


@dataclass(frozen=True)
class Slot:
    name: str
    predicates: tuple
    rules: tuple


@dataclass(frozen=True)
class DomainRuleset:
    domain_name: str
    patterns: tuple
    slots: tuple = ()
    manipulators: tuple = ()
    empty_template: Optional[str] = None
    busy_template: Optional[str] = None
    rebuild: str = "mentioned"
    layout: str = LAYOUT_STATE
    entity_case: str = "lower"
    strip_articles: bool = False
    list_separator: re.Pattern = re.compile(DEFAULT_SEPARATOR)

    def slot_predicates(self) -> set:
        return {name for slot in self.slots for name in slot.predicates}

    def manipulator_predicate_names(self) -> set:
        names = set()
        for template in (self.empty_template, self.busy_template):
            if template:
                names.add(template.split("(", 1)[0].strip().lower())
        return names


def _flags(text):
    flags = 0
    for char in (text or ""):
        if char == "i":
            flags |= re.IGNORECASE
        elif char == "m":
            flags |= re.MULTILINE
        elif char == "s":
            flags |= re.DOTALL
        else:
            raise ConfigError(f"Unknown regex flag: '{char}'")
    return flags


def _parse_pattern(raw, index):
    if not isinstance(raw, dict) or "match" not in raw:
        raise ConfigError(f"Pattern #{index} must be an object with a 'match' field")
    try:
        regex = re.compile(raw["match"], _flags(raw.get("flags")))
    except re.error as e:
        raise ConfigError(f"Pattern #{index} has an invalid regex: {e}") from e

    captures = tuple(raw.get("captures", []))
    if len(captures) != regex.groups:
        raise ConfigError(
            f"Pattern #{index} names {len(captures)} capture(s) but its regex has {regex.groups} group(s)"
        )

    mentions = tuple(raw.get("mentions", []))
    for name in mentions:
        if name not in captures:
            raise ConfigError(f"Pattern #{index} mentions unknown capture '{name}'")

    effects = []
    for effect in raw.get("effects", []):
        op = effect.get("op")
        if op not in EFFECT_OPS:
            raise ConfigError(f"Pattern #{index} uses unknown effect op '{op}'")
        missing = [key for key in EFFECT_OPS[op] if key not in effect]
        if missing:
            raise ConfigError(f"Pattern #{index} effect '{op}' is missing {missing}")
        effects.append(dict(effect))

    return Pattern(regex, captures, mentions, tuple(effects))


def _parse_slot(raw):
    rules = []
    for rule in raw.get("rules", []):
        when = rule.get("when")
        if when not in SLOT_CONDITIONS:
            raise ConfigError(f"Slot '{raw.get('name')}' has unknown rule condition '{when}'")
        if when in ("observed", "argument_of") and not rule.get("predicate"):
            raise ConfigError(f"Slot '{raw.get('name')}' rule '{when}' needs a 'predicate'")
        rules.append(SlotRule(when, rule.get("predicate"), rule.get("then"), int(rule.get("position", 0))))
    return Slot(raw.get("name", ""), tuple(raw.get("predicates", [])), tuple(rules))


def parse_ruleset(data) -> DomainRuleset:
    """
    Build a DomainRuleset from a parsed fixture document.

    Raises:
        ConfigError on an unsupported format_version or malformed entries.
    """
    if not isinstance(data, dict):
        raise ConfigError("Ruleset document must be an object")
    if data.get("format_version") != FORMAT_VERSION:
        raise ConfigError(f"Unsupported ruleset format_version: {data.get('format_version')}")
    if not data.get("domain_name"):
        raise ConfigError("Ruleset must have a 'domain_name' field.")

    layout = data.get("layout", LAYOUT_STATE)
    if layout not in (LAYOUT_STATE, LAYOUT_OBJECTS, LAYOUT_RECEPTACLES):
        raise ConfigError(f"Unknown ruleset layout: {layout}")

    rebuild = data.get("conflict_policy", {}).get("rebuild", "mentioned")
    if rebuild not in ("mentioned", "decided"):
        raise ConfigError(f"Unknown conflict policy rebuild mode: {rebuild}")

    templates = data.get("manipulator_predicates", {}) or {}
    return DomainRuleset(
        domain_name=data["domain_name"],
        patterns=tuple(_parse_pattern(raw, idx) for idx, raw in enumerate(data.get("patterns", []), 1)),
        slots=tuple(_parse_slot(raw) for raw in data.get("slots", [])),
        manipulators=tuple(sorted((data.get("manipulators") or {}).keys())),
        empty_template=templates.get("empty"),
        busy_template=templates.get("busy"),
        rebuild=rebuild,
        layout=layout,
        entity_case=data.get("entity_case", "lower"),
        strip_articles=bool(data.get("strip_articles", False)),
        list_separator=re.compile(data.get("list_separator", DEFAULT_SEPARATOR)),
    )
