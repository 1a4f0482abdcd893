"""
Applies a DomainRuleset to observation text.

Every pattern is run over the whole observation (in ruleset order) and its
effects are collected first; the new memory is then rebuilt from the
collected facts in a fixed order: holding, slot predicates, manipulator
predicates, then the location/object maps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Optional

from model import INVENTORY, ParseError, Predicate, SymbolicMemory, canonical_predicate
from model.memory import LAYOUT_STATE

from .ruleset import DomainRuleset

AGENT = "@agent"

_ARTICLES = re.compile(r"^(?:a|an|the|some)\s+", re.IGNORECASE)
_PLACEHOLDER = re.compile(r"\{(\w+)\}")
_NOTHING = {"nothing", "none", ""}


@dataclass
class _Observed:
    holds: dict = field(default_factory=dict)
    releases: list = field(default_factory=list)
    asserts: list = field(default_factory=list)
    mentioned: list = field(default_factory=list)
    location: Optional[str] = None
    discoveries: list = field(default_factory=list)
    contents: dict = field(default_factory=dict)
    pocketed: list = field(default_factory=list)
    unpocketed: list = field(default_factory=list)
    inventory: Optional[list] = None

    def mention(self, entity):
        if entity and entity not in self.mentioned:
            self.mentioned.append(entity)


def normalize_entity(text: str, ruleset: DomainRuleset) -> str:
    value = re.sub(r"\s+", " ", text or "").strip().strip(".,;:!")
    if ruleset.strip_articles:
        value = _ARTICLES.sub("", value)
    if ruleset.entity_case == "lower":
        value = value.lower()
    return value


def _fill(template, values):
    return _PLACEHOLDER.sub(lambda m: values.get(m.group(1), m.group(0)), str(template))


def _split_items(text, ruleset):
    items = []
    for part in ruleset.list_separator.split(text or ""):
        item = normalize_entity(part, ruleset)
        if item.lower() not in _NOTHING and item not in items:
            items.append(item)
    return items


def _collect(observation: str, ruleset: DomainRuleset) -> _Observed:
    observed = _Observed()
    if not observation:
        return observed

    for pattern in ruleset.patterns:
        for match in pattern.regex.finditer(observation):
            raw = dict(zip(pattern.captures, match.groups()))
            values = {name: normalize_entity(value, ruleset) for name, value in raw.items() if value is not None}
            for name in pattern.mentions:
                observed.mention(values.get(name))
            for effect in pattern.effects:
                _apply_effect(effect, values, raw, observed, ruleset)
    return observed


def _apply_effect(effect, values, raw, observed, ruleset):
    op = effect["op"]
    if op == "assert":
        try:
            observed.asserts.append(canonical_predicate(_fill(effect["predicate"], values)))
        except ParseError:
            # Captured text that can't form a predicate token contributes nothing.
            pass
    elif op == "hold":
        obj = _fill(effect["object"], values)
        observed.holds[_fill(effect["manipulator"], values)] = obj
        observed.mention(obj)
    elif op == "release":
        observed.releases.append(_fill(effect["manipulator"], values))
    elif op == "locate":
        observed.location = _fill(effect["location"], values)
    elif op == "discover":
        observed.discoveries.append((_fill(effect["object"], values), _fill(effect["location"], values)))
    elif op == "contents":
        location = _fill(effect["location"], values)
        observed.contents[location] = _split_items(_fill(effect["items"], raw), ruleset)
    elif op == "pocket":
        observed.pocketed.append(_fill(effect["object"], values))
    elif op == "unpocket":
        observed.unpocketed.append((_fill(effect["object"], values), _fill(effect.get("location", AGENT), values)))
    elif op == "inventory":
        observed.inventory = _split_items(_fill(effect["items"], raw), ruleset)


def _decide(slot, entity, observed, held):
    """
    Walk one slot's rules for one entity.

    Returns:
        None when no rule applies, else the (possibly empty) list of predicates
        the slot holds for the entity.
    """
    for rule in slot.rules:
        if rule.when == "held":
            if entity in held:
                return [Predicate(rule.then, (entity,))] if rule.then else []
        elif rule.when == "observed":
            matches = [p for p in observed.asserts if p.name == rule.predicate and p.args[:1] == (entity,)]
            if matches:
                return [matches[-1]]
        elif rule.when == "argument_of":
            for pred in observed.asserts:
                if pred.name == rule.predicate and len(pred.args) > rule.position and pred.args[rule.position] == entity:
                    return [Predicate(rule.then, (entity,))] if rule.then else []
        elif rule.when == "always":
            return [Predicate(rule.then, (entity,))] if rule.then else []
    return None


def _manipulator_predicates(holding, ruleset):
    preds = set()
    for manipulator in sorted(holding):
        obj = holding[manipulator]
        template = ruleset.busy_template if obj else ruleset.empty_template
        if not template:
            continue
        preds.add(canonical_predicate(_fill(template, {"m": manipulator, "o": obj or ""})))
    return preds


def _update_holding(prior, observed):
    holding = dict(prior)
    for manipulator in observed.releases:
        holding[manipulator] = None
    for manipulator, obj in observed.holds.items():
        for other, carried in holding.items():
            if carried == obj and other != manipulator:
                holding[other] = None
        holding[manipulator] = obj
    return holding


def _update_predicates(memory, observed, holding, ruleset):
    held = {obj for obj in holding.values() if obj}
    mentioned = list(observed.mentioned) + sorted(held - set(observed.mentioned))

    slot_names = ruleset.slot_predicates()
    manipulator_names = ruleset.manipulator_predicate_names()
    predicates = {p for p in memory.predicates if p.name not in manipulator_names}

    added = set()
    decided = []
    for entity in mentioned:
        for slot in ruleset.slots:
            result = _decide(slot, entity, observed, held)
            if result is not None:
                decided.append((entity, slot))
                added.update(result)

    if ruleset.rebuild == "mentioned":
        touched = set(mentioned)
        predicates = {p for p in predicates if p.name not in slot_names or not touched.intersection(p.args)}
    else:
        for entity, slot in decided:
            predicates = {p for p in predicates if p.name not in slot.predicates or p.args[:1] != (entity,)}

    # Observed facts outside any slot are added as-is.
    added.update(p for p in observed.asserts if p.name not in slot_names and p.name not in manipulator_names)
    predicates |= added
    predicates |= _manipulator_predicates(holding, ruleset)
    return frozenset(predicates)


def _update_objects(memory, observed, holding, ruleset):
    location = observed.location or memory.agent_location
    visited = list(memory.visited)
    if observed.location and observed.location not in visited:
        visited.append(observed.location)

    def where(target):
        return (location or "unknown") if target == AGENT else target

    discovered = dict(memory.discovered)
    inventory = list(memory.inventory)

    for place, items in observed.contents.items():
        for obj in [o for o, loc in discovered.items() if loc == place and o not in items]:
            del discovered[obj]
        for obj in items:
            discovered[obj] = place

    for obj in observed.pocketed:
        if obj not in inventory:
            inventory.append(obj)
    for obj, target in observed.unpocketed:
        if obj in inventory:
            inventory.remove(obj)
        discovered[obj] = where(target)

    held = {obj for obj in holding.values() if obj}
    for obj, target in observed.discoveries:
        if obj not in held and obj not in inventory:
            discovered[obj] = where(target)

    if observed.inventory is not None:
        for obj in inventory:
            if obj not in observed.inventory and discovered.get(obj) == INVENTORY:
                del discovered[obj]
        inventory = list(observed.inventory)

    for obj in held | set(inventory):
        discovered[obj] = INVENTORY
    for obj in memory.held_objects() - held:
        if discovered.get(obj) == INVENTORY and obj not in inventory:
            del discovered[obj]

    return location, tuple(visited), discovered, tuple(inventory)


def init_memory(ruleset: DomainRuleset, initial_observation: str) -> SymbolicMemory:
    """Memory at step 0 built from the first observation."""
    empty = SymbolicMemory(
        domain_name=ruleset.domain_name,
        holding={m: None for m in ruleset.manipulators},
        layout=ruleset.layout,
    )
    return _rebuild(empty, initial_observation or "", ruleset, step=0)


def update_memory(memory: SymbolicMemory, observation: str, last_action: Optional[str] = None,
                  ruleset: Optional[DomainRuleset] = None) -> SymbolicMemory:
    """
    Apply one observation to memory.

    Args:
        memory: prior symbolic memory
        observation: environment text returned after last_action
        last_action: the command that produced the observation; rulesets match
            observation text only, so it is accepted for logging callers
        ruleset: defaults to the bundled ruleset for memory.domain_name

    Returns:
        New SymbolicMemory with step incremented by one.
    """
    if ruleset is None:
        from . import get
        ruleset = get(memory.domain_name)
    return _rebuild(memory, observation or "", ruleset, step=memory.step + 1)


def _rebuild(memory, observation, ruleset, step):
    observed = _collect(observation, ruleset)
    holding = _update_holding(memory.holding, observed)
    predicates = _update_predicates(memory, observed, holding, ruleset)

    changes = dict(predicates=predicates, holding=holding, step=step)
    if ruleset.layout == LAYOUT_STATE:
        changes["agent_location"] = observed.location or memory.agent_location
        if observed.location and observed.location not in memory.visited:
            changes["visited"] = memory.visited + (observed.location,)
    else:
        location, visited, discovered, inventory = _update_objects(memory, observed, holding, ruleset)
        changes.update(agent_location=location, visited=visited, discovered=discovered, inventory=inventory)

    return replace(memory, **changes)
