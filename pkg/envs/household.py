"""
Household room: receptacles holding objects, a one-object hand.

Fixture fields:
    goal_text: e.g. "put two soapbar in garbagecan."
    receptacles: name -> {openable: bool, open: bool}
    contents: receptacle -> [object, ...]
    goal: {type, receptacle, count}
    checkpoints: [{label, kind: visited|opened|holding_type|count_in, target, count}]
"""

from __future__ import annotations

import re
from typing import Optional

from model import ConfigError

from .base import Checkpoint, Environment

_ENTITY = r"([a-z]+ \d+)"

_ACTIONS = [
    ("goto", re.compile(rf"^go to (?:the )?{_ENTITY}$")),
    ("open", re.compile(rf"^open (?:the )?{_ENTITY}$")),
    ("close", re.compile(rf"^close (?:the )?{_ENTITY}$")),
    ("take", re.compile(rf"^(?:take|pick up) (?:the )?{_ENTITY} from (?:the )?{_ENTITY}$")),
    ("put", re.compile(rf"^(?:put|move|place) (?:the )?{_ENTITY} (?:in/on|in|on|into|onto|to) (?:the )?{_ENTITY}$")),
    ("examine", re.compile(rf"^examine (?:the )?{_ENTITY}$")),
]


def object_type(name: str) -> str:
    return name.rsplit(" ", 1)[0]


def list_objects(names) -> str:
    """Object enumeration: "a x 1", "a x 1, and a y 2", "a x 1, a y 2, and a z 3"."""
    items = [f"a {name}" for name in names]
    if not items:
        return "nothing"
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + ", and " + items[-1]


def parse_action(action: str):
    for op, pattern in _ACTIONS:
        match = pattern.match(action)
        if match:
            return op, match.groups()
    return None


class Household(Environment):
    domain_name = "household"

    def __init__(self, task_id, document: dict, seed=None):
        try:
            receptacles = document["receptacles"]
            goal = document["goal"]
            goal_text = document["goal_text"]
        except KeyError as e:
            raise ConfigError(f"Household fixture '{task_id}' is missing field {e}") from e

        self.receptacles = {name: dict(spec or {}) for name, spec in receptacles.items()}
        self.contents = {name: list(document.get("contents", {}).get(name, [])) for name in self.receptacles}
        self.opened = {name for name, spec in self.receptacles.items() if spec.get("open")}
        self.location: Optional[str] = None
        self.hand: Optional[str] = None
        self.visited = set()
        self.held_types = set()
        self.goal = {"type": goal["type"], "receptacle": goal["receptacle"], "count": int(goal.get("count", 1))}
        self._validate(task_id, document.get("contents", {}))

        super().__init__(task_id, goal_text, document.get("seed", seed))
        self._set_checkpoints(self._checkpoint(raw) for raw in document.get("checkpoints", []))
        self._initial_observation = (
            "You are in the middle of a room. Looking quickly around you, you see "
            + list_objects(sorted(self.receptacles, key=_sort_key)) + ".\n\nYour task is to: " + goal_text
        )

    def _validate(self, task_id, contents):
        for receptacle in contents:
            if receptacle not in self.receptacles:
                raise ConfigError(f"Household fixture '{task_id}' lists contents for unknown receptacle '{receptacle}'")
        if self.goal["receptacle"] not in self.receptacles:
            raise ConfigError(f"Household fixture '{task_id}' goal names unknown receptacle '{self.goal['receptacle']}'")

    def _checkpoint(self, raw):
        kind, target = raw.get("kind"), raw.get("target")
        label = raw.get("label") or f"{kind} {target}"
        if kind == "visited":
            return Checkpoint(label, lambda: target in self.visited)
        if kind == "opened":
            return Checkpoint(label, lambda: target in self.opened)
        if kind == "holding_type":
            return Checkpoint(label, lambda: target in self.held_types)
        if kind == "count_in":
            count = int(raw.get("count", 1))
            return Checkpoint(label, lambda: self.count_in(self.goal["type"], target) >= count)
        raise ConfigError(f"Unknown checkpoint kind: {kind}")

    def count_in(self, kind, receptacle) -> int:
        return sum(1 for obj in self.contents.get(receptacle, []) if object_type(obj) == kind)

    def is_success(self) -> bool:
        return self.count_in(self.goal["type"], self.goal["receptacle"]) >= self.goal["count"]

    def _is_accessible(self, receptacle):
        return not self.receptacles[receptacle].get("openable") or receptacle in self.opened

    def valid_actions(self) -> list:
        actions = [f"go to {name}" for name in sorted(self.receptacles, key=_sort_key) if name != self.location]
        here = self.location
        if here:
            spec = self.receptacles[here]
            if spec.get("openable"):
                actions.append(f"close {here}" if here in self.opened else f"open {here}")
            if self._is_accessible(here):
                if self.hand is None:
                    actions.extend(f"take {obj} from {here}" for obj in self.contents[here])
                else:
                    actions.append(f"put {self.hand} in/on {here}")
            actions.append(f"examine {here}")
        actions.append("inventory")
        return actions

    def _apply(self, action):
        if action in ("inventory", "i"):
            return f"You are carrying: a {self.hand}." if self.hand else "You are not carrying anything."
        parsed = parse_action(action)
        if parsed is None:
            return None
        op, args = parsed
        return getattr(self, f"_{op}")(*args)

    def _describe(self, receptacle):
        if not self._is_accessible(receptacle):
            return f"The {receptacle} is closed."
        if self.receptacles[receptacle].get("openable"):
            return f"The {receptacle} is open. In it, you see {list_objects(self.contents[receptacle])}."
        return f"On the {receptacle}, you see {list_objects(self.contents[receptacle])}."

    def _goto(self, receptacle):
        if receptacle not in self.receptacles:
            return None
        self.location = receptacle
        self.visited.add(receptacle)
        return f"You arrive at {receptacle}. {self._describe(receptacle)}"

    def _open(self, receptacle):
        if receptacle != self.location or not self.receptacles[receptacle].get("openable") or receptacle in self.opened:
            return None
        self.opened.add(receptacle)
        return f"You open the {receptacle}. {self._describe(receptacle)}"

    def _close(self, receptacle):
        if receptacle != self.location or receptacle not in self.opened:
            return None
        self.opened.discard(receptacle)
        return f"You close the {receptacle}."

    def _take(self, obj, receptacle):
        if (receptacle != self.location or self.hand is not None or not self._is_accessible(receptacle)
                or obj not in self.contents[receptacle]):
            return None
        self.contents[receptacle].remove(obj)
        self.hand = obj
        self.held_types.add(object_type(obj))
        return f"You pick up the {obj} from the {receptacle}."

    def _put(self, obj, receptacle):
        if receptacle != self.location or self.hand != obj or not self._is_accessible(receptacle):
            return None
        self.contents[receptacle].append(obj)
        self.hand = None
        return f"You put the {obj} in/on the {receptacle}."

    def _examine(self, target):
        if target == self.hand:
            return f"There's nothing special about {target}."
        if target != self.location:
            return None
        return self._describe(target)

    def _render(self):
        if self.location is None:
            return ("You are in the middle of a room. Looking quickly around you, you see "
                    + list_objects(sorted(self.receptacles, key=_sort_key)) + ".")
        return f"You are facing the {self.location}. {self._describe(self.location)}"


def _sort_key(name):
    base, _, number = name.rpartition(" ")
    return (base, int(number) if number.isdigit() else 0)


def from_fixture(task_id, document, seed=None) -> Household:
    return Household(task_id, document, seed)
