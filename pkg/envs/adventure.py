"""
Text-adventure world loaded from a JSON fixture.

Fixture fields:
    start: room the agent starts in
    goal_text: task description shown to the agent
    rooms: name -> {description, exits: {dir: room}, hidden_exits: {dir: room}}
    objects: name -> {location, aliases, article, description, takeable,
             openable, open, hidden}
    triggers: [{action, room, message, open, reveal_objects, reveal_exits,
               once, repeat_message}]
    success: {"room": name} or {"carrying": name}
    checkpoints: [{label, kind: visited|carrying|opened|revealed|exit, target}]
    blocked_message: text for an unavailable direction
"""

from __future__ import annotations

from typing import Optional

from model import ConfigError

from .base import Checkpoint, Environment

INVENTORY = "inventory"

DIRECTIONS = {
    "n": "north", "s": "south", "e": "east", "w": "west", "u": "up", "d": "down",
    "ne": "northeast", "nw": "northwest", "se": "southeast", "sw": "southwest",
}

_VERBS = {
    "x": "examine", "inspect": "examine", "look at": "examine", "read": "examine",
    "get": "take", "pick up": "take", "grab": "take",
    "shut": "close", "put down": "drop",
    "push": "move", "pull": "move", "lift": "move",
}

DEFAULT_BLOCKED = "You can't go that way."


def _split_verb(action):
    for phrase in sorted(_VERBS, key=len, reverse=True):
        if action == phrase or action.startswith(phrase + " "):
            return _VERBS[phrase], action[len(phrase):].strip()
    verb, _, noun = action.partition(" ")
    return verb, noun.strip()


def _strip_article(noun):
    for article in ("the ", "a ", "an "):
        if noun.startswith(article):
            return noun[len(article):]
    return noun


class Adventure(Environment):
    domain_name = "adventure"

    def __init__(self, task_id, document: dict, seed=None):
        try:
            self.rooms = {name: dict(room) for name, room in document["rooms"].items()}
            self.location = document["start"]
            goal_text = document["goal_text"]
        except KeyError as e:
            raise ConfigError(f"Adventure fixture '{task_id}' is missing field {e}") from e

        self.objects = {name: dict(obj) for name, obj in document.get("objects", {}).items()}
        self.triggers = [dict(trigger) for trigger in document.get("triggers", [])]
        self.success = dict(document.get("success", {}))
        self.blocked_message = document.get("blocked_message", DEFAULT_BLOCKED)

        self.hidden = {name for name, obj in self.objects.items() if obj.get("hidden")}
        self.opened = {name for name, obj in self.objects.items() if obj.get("open")}
        self.revealed_exits = set()
        self.fired = set()
        self.visited = {self.location}
        self._validate(task_id)

        super().__init__(task_id, goal_text, document.get("seed", seed))
        self._set_checkpoints(self._checkpoint(raw) for raw in document.get("checkpoints", []))
        intro = document.get("intro")
        self._initial_observation = f"{intro} {self._render()}" if intro else self._render()

    def _validate(self, task_id):
        if self.location not in self.rooms:
            raise ConfigError(f"Adventure fixture '{task_id}' starts in unknown room '{self.location}'")
        for name, room in self.rooms.items():
            for direction, target in {**room.get("exits", {}), **room.get("hidden_exits", {})}.items():
                if target not in self.rooms:
                    raise ConfigError(f"Exit '{direction}' of '{name}' leads to unknown room '{target}'")
        for name, obj in self.objects.items():
            location = obj.get("location")
            if location not in self.rooms and location not in self.objects and location != INVENTORY:
                raise ConfigError(f"Object '{name}' has unknown location '{location}'")
        if not self.success:
            raise ConfigError(f"Adventure fixture '{task_id}' has no success condition")

    def _checkpoint(self, raw):
        kind, target = raw.get("kind"), raw.get("target")
        label = raw.get("label") or f"{kind} {target}"
        if kind == "visited":
            return Checkpoint(label, lambda: target in self.visited)
        if kind == "carrying":
            return Checkpoint(label, lambda: self.objects[target]["location"] == INVENTORY)
        if kind == "opened":
            return Checkpoint(label, lambda: target in self.opened)
        if kind == "revealed":
            return Checkpoint(label, lambda: target not in self.hidden)
        if kind == "exit":
            room, _, direction = target.partition(":")
            return Checkpoint(label, lambda: (room, direction) in self.revealed_exits)
        raise ConfigError(f"Unknown checkpoint kind: {kind}")

    # -- world queries --

    def exits(self, room=None) -> dict:
        room = room or self.location
        exits = dict(self.rooms[room].get("exits", {}))
        for direction, target in self.rooms[room].get("hidden_exits", {}).items():
            if (room, direction) in self.revealed_exits:
                exits[direction] = target
        return exits

    def inventory(self) -> list:
        return [name for name, obj in self.objects.items() if obj["location"] == INVENTORY]

    def _visible_in(self, holder):
        return [name for name, obj in self.objects.items()
                if obj["location"] == holder and name not in self.hidden]

    def accessible(self) -> list:
        """Objects in the room or inventory, plus the contents of open containers among them."""
        found = self._visible_in(self.location) + self.inventory()
        idx = 0
        while idx < len(found):
            if found[idx] in self.opened:
                found.extend(o for o in self._visible_in(found[idx]) if o not in found)
            idx += 1
        return found

    def resolve(self, noun: str) -> Optional[str]:
        noun = _strip_article(noun)
        for name in self.accessible():
            if noun == name or noun in self.objects[name].get("aliases", []):
                return name
        return None

    def _with_article(self, name):
        return f"{self.objects[name].get('article', 'a')} {name}"

    def is_success(self) -> bool:
        if "room" in self.success:
            return self.location == self.success["room"]
        if "carrying" in self.success:
            return self.objects.get(self.success["carrying"], {}).get("location") == INVENTORY
        return False

    # -- actions --

    def valid_actions(self) -> list:
        actions = [f"go {direction}" for direction in sorted(self.exits())]
        for name in self.accessible():
            obj = self.objects[name]
            actions.append(f"examine {name}")
            if obj.get("openable"):
                actions.append(f"close {name}" if name in self.opened else f"open {name}")
            if obj.get("takeable") and obj["location"] != INVENTORY:
                actions.append(f"take {name}")
            if obj["location"] == INVENTORY:
                actions.append(f"drop {name}")
        for idx, trigger in enumerate(self.triggers):
            if self._trigger_available(idx, trigger) and trigger["action"] not in actions:
                actions.append(trigger["action"])
        actions.append("inventory")
        return actions

    def _trigger_available(self, idx, trigger):
        if trigger.get("room") and trigger["room"] != self.location:
            return False
        if trigger.get("once", True) and idx in self.fired:
            return False
        verb, noun = _split_verb(trigger["action"])
        return not noun or self.resolve(noun) is not None

    def _apply(self, action):
        if action in ("inventory", "i"):
            carried = self.inventory()
            if not carried:
                return "You are empty-handed."
            return "You are carrying: " + ", ".join(self._with_article(o) for o in carried) + "."

        direction = self._direction(action)
        if direction:
            return self._go(direction)

        verb, noun = _split_verb(action)
        target = self.resolve(noun) if noun else None
        if noun and target is None:
            return None

        key = f"{verb} {target}" if target else verb
        for idx, trigger in enumerate(self.triggers):
            verb_t, noun_t = _split_verb(trigger["action"])
            resolved = self.resolve(noun_t) if noun_t else None
            if (f"{verb_t} {resolved}" if resolved else verb_t) != key:
                continue
            if trigger.get("room") and trigger["room"] != self.location:
                continue
            if trigger.get("once", True) and idx in self.fired:
                if trigger.get("repeat_message"):
                    return trigger["repeat_message"]
                continue
            return self._fire(idx, trigger)

        handler = {
            "examine": self._examine,
            "open": self._open,
            "close": self._close,
            "take": self._take,
            "drop": self._drop,
        }.get(verb)
        if handler is None or target is None:
            return None
        return handler(target)

    def _direction(self, action):
        words = action.split()
        if len(words) == 2 and words[0] in ("go", "walk", "run", "climb"):
            words = words[1:]
        if len(words) != 1:
            return None
        word = DIRECTIONS.get(words[0], words[0])
        return word if word in DIRECTIONS.values() else None

    def _go(self, direction):
        exits = self.exits()
        if direction not in exits:
            return self.blocked_message
        self.location = exits[direction]
        self.visited.add(self.location)
        return self._render()

    def _fire(self, idx, trigger):
        self.fired.add(idx)

        parts = []
        if trigger.get("open"):
            opened = self._open(trigger["open"], announce=not trigger.get("message"))
            if opened and not trigger.get("message"):
                parts.append(opened)
        if trigger.get("message"):
            parts.append(trigger["message"])
        for name in trigger.get("reveal_objects", []):
            self.hidden.discard(name)
        for spec in trigger.get("reveal_exits", []):
            self.revealed_exits.add((spec["room"], spec["direction"]))
        return " ".join(parts) if parts else "Done."

    def _examine(self, name):
        obj = self.objects[name]
        parts = [obj.get("description") or f"You see nothing special about the {name}."]
        if obj.get("openable"):
            parts.append(f"The {name} is {'open' if name in self.opened else 'closed'}.")
            if name in self.opened:
                parts.extend(f"The {name} contains {self._with_article(o)}." for o in self._visible_in(name))
        return " ".join(parts)

    def _open(self, name, announce=True):
        obj = self.objects[name]
        if not obj.get("openable"):
            return None
        if name in self.opened:
            return "It is already open."
        self.opened.add(name)
        contents = self._visible_in(name)
        if not contents:
            return f"You open the {name}. It is empty." if announce else ""
        first, rest = contents[0], contents[1:]
        text = f"Opening the {name} reveals {self._with_article(first)}."
        text += "".join(f" It also reveals {self._with_article(o)}." for o in rest)
        return text

    def _close(self, name):
        if not self.objects[name].get("openable") or name not in self.opened:
            return None
        self.opened.discard(name)
        return f"You close the {name}."

    def _take(self, name):
        obj = self.objects[name]
        if obj["location"] == INVENTORY:
            return f"You already have the {name}."
        if not obj.get("takeable"):
            return f"You can't take the {name}."
        obj["location"] = INVENTORY
        return f"You take the {name}."

    def _drop(self, name):
        obj = self.objects[name]
        if obj["location"] != INVENTORY:
            return None
        obj["location"] = self.location
        return f"You drop the {name}."

    def _render(self):
        room = self.rooms[self.location]
        parts = [f"You are in the {self.location}."]
        if room.get("description"):
            parts.append(room["description"])
        for name in self._visible_in(self.location):
            parts.append(f"There is {self._with_article(name)} here.")
            if name in self.opened:
                parts.extend(f"The {name} contains {self._with_article(o)}." for o in self._visible_in(name))
        exits = sorted(self.exits())
        parts.append("Exits: " + ", ".join(exits) + "." if exits else "There are no obvious exits.")
        return " ".join(parts)


def from_fixture(task_id, document, seed=None) -> Adventure:
    return Adventure(task_id, document, seed)
