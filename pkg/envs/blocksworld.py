"""BlocksWorld: one arm, blocks named b<digits>, stacked on each other or on the table."""

from __future__ import annotations

import random
import re
from typing import Optional

from model import ConfigError, Predicate

from .base import Checkpoint, Environment

TABLE = "table"

_ACTIONS = [
    ("pickup", re.compile(r"^(?:pickup|pick-up|pick up)\s*\(?\s*(?:block\s+|the\s+)?(b\d+)\s*\)?(?:\s+from\s+the\s+table)?$")),
    ("putdown", re.compile(r"^(?:putdown|put-down|put down)\s*\(?\s*(?:block\s+|the\s+)?(b\d+)\s*\)?(?:\s+on\s+the\s+table)?$")),
    ("stack", re.compile(r"^stack\s*\(?\s*(b\d+)\s*(?:,|\s+on(?:to)?(?:\s+top\s+of)?)\s*(b\d+)\s*\)?$")),
    ("unstack", re.compile(r"^unstack\s*\(?\s*(b\d+)\s*(?:,|\s+from(?:\s+on\s+top\s+of)?)\s*(b\d+)\s*\)?$")),
]


def block_key(name):
    return int(name[1:]) if name[1:].isdigit() else 0


def parse_action(action: str):
    """Returns (operator, args) for a normalized action, or None."""
    for op, pattern in _ACTIONS:
        match = pattern.match(action)
        if match:
            return op, match.groups()
    return None


class BlocksWorld(Environment):
    domain_name = "blocksworld"

    def __init__(self, task_id, support: dict, goal: list, held: Optional[str] = None,
                 goal_text: Optional[str] = None, seed=None):
        """
        Args:
            support: block -> block it rests on, or "table"
            goal: list of (block, support) facts to reach
            held: block in the arm, if any
        """
        self.support = dict(support)
        self.held = held
        self.goal = [tuple(fact) for fact in goal]
        self.blocks = sorted(set(self.support) | ({held} if held else set()), key=block_key)
        self._validate()

        if goal_text is None:
            goal_text = "Arrange the blocks so that " + ", ".join(_describe(top, base) for top, base in self.goal) + "."
        super().__init__(task_id, goal_text, seed)
        self._set_checkpoints(self._goal_checkpoints())
        self._initial_observation = self._render()

    def _goal_checkpoints(self):
        """Each goal fact, preceded by picking up its block when the fact does not hold yet."""
        for top, base in self.goal:
            if self.held == top or self.support.get(top) != base:
                yield Checkpoint(f"{top} has been picked up", self._picked(top))
            yield Checkpoint(_describe(top, base), self._fact_check(top, base))

    def _picked(self, block):
        return lambda: self.held == block

    def _validate(self):
        for block, base in self.support.items():
            if base != TABLE and base not in self.support:
                raise ConfigError(f"Block '{block}' rests on unknown block '{base}'")
            seen = {block}
            while base != TABLE:
                if base in seen:
                    raise ConfigError(f"Support relation has a cycle through '{block}'")
                seen.add(base)
                base = self.support[base]
        if self.held and self.held in self.support:
            raise ConfigError(f"Held block '{self.held}' can't also rest on something")
        for top, base in self.goal:
            if top not in self.blocks or (base != TABLE and base not in self.blocks):
                raise ConfigError(f"Goal mentions unknown block: {top}, {base}")

    def _fact_check(self, top, base):
        return lambda: self.held != top and self.support.get(top) == base

    def is_clear(self, block) -> bool:
        if block == self.held:
            return True
        return block not in self.support.values()

    def is_success(self) -> bool:
        return all(self.held != top and self.support.get(top) == base for top, base in self.goal)

    def state_key(self):
        return (tuple(sorted(self.support.items())), self.held)

    def ground_predicates(self) -> set:
        preds = set()
        for block in self.blocks:
            if block != self.held:
                base = self.support[block]
                preds.add(Predicate("on_table", (block,)) if base == TABLE else Predicate("on", (block, base)))
            preds.add(Predicate("clear" if self.is_clear(block) else "not_clear", (block,)))
        preds.add(Predicate("arm_not_empty" if self.held else "arm_empty"))
        return preds

    def valid_actions(self) -> list:
        actions = []
        if self.held:
            actions.append(f"putdown({self.held})")
            for block in self.blocks:
                if block != self.held and self.is_clear(block):
                    actions.append(f"stack({self.held},{block})")
            return actions
        for block in self.blocks:
            if not self.is_clear(block):
                continue
            base = self.support[block]
            actions.append(f"pickup({block})" if base == TABLE else f"unstack({block},{base})")
        return actions

    def _apply(self, action):
        parsed = parse_action(action)
        if parsed is None:
            return None
        op, args = parsed
        if any(arg not in self.blocks for arg in args):
            return None

        if op == "pickup":
            (block,) = args
            if self.held or self.support.get(block) != TABLE or not self.is_clear(block):
                return None
            del self.support[block]
            self.held = block
        elif op == "unstack":
            block, base = args
            if self.held or self.support.get(block) != base or not self.is_clear(block):
                return None
            del self.support[block]
            self.held = block
        elif op == "putdown":
            (block,) = args
            if self.held != block:
                return None
            self.support[block] = TABLE
            self.held = None
        elif op == "stack":
            block, base = args
            if self.held != block or block == base or not self.is_clear(base):
                return None
            self.support[block] = base
            self.held = None
        return self._render()

    def _render(self):
        positions = []
        clearness = []
        for block in self.blocks:
            if block == self.held:
                continue
            positions.append(_describe(block, self.support[block]) + ".")
            clearness.append(f"{block} is clear." if self.is_clear(block) else f"{block} is not clear.")
        arm = f"You are holding {self.held}." if self.held else "Robot arm is empty."
        return " ".join(positions + clearness + [arm])


def _describe(top, base):
    return f"{top} is on the table" if base == TABLE else f"{top} is on {base}"


def random_support(blocks, rng) -> dict:
    """Random towers: each block goes on the table or on top of an existing tower."""
    order = list(blocks)
    rng.shuffle(order)
    tops = []
    support = {}
    for block in order:
        if tops and rng.random() < 0.6:
            idx = rng.randrange(len(tops))
            support[block] = tops[idx]
            tops[idx] = block
        else:
            support[block] = TABLE
            tops.append(block)
    return support


def generate(blocks: int, seed: int, task_id: Optional[str] = None) -> BlocksWorld:
    """Seeded random instance whose goal is not satisfied initially."""
    if blocks < 2:
        raise ConfigError(f"blocksworld.generate needs at least 2 blocks. Received: {blocks}")
    rng = random.Random(seed)
    names = [f"b{i}" for i in range(1, blocks + 1)]
    initial = random_support(names, rng)
    while True:
        target = random_support(names, rng)
        goal = sorted(((top, base) for top, base in target.items() if base != TABLE), key=lambda f: block_key(f[0]))
        if goal and any(initial.get(top) != base for top, base in goal):
            break
    return BlocksWorld(task_id or f"blocksworld-{blocks}-{seed}", initial, goal, seed=seed)


def from_fixture(task_id, document, seed=None) -> BlocksWorld:
    """
    Fixture fields: towers (list of bottom-to-top block lists), goal (list of
    [block, support] pairs), optional held and goal_text.
    """
    support = {}
    for tower in document.get("towers", []):
        for idx, block in enumerate(tower):
            support[block] = TABLE if idx == 0 else tower[idx - 1]
    goal = [tuple(fact) for fact in document.get("goal", [])]
    if not goal:
        raise ConfigError(f"Blocksworld fixture '{task_id}' has no goal")
    return BlocksWorld(task_id, support, goal, held=document.get("held"),
                       goal_text=document.get("goal_text"), seed=document.get("seed", seed))
