"""Gripper: a robot with a left and right gripper carrying balls between rooms."""

from __future__ import annotations

import random
import re
from typing import Optional

from model import ConfigError, Predicate

from .base import Checkpoint, Environment

GRIPPERS = ("left", "right")

_ACTIONS = [
    ("move", re.compile(r"^move\s*\(\s*(room\d+)\s*,\s*(room\d+)\s*\)$")),
    ("move", re.compile(r"^(?:move|go) from (room\d+) to (room\d+)$")),
    ("move", re.compile(r"^(?:move|go)(?: to)? ()(room\d+)$")),
    ("pick", re.compile(r"^pick\s*\(\s*(ball\d+)\s*,\s*(room\d+)\s*,\s*(left|right)\s*\)$")),
    ("pick", re.compile(r"^pick(?: up)? (ball\d+)(?: (?:in|from) (room\d+))? with (?:the )?(left|right)(?: gripper)?$")),
    ("drop", re.compile(r"^drop\s*\(\s*(ball\d+)\s*,\s*(room\d+)\s*,\s*(left|right)\s*\)$")),
    ("drop", re.compile(r"^drop (ball\d+)(?: in (room\d+))?(?: (?:from|with) (?:the )?(left|right)(?: gripper)?)?$")),
]


def _index(name):
    digits = re.sub(r"\D", "", name)
    return int(digits) if digits else 0


def parse_action(action: str):
    for op, pattern in _ACTIONS:
        match = pattern.match(action)
        if match:
            return op, tuple(arg or None for arg in match.groups())
    return None


class Gripper(Environment):
    domain_name = "gripper"

    def __init__(self, task_id, rooms: list, robot: str, balls: dict, goal: dict,
                 grippers: Optional[dict] = None, goal_text: Optional[str] = None, seed=None):
        """
        Args:
            rooms: room ids
            robot: room the robot starts in
            balls: ball -> room (balls already carried are given in grippers)
            goal: ball -> room to deliver it to
            grippers: gripper -> ball carried
        """
        self.rooms = sorted(rooms, key=_index)
        self.robot = robot
        self.grippers = {g: None for g in GRIPPERS}
        self.grippers.update(grippers or {})
        self.balls = dict(balls)
        for ball in self.grippers.values():
            if ball:
                self.balls[ball] = None
        self.goal = dict(goal)
        self._validate()

        if goal_text is None:
            goal_text = "Deliver the balls so that " + ", ".join(
                f"{ball} is in {room}" for ball, room in sorted(self.goal.items(), key=lambda i: _index(i[0]))
            ) + "."
        super().__init__(task_id, goal_text, seed)
        self._set_checkpoints(self._goal_checkpoints())
        self._initial_observation = self._render()

    def _goal_checkpoints(self):
        """Each delivery, preceded by picking the ball up when it starts outside its goal room."""
        for ball, room in sorted(self.goal.items(), key=lambda i: _index(i[0])):
            if self.balls.get(ball) != room:
                yield Checkpoint(f"{ball} has been picked up", self._picked(ball))
            yield Checkpoint(f"{ball} is in {room}", self._delivered(ball, room))

    def _picked(self, ball):
        return lambda: self.carried_by(ball) is not None

    def _validate(self):
        if self.robot not in self.rooms:
            raise ConfigError(f"Robot starts in unknown room '{self.robot}'")
        for gripper in self.grippers:
            if gripper not in GRIPPERS:
                raise ConfigError(f"Unknown gripper '{gripper}'")
        for ball, room in list(self.balls.items()) + list(self.goal.items()):
            if room is not None and room not in self.rooms:
                raise ConfigError(f"Ball '{ball}' refers to unknown room '{room}'")
        for ball in self.goal:
            if ball not in self.balls:
                raise ConfigError(f"Goal mentions unknown ball '{ball}'")

    def _delivered(self, ball, room):
        return lambda: self.balls.get(ball) == room

    def carried_by(self, ball):
        for gripper, carried in self.grippers.items():
            if carried == ball:
                return gripper
        return None

    def is_success(self) -> bool:
        return all(self.balls.get(ball) == room for ball, room in self.goal.items())

    def state_key(self):
        return (self.robot, tuple(sorted(self.balls.items(), key=lambda i: i[0])),
                tuple(self.grippers[g] for g in GRIPPERS))

    def ground_predicates(self) -> set:
        preds = set()
        for ball, room in self.balls.items():
            if room is not None:
                preds.add(Predicate("at", (ball, room)))
        for gripper in GRIPPERS:
            ball = self.grippers[gripper]
            preds.add(Predicate("carry", (ball, gripper)) if ball else Predicate("free", (gripper,)))
        return preds

    def valid_actions(self) -> list:
        actions = [f"move({self.robot},{room})" for room in self.rooms if room != self.robot]
        for ball in sorted(self.balls, key=_index):
            if self.balls[ball] == self.robot:
                actions.extend(f"pick({ball},{self.robot},{g})" for g in GRIPPERS if self.grippers[g] is None)
        for gripper in GRIPPERS:
            if self.grippers[gripper]:
                actions.append(f"drop({self.grippers[gripper]},{self.robot},{gripper})")
        return actions

    def _apply(self, action):
        parsed = parse_action(action)
        if parsed is None:
            return None
        op, args = parsed

        if op == "move":
            source, target = args
            source = source or self.robot
            if source != self.robot or target == source or target not in self.rooms:
                return None
            self.robot = target
            return f"You moved from {source} to {target}. " + self._render()

        if op == "pick":
            ball, room, gripper = args
            room = room or self.robot
            if room != self.robot or self.balls.get(ball) != room or self.grippers[gripper] is not None:
                return None
            self.balls[ball] = None
            self.grippers[gripper] = ball
            return f"You picked up {ball} with the {gripper} gripper. " + self._render()

        ball, room, gripper = args
        room = room or self.robot
        gripper = gripper or self.carried_by(ball)
        if gripper is None or room != self.robot or self.grippers.get(gripper) != ball:
            return None
        self.grippers[gripper] = None
        self.balls[ball] = room
        return f"You dropped {ball} in {room} from the {gripper} gripper. " + self._render()

    def _render(self):
        parts = [f"You are in {self.robot}."]
        for ball in sorted(self.balls, key=_index):
            room = self.balls[ball]
            if room is not None:
                parts.append(f"{ball.capitalize()} is in {room}.")
        for gripper in GRIPPERS:
            ball = self.grippers[gripper]
            parts.append(f"Gripper {gripper} is carrying {ball}." if ball else f"Gripper {gripper} is free.")
        return " ".join(parts)


def generate(balls: int, rooms: int = 2, seed: int = 0, task_id: Optional[str] = None) -> Gripper:
    """Seeded random instance: balls scattered over rooms, each with a goal room, at least one misplaced."""
    if balls < 1 or rooms < 2:
        raise ConfigError(f"gripper.generate needs >= 1 ball and >= 2 rooms. Received: {balls}, {rooms}")
    rng = random.Random(seed)
    room_ids = [f"room{i}" for i in range(1, rooms + 1)]
    names = [f"ball{i}" for i in range(1, balls + 1)]
    start = {ball: rng.choice(room_ids) for ball in names}
    while True:
        goal = {ball: rng.choice(room_ids) for ball in names}
        if any(goal[ball] != start[ball] for ball in names):
            break
    return Gripper(task_id or f"gripper-{balls}-{seed}", room_ids, rng.choice(room_ids), start, goal, seed=seed)


def from_fixture(task_id, document, seed=None) -> Gripper:
    """Fixture fields: rooms, robot, balls (ball -> room), goal (ball -> room), optional grippers and goal_text."""
    try:
        return Gripper(task_id, document["rooms"], document["robot"], document.get("balls", {}),
                       document["goal"], grippers=document.get("grippers"),
                       goal_text=document.get("goal_text"), seed=document.get("seed", seed))
    except KeyError as e:
        raise ConfigError(f"Gripper fixture '{task_id}' is missing field {e}") from e
