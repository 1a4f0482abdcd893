"""Environment contract shared by every simulator."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from model import DuetError

INVALID_ACTION = "The action is not valid and therefore takes no effect. Please check valid actions."

LOOK = "look"
CHECK_VALID_ACTIONS = "check valid actions"


class UnknownTask(DuetError, KeyError):
    pass


@dataclass(frozen=True)
class Checkpoint:
    label: str
    check: Callable[[], bool]


def normalize_action(text: str) -> str:
    """Lowercase, collapse whitespace and drop a trailing period or surrounding quotes/backticks."""
    value = re.sub(r"\s+", " ", (text or "").strip()).strip("`'\" ")
    return value.rstrip(".").strip().lower()


class Environment:
    """
    Base class for text environments.

    Subclasses implement _render(), _apply(action) and valid_actions().
    _apply returns the observation text, or None when the action is not
    applicable (the ground state must then be unchanged).
    """

    domain_name = ""

    def __init__(self, task_id: str, goal_text: str, seed: Optional[int] = None):
        self.task_id = task_id
        self.goal_text = goal_text
        self.seed = seed
        self.steps_taken = 0
        self.checkpoints = []
        self._reached = []
        self._initial_observation = ""

    def _set_checkpoints(self, checkpoints):
        self.checkpoints = list(checkpoints)
        self._reached = [False] * len(self.checkpoints)
        self._mark_checkpoints()

    @property
    def initial_observation(self) -> str:
        return self._initial_observation

    def step(self, action: str) -> str:
        self.steps_taken += 1
        normalized = normalize_action(action)
        if normalized == CHECK_VALID_ACTIONS:
            return "Valid actions: " + ", ".join(self.valid_actions())
        if normalized in (LOOK, "l"):
            return self._render()

        observation = self._apply(normalized)
        if observation is None:
            return INVALID_ACTION
        self._mark_checkpoints()
        return observation

    def is_success(self) -> bool:
        raise NotImplementedError

    def valid_actions(self) -> list:
        raise NotImplementedError

    def _render(self) -> str:
        raise NotImplementedError

    def _apply(self, action: str) -> Optional[str]:
        raise NotImplementedError

    def _mark_checkpoints(self):
        for idx, checkpoint in enumerate(self.checkpoints):
            if not self._reached[idx] and checkpoint.check():
                self._reached[idx] = True

    def checkpoints_reached(self) -> list:
        return [cp.label for cp, hit in zip(self.checkpoints, self._reached) if hit]

    def progress_rate(self) -> float:
        if not self.checkpoints:
            return 1.0 if self.is_success() else 0.0
        return sum(self._reached) / len(self.checkpoints)


def progress_rate(env: Environment) -> float:
    """Fraction of checkpoints that have held at any point so far."""
    return env.progress_rate()
