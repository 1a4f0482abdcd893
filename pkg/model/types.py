"""Values exchanged between planner, actor, belief update and runner."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

COMPONENTS = ("planner", "actor", "verification", "synthesis")


@dataclass(frozen=True)
class Subgoal:
    """Execution command issued by the planner."""
    description: str
    search_locations: Optional[tuple] = None
    issued_at_k: int = 0

    def __post_init__(self):
        text = " ".join((self.description or "").split())
        if not text:
            raise ValueError("Subgoal description must be non-empty")
        object.__setattr__(self, "description", text)
        if self.search_locations is not None:
            object.__setattr__(self, "search_locations", tuple(self.search_locations))


@dataclass(frozen=True)
class Plan:
    subgoals: tuple
    created_at_k: int = 0

    def __post_init__(self):
        if not self.subgoals:
            raise ValueError("Plan must contain at least one subgoal")
        object.__setattr__(self, "subgoals", tuple(self.subgoals))

    def render(self) -> str:
        return "\n".join(f"{idx}. {text}" for idx, text in enumerate(self.subgoals, 1))


@dataclass(frozen=True)
class EpisodeStatus:
    """Terminal status of a sub-episode."""
    kind: str
    reason: str = ""

    COMPLETED = "completed"
    REPLAN = "replan_requested"
    TIMEOUT = "timeout"
    INTERRUPTED = "interrupted"

    @classmethod
    def completed(cls):
        return cls(cls.COMPLETED)

    @classmethod
    def replan(cls, reason):
        return cls(cls.REPLAN, reason.strip())

    @classmethod
    def timeout(cls):
        return cls(cls.TIMEOUT)

    @classmethod
    def interrupted(cls, reason):
        return cls(cls.INTERRUPTED, reason.strip())

    @property
    def label(self) -> str:
        if self.kind == self.COMPLETED:
            return "Completed"
        if self.kind == self.REPLAN:
            return f"Replan requested ({self.reason})" if self.reason else "Replan requested"
        if self.kind == self.INTERRUPTED:
            return f"Interrupted ({self.reason})"
        return "Timeout"


@dataclass(frozen=True)
class SubEpisode:
    subgoal: Subgoal
    steps: tuple
    status: EpisodeStatus
    env_steps_consumed: int = 0

    def trace(self) -> str:
        """Raw action/observation trace, one `> action` line per step."""
        if not self.steps:
            return "(no actions taken)"
        lines = []
        for action, observation in self.steps:
            lines.append(f"> {action}")
            lines.append(observation.strip())
        return "\n".join(lines)


@dataclass(frozen=True)
class VerificationReport:
    entries: tuple
    parse_errors: int = 0

    def summary(self) -> str:
        lines = []
        for question, answer, justification in self.entries:
            lines.append(f"Q: {question}")
            lines.append(f"A: {answer}")
            lines.append(f"Justification: {justification}")
        return "\n".join(lines)


@dataclass(frozen=True)
class TokenLedger:
    """Per-component (prompt_tokens, completion_tokens) counts."""
    counts: tuple = field(default_factory=lambda: tuple((name, 0, 0) for name in COMPONENTS))

    def add(self, component: str, prompt_tokens: int, completion_tokens: int) -> "TokenLedger":
        if component not in COMPONENTS:
            raise ValueError(f"Unknown component tag: {component}")
        if prompt_tokens < 0 or completion_tokens < 0:
            raise ValueError("Token counts must be non-negative")
        return TokenLedger(tuple(
            (name, p + prompt_tokens, c + completion_tokens) if name == component else (name, p, c)
            for name, p, c in self.counts
        ))

    def component(self, name: str) -> tuple:
        for component, prompt, completion in self.counts:
            if component == name:
                return prompt, completion
        raise KeyError(name)

    def total(self, name: Optional[str] = None) -> int:
        if name is not None:
            return sum(self.component(name))
        return sum(p + c for _, p, c in self.counts)

    def to_dict(self) -> dict:
        return {
            name: {"prompt_tokens": p, "completion_tokens": c, "total_tokens": p + c}
            for name, p, c in self.counts
        }

    @classmethod
    def from_totals(cls, totals: dict) -> "TokenLedger":
        ledger = cls()
        for name, count in totals.items():
            ledger = ledger.add(name, 0, count)
        return ledger
