"""EpisodeRecord and its JSON-ready form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from model import BeliefState, SubEpisode, TokenLedger

HARD_CHECKPOINTS = 5


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False)


def subgoal_to_dict(subgoal):
    if subgoal is None:
        return None
    return {
        "description": subgoal.description,
        "search_locations": list(subgoal.search_locations) if subgoal.search_locations else None,
        "issued_at_k": subgoal.issued_at_k,
    }


def planner_step_to_dict(step) -> dict:
    return {
        "k": step.k,
        "reasoning": step.reasoning,
        "plan": list(step.plan.subgoals) if step.plan else None,
        "subgoal": subgoal_to_dict(step.subgoal),
        "complete": step.complete,
        "reprompts": step.reprompts,
        "raw_completion": step.raw_completion,
    }


def sub_episode_to_dict(episode: SubEpisode) -> dict:
    return {
        "subgoal": episode.subgoal.description,
        "status": episode.status.kind,
        "reason": episode.status.reason,
        "env_steps_consumed": episode.env_steps_consumed,
        "steps": [{"action": action, "observation": observation} for action, observation in episode.steps],
    }


def belief_to_dict(belief: BeliefState) -> dict:
    memory, textual = belief.symbolic, belief.textual
    return {
        "k": belief.k,
        "symbolic": {
            "step": memory.step,
            "predicates": memory.predicate_strings(),
            "holding": dict(sorted(memory.holding.items())),
            "agent_location": memory.agent_location,
            "visited": list(memory.visited),
            "discovered": dict(sorted(memory.discovered.items())),
            "inventory": list(memory.inventory),
        },
        "textual": {
            "status_line": textual.status_line,
            "justification": textual.justification,
            "learned_facts": [{"text": fact.text, "k": fact.k} for fact in textual.learned_facts],
            "plan": list(textual.plan.subgoals) if textual.plan else None,
            "last_subgoal": textual.last_subgoal,
            "last_outcome": textual.last_outcome,
        },
    }


@dataclass
class EpisodeRecord:
    task_id: str
    domain: str
    config: dict
    planner_steps: list = field(default_factory=list)
    sub_episodes: list = field(default_factory=list)
    beliefs: list = field(default_factory=list)
    success: bool = False
    progress_rate: float = 0.0
    total_env_steps: int = 0
    ledger: TokenLedger = field(default_factory=TokenLedger)
    duration: float = 0.0
    ended_by: str = ""
    error: Optional[str] = None
    parse_errors: int = 0
    checkpoints: int = 0
    checkpoints_reached: list = field(default_factory=list)
    events: list = field(default_factory=list)

    @property
    def hard(self) -> bool:
        return self.checkpoints > HARD_CHECKPOINTS

    def outcome(self) -> dict:
        return {
            "success": self.success,
            "progress_rate": self.progress_rate,
            "total_env_steps": self.total_env_steps,
            "ended_by": self.ended_by,
            "error": self.error,
        }

    def to_dict(self) -> dict:
        """Serializable record; wall-clock duration is kept out so identical runs compare equal."""
        return {
            "task_id": self.task_id,
            "domain": self.domain,
            "config": self.config,
            "planner_steps": [planner_step_to_dict(step) for step in self.planner_steps],
            "sub_episodes": [sub_episode_to_dict(episode) for episode in self.sub_episodes],
            "beliefs": [belief_to_dict(belief) for belief in self.beliefs],
            "outcome": self.outcome(),
            "tokens": self.ledger.to_dict(),
            "parse_errors": self.parse_errors,
            "checkpoints": self.checkpoints,
            "checkpoints_reached": list(self.checkpoints_reached),
        }

    def trajectory_lines(self) -> list:
        return [dumps(event) for event in self.events]
