"""Subgoal-level planner: history + belief -> next EXECUTE_SUBGOAL command."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from llm import assistant, render, system, user
from model import BeliefState, ConfigError, Plan, Subgoal, render_belief
from sources import fetch_content, package_path

from .parse import (
    PlannerParseError,
    declares_complete,
    extract_reasoning,
    parse_execute_subgoal,
    parse_full_plan,
)

PROMPT_FAMILIES = {
    "blocksworld": "puzzle",
    "gripper": "puzzle",
    "household": "household",
    "adventure": "adventure",
}

FEEDBACK_NAME = "analysis_feedback"
DEFAULT_REPROMPTS = 2


@dataclass(frozen=True)
class TaskContext:
    domain: str
    goal: str
    initial_observation: str

    @classmethod
    def from_env(cls, env):
        return cls(env.domain_name, env.goal_text, env.initial_observation)


@dataclass(frozen=True)
class PlannerStep:
    k: int
    belief_snapshot: BeliefState
    reasoning: str
    plan: Optional[Plan]
    subgoal: Optional[Subgoal]
    raw_completion: str
    feedback: Optional[str] = None
    reprompts: int = 0

    @property
    def complete(self) -> bool:
        return self.subgoal is None


def prompt_family(domain: str) -> str:
    try:
        return PROMPT_FAMILIES[domain]
    except KeyError:
        raise ConfigError(f"No planner prompts for domain '{domain}'") from None


@lru_cache(maxsize=None)
def load_exemplars(family: str) -> str:
    return fetch_content(package_path("planner", "exemplars", f"{family}.txt")).strip()


def feedback_message(subgoal: Subgoal, outcome: str, belief: BeliefState) -> str:
    """Content of the analysis_feedback message stored with a planner step."""
    return json.dumps({
        "subgoal": subgoal.description,
        "outcome": outcome,
        "new_belief": render_belief(belief),
    }, sort_keys=True)


def build_messages(history, belief: BeliefState, task: TaskContext, window: Optional[int] = None) -> list:
    family = prompt_family(task.domain)
    messages = [
        system(render(f"planner_system_{family}", task_exemplars=load_exemplars(family))),
        user(render(f"planner_instance_{family}", goal=task.goal, initial_observation=task.initial_observation)),
    ]
    steps = list(history)
    if window is not None and window > 0:
        steps = steps[-window:]
    for step in steps:
        messages.append(assistant(step.raw_completion))
        if step.feedback:
            messages.append(assistant(step.feedback, name=FEEDBACK_NAME))
    messages.append(user(render("planner_belief", belief=render_belief(belief))))
    return messages


def parse_step(text: str, k: int, belief: BeliefState, reprompts: int = 0) -> PlannerStep:
    """
    Raises:
        PlannerParseError when the completion has neither a subgoal block nor TASK COMPLETE.
    """
    plan = parse_full_plan(text, k)
    if declares_complete(text):
        subgoal = None
    else:
        subgoal = parse_execute_subgoal(text, k)
    return PlannerStep(k, belief, extract_reasoning(text), plan, subgoal, text, reprompts=reprompts)


def plan_next(history, belief: BeliefState, task: TaskContext, gateway,
              window: Optional[int] = None, retries: int = DEFAULT_REPROMPTS) -> PlannerStep:
    """
    Ask the planner for its next step.

    Malformed completions are answered with a corrective user message, up to
    `retries` times. The history list itself is never modified.

    Raises:
        PlannerParseError once the re-prompt budget is spent.
    """
    k = len(history) + 1
    messages = build_messages(history, belief, task, window)
    last_error = None
    for attempt in range(retries + 1):
        text = gateway.ask("planner", messages)
        try:
            return parse_step(text, k, belief, attempt)
        except PlannerParseError as e:
            last_error = e
            messages = messages + [assistant(text or ""), user(render("planner_reprompt", error=str(e)))]
    raise last_error
