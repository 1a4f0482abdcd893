"""Reason-and-act loop that carries out one subgoal against the environment."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from llm import assistant, render, system, user
from model import DuetError, EpisodeStatus, SubEpisode, Subgoal, SymbolicMemory, planning_summary
from symbolic import update_memory

from .skills import SkillLibrary, select_skills

SUBGOAL_COMPLETED = "SUBGOAL COMPLETED"
REPLAN_OPEN = "REQUEST_REPLAN["

DEFAULT_SUB_STEPS = 35
STATE_SUMMARY = "summary"
STATE_LOCATION = "location"

NO_COMMAND = "No command was found in your response. Reply with exactly one command in markdown backticks."

_FENCED = re.compile(r"```(.*?)```", re.DOTALL)
_INLINE = re.compile(r"`([^`\n]+)`")


class EmptyCompletion(DuetError, ValueError):
    pass


@dataclass(frozen=True)
class ActorDecision:
    """A command to send to the environment, or a termination marker."""
    kind: str
    text: str = ""

    COMMAND = "command"
    COMPLETED = "completed"
    REPLAN = "replan"


def _last_line(text):
    lines = [line.strip().strip("`").strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    return lines[-1] if lines else ""


def _replan_reason(text):
    start = text.find(REPLAN_OPEN) + len(REPLAN_OPEN)
    end = text.find("]", start)
    return (text[start:] if end < 0 else text[start:end]).strip()


def extract_command(completion: str) -> ActorDecision:
    """
    Termination markers win over commands. Otherwise the last line of the last
    ``` fenced span, then the last `inline` span, then the last non-empty line.

    Raises:
        EmptyCompletion when nothing usable is left.
    """
    text = completion or ""
    if SUBGOAL_COMPLETED in text:
        return ActorDecision(ActorDecision.COMPLETED)
    if REPLAN_OPEN in text:
        return ActorDecision(ActorDecision.REPLAN, _replan_reason(text))

    command = ""
    fenced = _FENCED.findall(text)
    if fenced:
        command = _last_line(fenced[-1])
    if not command:
        inline = _INLINE.findall(text)
        command = inline[-1].strip() if inline else ""
    if not command:
        command = _last_line(text)
    if not command:
        raise EmptyCompletion("Actor completion contains no command")
    return ActorDecision(ActorDecision.COMMAND, command)


def search_hint(subgoal: Subgoal) -> str:
    if not subgoal.search_locations:
        return ""
    return "Search these locations in order, most likely first: " + ", ".join(subgoal.search_locations)


def current_state(memory: SymbolicMemory, binding: str = STATE_SUMMARY) -> str:
    if binding == STATE_LOCATION:
        return memory.agent_location or "unknown"
    return planning_summary(memory)


def instance_prompt(subgoal: Subgoal, memory: SymbolicMemory, library: SkillLibrary,
                    state_binding: str = STATE_SUMMARY, skill_limit: int = 2) -> str:
    return render(
        "actor_instance",
        domain_instructions=library.instructions,
        example_format=library.example_format,
        skill_exemplars="\n\n".join(select_skills(subgoal, library, skill_limit)),
        subgoal=subgoal.description,
        search_hint=search_hint(subgoal),
        location=current_state(memory, state_binding),
    )


def execute_subgoal(subgoal: Subgoal, env, memory: SymbolicMemory, budget: int, gateway,
                    library: SkillLibrary, state_binding: str = STATE_SUMMARY,
                    skill_limit: int = 2, ruleset=None, on_step=None):
    """
    Run the actor on one subgoal.

    Every actor turn counts against budget, whether or not it reaches the
    environment. on_step(action, observation, memory) is called after each
    environment step.

    Returns:
        (SubEpisode, memory after the last observation)
    """
    messages = [
        system(render("actor_system")),
        user(instance_prompt(subgoal, memory, library, state_binding, skill_limit)),
    ]
    steps = []
    status: Optional[EpisodeStatus] = None

    for _ in range(max(budget, 0)):
        text = gateway.ask("actor", messages)
        try:
            decision = extract_command(text)
        except EmptyCompletion:
            messages += [assistant(text or ""), user(NO_COMMAND)]
            continue

        if decision.kind == ActorDecision.COMPLETED:
            status = EpisodeStatus.completed()
            break
        if decision.kind == ActorDecision.REPLAN:
            status = EpisodeStatus.replan(decision.text)
            break

        observation = env.step(decision.text)
        memory = update_memory(memory, observation, decision.text, ruleset)
        steps.append((decision.text, observation))
        if on_step is not None:
            on_step(decision.text, observation, memory)
        messages += [assistant(text), user(observation)]

    if status is None:
        status = EpisodeStatus.timeout()
    return SubEpisode(subgoal, tuple(steps), status, len(steps)), memory
