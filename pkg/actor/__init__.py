"""
actor package: executes one subgoal at a time.

Public API:
- execute_subgoal, extract_command, ActorDecision, EmptyCompletion
- SkillLibrary, select_skills, load_library
- get_library(domain) -> bundled skill library for a domain
"""

from .actor import (
    DEFAULT_SUB_STEPS,
    REPLAN_OPEN,
    STATE_LOCATION,
    STATE_SUMMARY,
    SUBGOAL_COMPLETED,
    ActorDecision,
    EmptyCompletion,
    current_state,
    execute_subgoal,
    extract_command,
    instance_prompt,
    search_hint,
)
from .skills import Skill, SkillLibrary, get_library, load_library, parse_library, select_skills

__all__ = [
    "ActorDecision",
    "DEFAULT_SUB_STEPS",
    "EmptyCompletion",
    "REPLAN_OPEN",
    "STATE_LOCATION",
    "STATE_SUMMARY",
    "SUBGOAL_COMPLETED",
    "Skill",
    "SkillLibrary",
    "current_state",
    "execute_subgoal",
    "extract_command",
    "get_library",
    "instance_prompt",
    "load_library",
    "parse_library",
    "search_hint",
    "select_skills",
]
