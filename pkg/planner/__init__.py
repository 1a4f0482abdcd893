"""
planner package: subgoal-level planner.

Public API:
- PlannerStep, TaskContext, plan_next, feedback_message
- parse_full_plan, parse_execute_subgoal, render_subgoal
- PlannerParseError, EmptyPlan, MissingDesc, UnterminatedBlock
"""

from .parse import (
    BLOCK_OPEN,
    FULL_PLAN,
    TASK_COMPLETE,
    EmptyPlan,
    MissingDesc,
    PlannerParseError,
    UnterminatedBlock,
    declares_complete,
    extract_reasoning,
    parse_execute_subgoal,
    parse_full_plan,
    render_subgoal,
)
from .planner import (
    FEEDBACK_NAME,
    PROMPT_FAMILIES,
    PlannerStep,
    TaskContext,
    build_messages,
    feedback_message,
    parse_step,
    plan_next,
    prompt_family,
)

__all__ = [
    "BLOCK_OPEN",
    "EmptyPlan",
    "FEEDBACK_NAME",
    "FULL_PLAN",
    "MissingDesc",
    "PROMPT_FAMILIES",
    "PlannerParseError",
    "PlannerStep",
    "TASK_COMPLETE",
    "TaskContext",
    "UnterminatedBlock",
    "build_messages",
    "declares_complete",
    "extract_reasoning",
    "feedback_message",
    "parse_execute_subgoal",
    "parse_full_plan",
    "parse_step",
    "plan_next",
    "prompt_family",
    "render_subgoal",
]
