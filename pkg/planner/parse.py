"""
Planner output grammar.

    <reasoning>
    FULL PLAN
    Subgoals:
    1. ...
    2. ...
    EXECUTE_SUBGOAL[
      DESC: <description>
      SEARCH_LOCATIONS: [<loc>, ...]   # optional
    ]

A completion without an EXECUTE_SUBGOAL block may instead contain TASK COMPLETE.
"""

from __future__ import annotations

import re
from typing import Optional

from model import ParseError, Plan, Subgoal

FULL_PLAN = "FULL PLAN"
BLOCK_OPEN = "EXECUTE_SUBGOAL["
TASK_COMPLETE = "TASK COMPLETE"

_ENUMERATED = re.compile(r"^\s*\d+\s*[.)]\s*(.*?)\s*$")
_HEADER = re.compile(r"^\s*\**\s*subgoals\s*:?\s*\**\s*$", re.IGNORECASE)
_FIELD = re.compile(r"^\s*(DESC|SEARCH_LOCATIONS)\s*:\s*(.*)$", re.IGNORECASE)
_ABSENT = {"", "null", "none", "[]", "n/a"}


class PlannerParseError(ParseError):
    pass


class EmptyPlan(PlannerParseError):
    pass


class MissingDesc(PlannerParseError):
    pass


class UnterminatedBlock(PlannerParseError):
    pass


def parse_full_plan(text: str, k: int = 0) -> Optional[Plan]:
    """
    Collect the enumerated lines following the first FULL PLAN token.

    Returns:
        Plan created at step k, or None when the token is absent.

    Raises:
        EmptyPlan when the token is present but no enumerated line follows.
    """
    text = text or ""
    idx = text.find(FULL_PLAN)
    if idx < 0:
        return None

    items = []
    for line in text[idx + len(FULL_PLAN):].splitlines()[1:]:
        match = _ENUMERATED.match(line)
        if match and match.group(1):
            items.append(match.group(1))
            continue
        if not items and (not line.strip() or _HEADER.match(line)):
            continue
        break

    if not items:
        raise EmptyPlan("FULL PLAN is not followed by any enumerated subgoal")
    return Plan(tuple(items), created_at_k=k)


def _block_lines(text):
    start = text.rfind(BLOCK_OPEN)
    lines = text[start + len(BLOCK_OPEN):].split("\n")
    first = lines[0].strip()
    for idx, line in enumerate(lines[1:], 1):
        if line.strip() == "]":
            return ([first] if first else []) + lines[1:idx]
    if first.endswith("]"):
        return [first[:-1]]
    raise UnterminatedBlock("EXECUTE_SUBGOAL[ block is not closed by a line containing only ]")


def _locations(value):
    value = value.split("#", 1)[0].strip()
    if value.lower() in _ABSENT:
        return None
    value = value.strip("[]")
    items = [item.strip().strip("'\"` ") for item in value.split(",")]
    items = [item for item in items if item]
    return tuple(items) if items else None


def parse_execute_subgoal(text: str, k: int = 0) -> Subgoal:
    """
    Parse the last EXECUTE_SUBGOAL block in text.

    Raises:
        PlannerParseError when there is no block, UnterminatedBlock, MissingDesc.
    """
    text = text or ""
    if BLOCK_OPEN not in text:
        raise PlannerParseError("No EXECUTE_SUBGOAL block found")

    desc = []
    locations = None
    current = None
    for line in _block_lines(text):
        match = _FIELD.match(line)
        if match:
            current = match.group(1).upper()
            if current == "DESC":
                desc = [match.group(2).strip()]
            else:
                locations = _locations(match.group(2))
        elif current == "DESC" and line.strip():
            desc.append(line.strip())

    description = " ".join(part for part in desc if part)
    if not description:
        raise MissingDesc("EXECUTE_SUBGOAL block has no DESC")
    return Subgoal(description, locations, issued_at_k=k)


def render_subgoal(subgoal: Subgoal) -> str:
    lines = [BLOCK_OPEN, f"  DESC: {subgoal.description}"]
    if subgoal.search_locations:
        lines.append(f"  SEARCH_LOCATIONS: [{', '.join(subgoal.search_locations)}]")
    lines.append("]")
    return "\n".join(lines)


def extract_reasoning(text: str) -> str:
    """Text before the first plan, subgoal block or completion marker."""
    text = text or ""
    cut = len(text)
    for token in (FULL_PLAN, BLOCK_OPEN, TASK_COMPLETE):
        idx = text.find(token)
        if 0 <= idx < cut:
            cut = idx
    return text[:cut].strip()


def declares_complete(text: str) -> bool:
    text = text or ""
    return TASK_COMPLETE in text and BLOCK_OPEN not in text
