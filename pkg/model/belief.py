"""Structured textual memory (l_k), the belief state b_k and its prompt rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .memory import SymbolicMemory, planning_summary
from .types import Plan

STATUS_PREFIX = "Status: "


@dataclass(frozen=True)
class LearnedFact:
    text: str
    k: int


@dataclass(frozen=True)
class TextualMemory:
    status_line: str = "Status: Task not started."
    justification: str = ""
    learned_facts: tuple = ()
    plan: Optional[Plan] = None
    last_subgoal: Optional[str] = None
    last_outcome: Optional[str] = None

    def __post_init__(self):
        if not self.status_line.startswith(STATUS_PREFIX):
            object.__setattr__(self, "status_line", STATUS_PREFIX + self.status_line.strip())

    def fact_texts(self) -> list:
        return [fact.text for fact in self.learned_facts]

    def with_facts(self, facts, k: int, cap: Optional[int] = None) -> tuple:
        """Append new facts tagged with planner step k, skipping blanks and exact duplicates."""
        merged = list(self.learned_facts)
        seen = {fact.text for fact in merged}
        for text in facts:
            text = (text or "").strip()
            if not text or text in seen:
                continue
            seen.add(text)
            merged.append(LearnedFact(text, k))
        if cap is not None and len(merged) > cap:
            merged = merged[len(merged) - cap:]
        return tuple(merged)


@dataclass(frozen=True)
class BeliefState:
    symbolic: SymbolicMemory
    textual: TextualMemory
    k: int = 0

    __hash__ = None


def render_belief(belief: BeliefState) -> str:
    textual = belief.textual
    lines = ["== Symbolic Memory ==", planning_summary(belief.symbolic), ""]
    lines.append("== Structured Text Memory ==")

    lines.append("[Current Plan]")
    if textual.plan is not None:
        lines.append("Subgoals")
        lines.append(textual.plan.render())
    else:
        lines.append("(None)")
    lines.append(textual.status_line)
    lines.append("")

    lines.append("[Subgoal Verification]")
    if textual.last_subgoal:
        lines.append(f"- Description: {textual.last_subgoal}")
        lines.append(f"- Outcome: {textual.last_outcome or 'Unknown'}")
        lines.append(f"- Justification: {textual.justification or '(none given)'}")
    else:
        lines.append("(None)")
    lines.append("")

    lines.append("[Learned Facts]")
    if textual.learned_facts:
        lines.extend(f"- {fact.text}" for fact in textual.learned_facts)
    else:
        lines.append("(None)")
    return "\n".join(lines)
