"""Two-stage belief update: verification, then synthesis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from model import BeliefState, Plan, SubEpisode, Subgoal, SymbolicMemory, VerificationReport

from .synthesis import synthesize_counted
from .verify import verify


@dataclass(frozen=True)
class UpdateOutcome:
    belief: BeliefState
    report: VerificationReport
    parse_errors: int = 0


def belief_update(prev: BeliefState, memory: SymbolicMemory, episode: SubEpisode, subgoal: Subgoal,
                  latest_plan: Optional[Plan], gateway, fact_cap: Optional[int] = None,
                  concurrent: bool = True) -> UpdateOutcome:
    """
    Build b_{k+1}: the symbolic memory is taken as given, the textual memory
    comes from the verification report and the synthesis completion.
    """
    report = verify(prev, memory, episode, subgoal, gateway, concurrent)
    textual, errors = synthesize_counted(
        prev, memory, report, subgoal, latest_plan, gateway,
        outcome=episode.status.label, fact_cap=fact_cap,
    )
    return UpdateOutcome(
        BeliefState(memory, textual, prev.k + 1),
        report,
        parse_errors=report.parse_errors + errors,
    )
