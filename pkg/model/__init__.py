"""
model package: values shared by every part of the agent.

Public API:
- Predicate, canonical_predicate
- SymbolicMemory, planning_summary
- TextualMemory, BeliefState, render_belief
- Subgoal, Plan, SubEpisode, EpisodeStatus, VerificationReport, TokenLedger
- DuetError, ParseError, ConfigError
"""

from .belief import BeliefState, LearnedFact, TextualMemory, render_belief, STATUS_PREFIX
from .errors import DuetError, ConfigError, ParseError
from .memory import INVENTORY, SymbolicMemory, planning_summary
from .predicate import Predicate, canonical_predicate
from .types import (
    COMPONENTS,
    EpisodeStatus,
    Plan,
    SubEpisode,
    Subgoal,
    TokenLedger,
    VerificationReport,
)

__all__ = [
    "BeliefState",
    "COMPONENTS",
    "DuetError",
    "ConfigError",
    "EpisodeStatus",
    "INVENTORY",
    "LearnedFact",
    "ParseError",
    "Plan",
    "Predicate",
    "STATUS_PREFIX",
    "SubEpisode",
    "Subgoal",
    "SymbolicMemory",
    "TextualMemory",
    "TokenLedger",
    "VerificationReport",
    "canonical_predicate",
    "planning_summary",
    "render_belief",
]
