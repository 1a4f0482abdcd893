"""
belief package: verification and synthesis of the textual belief.

Public API:
- verify, QUESTIONS, parse_answer, VerificationParseError
- synthesize, extract_json, parse_synthesis, SynthesisParseError
- belief_update -> UpdateOutcome(belief, report, parse_errors)
"""

from .synthesis import (
    FALLBACK_STATUS,
    SYNTHESIS_KEYS,
    SynthesisParseError,
    extract_json,
    parse_synthesis,
    synthesis_messages,
    synthesize,
    synthesize_counted,
)
from .update import UpdateOutcome, belief_update
from .verify import (
    QUESTIONS,
    UNCERTAIN,
    VerificationParseError,
    build_context,
    parse_answer,
    questions_for,
    verify,
)

__all__ = [
    "FALLBACK_STATUS",
    "QUESTIONS",
    "SYNTHESIS_KEYS",
    "SynthesisParseError",
    "UNCERTAIN",
    "UpdateOutcome",
    "VerificationParseError",
    "belief_update",
    "build_context",
    "extract_json",
    "parse_answer",
    "parse_synthesis",
    "questions_for",
    "synthesis_messages",
    "synthesize",
    "synthesize_counted",
    "verify",
]
