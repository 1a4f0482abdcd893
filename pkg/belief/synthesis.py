"""Synthesis stage: turn the verification report into the next textual memory."""

from __future__ import annotations

import json
import re
from typing import Optional

from llm import assistant, render, system, user
from model import (
    BeliefState,
    ParseError,
    Plan,
    Subgoal,
    SymbolicMemory,
    TextualMemory,
    VerificationReport,
    planning_summary,
    render_belief,
)

SYNTHESIS_KEYS = ("status_line", "justification", "learned_facts")
FALLBACK_STATUS = "Status: belief update failed to parse"

_FENCE = re.compile(r"```[a-zA-Z]*")


class SynthesisParseError(ParseError):
    pass


def _balanced_end(text, start):
    depth = 0
    in_string = False
    escaped = False
    for idx in range(start, len(text)):
        char = text[idx]
        if in_string:
            if escaped:
                escaped = False
            elif char == "\\":
                escaped = True
            elif char == '"':
                in_string = False
        elif char == '"':
            in_string = True
        elif char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
            if depth == 0:
                return idx + 1
    return -1


def extract_json(text: str, strict: bool = False) -> dict:
    """
    Parse a JSON object out of a completion.

    Lenient mode drops markdown fences and takes the first outermost balanced
    {...} span that parses. Strict mode requires the whole text to be one object.

    Raises:
        SynthesisParseError when no object can be parsed.
    """
    text = text or ""
    if strict:
        try:
            data = json.loads(text)
        except ValueError as e:
            raise SynthesisParseError(f"Invalid JSON: {e}") from e
        if not isinstance(data, dict):
            raise SynthesisParseError("JSON value is not an object")
        return data

    text = _FENCE.sub("", text)
    start = text.find("{")
    while start >= 0:
        end = _balanced_end(text, start)
        if end < 0:
            break
        try:
            data = json.loads(text[start:end])
            if isinstance(data, dict):
                return data
        except ValueError:
            pass
        start = text.find("{", start + 1)
    raise SynthesisParseError("No JSON object found in the completion")


def parse_synthesis(text: str, strict: bool = False) -> tuple:
    """
    Returns:
        (status_line, justification, learned_facts list)
    """
    data = extract_json(text, strict)
    missing = [key for key in SYNTHESIS_KEYS if key not in data]
    if missing:
        raise SynthesisParseError(f"JSON object is missing keys: {', '.join(missing)}")
    status_line, justification, facts = (data[key] for key in SYNTHESIS_KEYS)
    if not isinstance(status_line, str) or not status_line.strip():
        raise SynthesisParseError("status_line must be a non-empty string")
    if not isinstance(justification, str):
        raise SynthesisParseError("justification must be a string")
    if not isinstance(facts, list) or not all(isinstance(fact, str) for fact in facts):
        raise SynthesisParseError("learned_facts must be a list of strings")
    return status_line.strip(), justification.strip(), facts


def synthesis_messages(prev: BeliefState, memory: SymbolicMemory, report: VerificationReport,
                       subgoal: Subgoal, latest_plan: Optional[Plan], outcome: str) -> list:
    return [
        system(render("synthesis_system")),
        user(render(
            "synthesis_instance",
            previous_belief=render_belief(prev),
            memory_summary=planning_summary(memory),
            latest_plan=latest_plan.render() if latest_plan else "(None)",
            subgoal=subgoal.description,
            last_outcome=outcome,
            qa_summary=report.summary() or "(None)",
        )),
    ]


def synthesize_counted(prev, memory, report, subgoal, latest_plan, gateway, outcome: str = "Unknown",
                       fact_cap: Optional[int] = None) -> tuple:
    """
    synthesize() that also reports how many completions failed to parse.

    Returns:
        (TextualMemory, parse_errors)
    """
    k = prev.k + 1
    plan = latest_plan or prev.textual.plan
    messages = synthesis_messages(prev, memory, report, subgoal, plan, outcome)
    errors = 0
    last_error = None
    for _ in range(2):
        text = gateway.ask("synthesis", messages)
        try:
            status_line, justification, facts = parse_synthesis(text)
            return TextualMemory(
                status_line=status_line,
                justification=justification,
                learned_facts=prev.textual.with_facts(facts, k, fact_cap),
                plan=plan,
                last_subgoal=subgoal.description,
                last_outcome=outcome,
            ), errors
        except SynthesisParseError as e:
            errors += 1
            last_error = e
            messages = messages + [assistant(text or ""), user(render("synthesis_reprompt", error=str(e)))]

    return TextualMemory(
        status_line=FALLBACK_STATUS,
        justification=f"Synthesis output could not be parsed: {last_error}",
        learned_facts=prev.textual.learned_facts,
        plan=plan,
        last_subgoal=subgoal.description,
        last_outcome=outcome,
    ), errors


def synthesize(prev, memory, report, subgoal, latest_plan, gateway, outcome: str = "Unknown",
               fact_cap: Optional[int] = None) -> TextualMemory:
    return synthesize_counted(prev, memory, report, subgoal, latest_plan, gateway, outcome, fact_cap)[0]
