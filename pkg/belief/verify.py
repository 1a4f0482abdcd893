"""Verification stage: one question per request about the last sub-episode."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor

from llm import load_template, render, system, user
from model import ParseError, SubEpisode, Subgoal, SymbolicMemory, VerificationReport, planning_summary

UNCERTAIN = "Uncertain"

QUESTIONS = tuple(load_template("verification_questions").body.splitlines())

_ANSWER = re.compile(r"ANSWER[^:\n]*:[ \t]*", re.IGNORECASE)
_JUSTIFICATION = re.compile(r"JUSTIFICATION\s*:\s*", re.IGNORECASE)
_DECORATION = re.compile(r"^[\s*\[]+|[\s*\]]+$")


class VerificationParseError(ParseError):
    pass


def questions_for(subgoal: Subgoal) -> list:
    return [q.replace("<<subgoal>>", subgoal.description) for q in QUESTIONS]


def build_context(subgoal: Subgoal, episode: SubEpisode, memory: SymbolicMemory) -> str:
    return "\n\n".join([
        f"Subgoal: {subgoal.description}",
        f"Execution Trace:\n{episode.trace()}",
        planning_summary(memory),
    ])


def _clean(value):
    return _DECORATION.sub("", value)


def parse_answer(text: str) -> tuple:
    """
    Split a verification reply into (answer, justification).

    Without a JUSTIFICATION label, the lines after the answer line become the
    justification.

    Raises:
        VerificationParseError when neither label is present.
    """
    text = text or ""
    answer_match = _ANSWER.search(text)
    justification_match = _JUSTIFICATION.search(text)
    if not answer_match and not justification_match:
        raise VerificationParseError("Reply has neither an ANSWER nor a JUSTIFICATION label")

    if justification_match:
        justification = _clean(text[justification_match.end():])
    else:
        justification = ""

    if not answer_match:
        return UNCERTAIN, justification

    end = justification_match.start() if justification_match and justification_match.start() > answer_match.end() else len(text)
    answer_block = text[answer_match.end():end].strip()
    first, _, rest = answer_block.partition("\n")
    answer = _clean(first) or UNCERTAIN
    if not justification_match:
        justification = rest.strip()
    return answer, justification


def _ask(gateway, system_prompt, context, question):
    messages = [
        system(system_prompt),
        user(render("verification_instance", context=context, question=question)),
    ]
    text = gateway.ask("verification", messages)
    try:
        answer, justification = parse_answer(text)
        return (question, answer, justification), 0
    except VerificationParseError:
        return (question, UNCERTAIN, (text or "").strip()), 1


def verify(prev, memory: SymbolicMemory, episode: SubEpisode, subgoal: Subgoal, gateway,
           concurrent: bool = True) -> VerificationReport:
    """
    Ask every verification question once about the sub-episode.

    Requests run in parallel unless concurrent is False or the gateway needs a
    fixed call order; entries always follow question order.
    """
    questions = questions_for(subgoal)
    system_prompt = render("verification_system", questions="\n".join(f"- \"{q}\"" for q in questions))
    context = build_context(subgoal, episode, memory)

    if concurrent and not gateway.sequential:
        with ThreadPoolExecutor(max_workers=len(questions)) as pool:
            results = list(pool.map(lambda q: _ask(gateway, system_prompt, context, q), questions))
    else:
        results = [_ask(gateway, system_prompt, context, q) for q in questions]

    return VerificationReport(
        tuple(entry for entry, _ in results),
        parse_errors=sum(errors for _, errors in results),
    )
