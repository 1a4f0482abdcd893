"""
Canonical predicate text: `name` or `name(arg1,arg2,...)`.

Tokens are lowercased and may not contain whitespace, commas or parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

MAX_ARITY = 3

_TOKEN = re.compile(r"^[^\s(),]+$")


@dataclass(frozen=True, order=True)
class Predicate:
    name: str
    args: tuple = ()

    def __post_init__(self):
        if not _TOKEN.match(self.name or "") or self.name != self.name.lower():
            raise ParseError(f"Invalid predicate name: '{self.name}'")
        if len(self.args) > MAX_ARITY:
            raise ParseError(f"Predicate '{self.name}' has {len(self.args)} arguments (max {MAX_ARITY})")
        for arg in self.args:
            if not isinstance(arg, str) or not _TOKEN.match(arg) or arg != arg.lower():
                raise ParseError(f"Invalid argument '{arg}' in predicate '{self.name}'")

    def render(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"

    def mentions(self, entity: str) -> bool:
        return entity in self.args

    def __str__(self):
        return self.render()


def canonical_predicate(text: str) -> Predicate:
    """
    Parse canonical predicate text.

    Args:
        text: e.g. "on(b1,b2)", "arm_empty", "On( B1 , b2 )"

    Returns:
        Predicate with lowercased tokens and interior whitespace removed.

    Raises:
        ParseError on an empty name, unbalanced parentheses or an empty argument.
    """
    if not isinstance(text, str):
        raise ParseError(f"Predicate text must be a string. Received: {text!r}")

    cleaned = re.sub(r"\s+", "", text).lower()
    if not cleaned:
        raise ParseError("Predicate text is empty")

    if cleaned.count("(") != cleaned.count(")"):
        raise ParseError(f"Unbalanced parentheses in predicate: '{text}'")

    if "(" not in cleaned:
        return Predicate(cleaned)

    opening = cleaned.index("(")
    if cleaned.count("(") != 1 or not cleaned.endswith(")") or cleaned.index(")") < opening:
        raise ParseError(f"Malformed predicate: '{text}'")

    name = cleaned[:opening]
    if not name:
        raise ParseError(f"Predicate has an empty name: '{text}'")

    inner = cleaned[opening + 1:-1]
    args = tuple(inner.split(",")) if inner else ()
    if inner and any(not arg for arg in args):
        raise ParseError(f"Predicate has an empty argument: '{text}'")

    return Predicate(name, args)
