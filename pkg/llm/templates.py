"""
Prompt templates: text files under llm/prompts/ with `{{ variable }}` placeholders.

bindings.yaml documents the variables each bundled template is rendered with.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from sources import fetch_content, load_document, package_path

from .errors import MissingVariable

PLACEHOLDER = re.compile(r"\{\{\s*(\w+)\s*\}\}")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str
    required: frozenset = frozenset()

    @classmethod
    def from_text(cls, name, body):
        return cls(name, body, frozenset(PLACEHOLDER.findall(body)))


def render_template(template: PromptTemplate, bindings: dict) -> str:
    """
    Substitute every placeholder with its binding (plain text, no escaping).

    Raises:
        MissingVariable when a required variable is unbound.
    """
    for name in sorted(template.required):
        if name not in bindings or bindings[name] is None:
            raise MissingVariable(name, template.name)
    return PLACEHOLDER.sub(lambda m: str(bindings[m.group(1)]), template.body)


@lru_cache(maxsize=None)
def load_template(name: str) -> PromptTemplate:
    body = fetch_content(package_path("llm", "prompts", f"{name}.txt"))
    return PromptTemplate.from_text(name, body.rstrip("\n"))


def render(name: str, **bindings) -> str:
    return render_template(load_template(name), bindings)


@lru_cache(maxsize=None)
def documented_bindings() -> dict:
    """Template name -> variables it is rendered with, from prompts/bindings.yaml."""
    return load_document(package_path("llm", "prompts", "bindings.yaml")) or {}
