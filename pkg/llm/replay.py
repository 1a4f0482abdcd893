"""
Replay backend: answers the i-th request with the i-th recorded response.

Transcript document: a list of entries (or {"responses": [...]}), each
{"response": text, "component": tag?, "expected_prompt_prefix": text?}.
A bare string entry is shorthand for {"response": text}.
"""

from __future__ import annotations

import threading

from model import ConfigError
from sources import load_document

from .backend import Backend
from .errors import ReplayExhausted, ReplayMismatch
from .types import ChatRequest, Completion, approximate_completion


def _entry(raw, idx):
    if isinstance(raw, str):
        return {"response": raw}
    if not isinstance(raw, dict) or not isinstance(raw.get("response"), str):
        raise ConfigError(f"Replay entry #{idx} must have a string 'response' field.")
    return raw


class ReplayBackend(Backend):
    positional = True

    def __init__(self, entries, strict=False):
        self.entries = [_entry(raw, idx) for idx, raw in enumerate(entries, 1)]
        self.strict = strict
        self.position = 0
        self._lock = threading.Lock()

    @classmethod
    def from_file(cls, path, strict=False):
        document = load_document(path)
        if isinstance(document, dict):
            document = document.get("responses")
        if not isinstance(document, list):
            raise ConfigError(f"Replay transcript '{path}' must be a list of responses")
        return cls(document, strict=strict)

    def complete(self, request: ChatRequest) -> Completion:
        with self._lock:
            position = self.position
            if position >= len(self.entries):
                raise ReplayExhausted(position + 1, len(self.entries))
            self.position += 1
        entry = self.entries[position]
        if self.strict:
            self._check(entry, request, position + 1)
        return approximate_completion(request, entry["response"])

    def _check(self, entry, request, position):
        expected_component = entry.get("component")
        if expected_component and expected_component != request.component:
            raise ReplayMismatch(f"Request #{position} is tagged '{request.component}', "
                                 f"transcript expects '{expected_component}'")
        prefix = entry.get("expected_prompt_prefix")
        if prefix and not request.last_user_content().startswith(prefix):
            raise ReplayMismatch(f"Request #{position} prompt does not start with the recorded prefix: {prefix[:60]!r}")

    def remaining(self) -> int:
        return len(self.entries) - self.position
