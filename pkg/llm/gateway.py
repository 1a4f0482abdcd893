"""Per-episode gateway: forwards requests to a backend and records token usage per component."""

from __future__ import annotations

import threading
from collections import Counter

from model import TokenLedger

from .types import DEFAULT_MAX_TOKENS, DEFAULT_TEMPERATURE, ChatRequest, Completion


class Gateway:
    def __init__(self, backend, temperature=DEFAULT_TEMPERATURE, max_tokens=DEFAULT_MAX_TOKENS):
        self.backend = backend
        self.temperature = temperature
        self.max_tokens = max_tokens
        self.ledger = TokenLedger()
        self.calls = Counter()
        self._lock = threading.Lock()

    def request(self, component, messages) -> ChatRequest:
        return ChatRequest(tuple(messages), component, self.temperature, self.max_tokens)

    def complete(self, request: ChatRequest) -> Completion:
        completion = self.backend.complete(request)
        with self._lock:
            self.ledger = self.ledger.add(request.component, completion.prompt_tokens, completion.completion_tokens)
            self.calls[request.component] += 1
        return completion

    def ask(self, component, messages) -> str:
        return self.complete(self.request(component, messages)).text

    @property
    def sequential(self) -> bool:
        """True when the backend answers by request position and needs a stable call order."""
        return getattr(self.backend, "positional", False)
