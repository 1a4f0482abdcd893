"""
Scripted backend for tests and fault injection.

Responses are given per component tag as a list (consumed in order, the
last one repeats) or a callable taking the ChatRequest. A response that is
an Exception instance is raised instead of returned.
"""

from __future__ import annotations

import threading
from collections import Counter

from .backend import Backend
from .errors import GatewayError
from .types import ChatRequest, Completion, approximate_completion


class ScriptedBackend(Backend):
    def __init__(self, responses: dict, positional=False):
        self.responses = dict(responses)
        self.positional = positional
        self.calls = Counter()
        self.requests = []
        self._lock = threading.Lock()

    def complete(self, request: ChatRequest) -> Completion:
        with self._lock:
            index = self.calls[request.component]
            self.calls[request.component] += 1
            self.requests.append(request)

        script = self.responses.get(request.component)
        if script is None:
            raise GatewayError(f"No scripted responses for component '{request.component}'")
        if callable(script):
            response = script(request)
        else:
            response = script[min(index, len(script) - 1)]

        if isinstance(response, BaseException):
            raise response
        return approximate_completion(request, response)
