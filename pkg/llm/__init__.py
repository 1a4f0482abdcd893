"""
llm package: chat-completion gateway, backends and prompt templates.

Public API:
- ChatRequest, Completion, Message (system/user/assistant helpers)
- Gateway
- HttpBackend, ReplayBackend, OracleBackend, ScriptedBackend
- PromptTemplate, render_template, load_template, render
- get(kind, params) -> helper factory to create one of the backends
"""

from model import ConfigError

from .backend import Backend
from .errors import (
    BackendUnavailable,
    GatewayError,
    InvalidRequest,
    MissingVariable,
    OracleUnsupported,
    ReplayExhausted,
    ReplayMismatch,
)
from .gateway import Gateway
from .http_backend import HttpBackend
from .oracle import OracleBackend
from .replay import ReplayBackend
from .scripted import ScriptedBackend
from .templates import PromptTemplate, documented_bindings, load_template, render, render_template
from .types import ChatRequest, Completion, Message, assistant, count_tokens, system, user

__all__ = [
    "Backend",
    "BackendUnavailable",
    "ChatRequest",
    "Completion",
    "Gateway",
    "GatewayError",
    "HttpBackend",
    "InvalidRequest",
    "Message",
    "MissingVariable",
    "OracleBackend",
    "OracleUnsupported",
    "PromptTemplate",
    "ReplayBackend",
    "ReplayExhausted",
    "ReplayMismatch",
    "ScriptedBackend",
    "assistant",
    "count_tokens",
    "documented_bindings",
    "get",
    "load_template",
    "render",
    "render_template",
    "system",
    "user",
]


def get(kind: str, params: dict = None):
    """
    Factory helper to create a backend.

    kind:
      - 'http'   -> HttpBackend.from_config(params)
      - 'replay' -> ReplayBackend.from_file(params['transcript'], params.get('strict'))
      - 'oracle' -> OracleBackend()

    Raises ConfigError on unknown kind or missing parameters.
    """

    params = params or {}
    kind = (kind or "").lower()
    if kind in ("http", "openai"):
        return HttpBackend.from_config(params)
    if kind == "replay":
        if not params.get("transcript"):
            raise ConfigError("Replay backend needs a 'transcript' path.")
        return ReplayBackend.from_file(params["transcript"], strict=bool(params.get("strict", False)))
    if kind == "oracle":
        return OracleBackend()
    raise ConfigError(f"Unknown backend kind: {kind}")
