"""Chat request/response values passed between callers, the gateway and backends."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from model import COMPONENTS

from .errors import InvalidRequest

ROLES = ("system", "user", "assistant")

DEFAULT_TEMPERATURE = 0.0
DEFAULT_MAX_TOKENS = 1024


@dataclass(frozen=True)
class Message:
    role: str
    content: str
    name: Optional[str] = None

    def to_dict(self) -> dict:
        data = {"role": self.role, "content": self.content}
        if self.name:
            data["name"] = self.name
        return data


def system(content):
    return Message("system", content)


def user(content):
    return Message("user", content)


def assistant(content, name=None):
    return Message("assistant", content, name)


@dataclass(frozen=True)
class ChatRequest:
    messages: tuple
    component: str
    temperature: float = DEFAULT_TEMPERATURE
    max_tokens: int = DEFAULT_MAX_TOKENS

    def __post_init__(self):
        if not self.messages or self.messages[0].role != "system":
            raise InvalidRequest("First message of a chat request must have role 'system'")
        for message in self.messages:
            if message.role not in ROLES:
                raise InvalidRequest(f"Unknown message role: {message.role}")
        if self.component not in COMPONENTS:
            raise InvalidRequest(f"Unknown component tag: {self.component}")
        if self.max_tokens < 1:
            raise InvalidRequest(f"max_tokens must be positive. Received: {self.max_tokens}")

    def last_user_content(self) -> str:
        for message in reversed(self.messages):
            if message.role == "user":
                return message.content
        return ""

    def count(self, role) -> int:
        return sum(1 for message in self.messages if message.role == role)


@dataclass(frozen=True)
class Completion:
    text: str
    prompt_tokens: int = 0
    completion_tokens: int = 0
    metadata: dict = field(default_factory=dict)

    __hash__ = None


def count_tokens(text: str) -> int:
    """Whitespace-delimited token count (approximate; used when a backend reports no usage)."""
    return len((text or "").split())


def approximate_completion(request: ChatRequest, text: str) -> Completion:
    prompt = sum(count_tokens(message.content) for message in request.messages)
    return Completion(text, prompt, count_tokens(text))
