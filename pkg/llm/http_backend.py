"""OpenAI-compatible chat-completions backend over HTTP."""

from __future__ import annotations

import os

import requests
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt, wait_none, wait_random_exponential

from .backend import Backend
from .errors import BackendUnavailable
from .types import ChatRequest, Completion, approximate_completion

DEFAULT_BASE_URL = "https://api.openai.com/v1"
DEFAULT_MODEL = "gpt-4o-mini"

RETRY_STATUS = {408, 409, 429, 500, 502, 503, 504}


class _Transient(Exception):
    pass


class HttpBackend(Backend):
    def __init__(self, base_url=DEFAULT_BASE_URL, model=DEFAULT_MODEL, api_key=None,
                 timeout=60, max_retries=3, backoff=1.0, max_backoff=30.0):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.max_retries = max(0, int(max_retries))
        self.backoff = backoff
        self.max_backoff = max_backoff

    @classmethod
    def from_config(cls, config: dict):
        """
        Build from the `http:` config block; DUET_* environment variables win for
        endpoint and model, credentials come from the environment only.
        """
        config = dict(config or {})
        return cls(
            base_url=os.getenv("DUET_API_BASE") or config.get("base_url") or DEFAULT_BASE_URL,
            model=os.getenv("DUET_MODEL") or config.get("model") or DEFAULT_MODEL,
            api_key=os.getenv("DUET_API_KEY") or os.getenv("OPENAI_API_KEY"),
            timeout=config.get("timeout", 60),
            max_retries=config.get("max_retries", 3),
            backoff=config.get("backoff", 1.0),
            max_backoff=config.get("max_backoff", 30.0),
        )

    def _payload(self, request: ChatRequest) -> dict:
        return {
            "model": self.model,
            "messages": [message.to_dict() for message in request.messages],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }

    def _post(self, payload):
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            response = requests.post(f"{self.base_url}/chat/completions", json=payload,
                                     headers=headers, timeout=self.timeout)
        except (requests.ConnectionError, requests.Timeout) as e:
            raise _Transient(str(e)) from e
        if response.status_code in RETRY_STATUS:
            raise _Transient(f"HTTP {response.status_code}")
        if response.status_code >= 400:
            raise BackendUnavailable(f"Endpoint returned HTTP {response.status_code}: {response.text[:200]}")
        return response.json()

    def complete(self, request: ChatRequest) -> Completion:
        wait = wait_random_exponential(multiplier=self.backoff, max=self.max_backoff) if self.backoff else wait_none()
        retrying = Retrying(
            stop=stop_after_attempt(self.max_retries + 1),
            wait=wait,
            retry=retry_if_exception_type(_Transient),
        )
        try:
            data = retrying(self._post, self._payload(request))
        except RetryError as e:
            raise BackendUnavailable(f"Endpoint unavailable after {self.max_retries + 1} attempts: "
                                     f"{e.last_attempt.exception()}") from e
        except ValueError as e:
            raise BackendUnavailable(f"Endpoint returned invalid JSON: {e}") from e

        try:
            text = data["choices"][0]["message"]["content"] or ""
        except (KeyError, IndexError, TypeError) as e:
            raise BackendUnavailable(f"Unexpected response shape: {e}") from e

        usage = data.get("usage") or {}
        if "prompt_tokens" in usage and "completion_tokens" in usage:
            return Completion(text, int(usage["prompt_tokens"]), int(usage["completion_tokens"]),
                              {"model": data.get("model", self.model)})
        return approximate_completion(request, text)
