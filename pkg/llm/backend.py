from .types import ChatRequest, Completion


class Backend:
    """Chat-completion backend. Implementations must be safe for concurrent complete() calls."""

    positional = False

    def bind(self, env):
        """Called once per episode with the freshly built environment."""

    def complete(self, request: ChatRequest) -> Completion:
        raise NotImplementedError
