from model import DuetError


class GatewayError(DuetError):
    """A backend could not produce a completion."""


class BackendUnavailable(GatewayError):
    pass


class ReplayExhausted(GatewayError):
    def __init__(self, position, available):
        super().__init__(f"Replay transcript has no response for request #{position} ({available} recorded)")
        self.position = position


class ReplayMismatch(GatewayError):
    pass


class OracleUnsupported(GatewayError):
    pass


class InvalidRequest(GatewayError, ValueError):
    pass


class MissingVariable(DuetError, KeyError):
    def __init__(self, name, template=None):
        where = f" in template '{template}'" if template else ""
        super().__init__(f"Template variable '{name}' is not bound{where}")
        self.name = name

    def __str__(self):
        return self.args[0]
