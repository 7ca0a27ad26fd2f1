class VirialError(Exception):
    """Base exception for every failure the library reports."""

    def __init__(self, message: str, exit_code: int = 1):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class DomainError(VirialError):
    """Exception raised when a special function is evaluated outside its domain."""

    def __init__(self, message: str):
        super().__init__(f"Domain error: {message}", exit_code=1)


class ArgumentError(VirialError):
    """Exception raised when an operation's preconditions are violated."""

    def __init__(self, message: str):
        super().__init__(message, exit_code=1)


class DegenerateInputError(ArgumentError):
    """Exception raised when bound parameters make the closed form singular."""

    def __init__(self, message: str = "Bound parameters a and b must both be positive"):
        super().__init__(message)


class RangeError(ArgumentError):
    """Exception raised when an argument falls outside an operation's admissible range."""

    def __init__(self, message: str):
        super().__init__(f"Out of range: {message}")


class InversionError(ArgumentError):
    """Exception raised when a series cannot be compositionally inverted."""

    def __init__(self, message: str = "Series needs a zero constant term and a nonzero linear term"):
        super().__init__(message)


class DivergenceError(VirialError):
    """Exception raised when a temperedness integral does not converge."""

    def __init__(self, message: str):
        super().__init__(f"Divergent integral: {message}", exit_code=1)


class ConfigurationError(VirialError):
    """Exception raised when required data or settings are missing or invalid."""

    def __init__(self, message: str):
        super().__init__(message, exit_code=1)


class VerificationFailure(VirialError):
    """Exception raised when a bound fails to dominate a known coefficient."""

    def __init__(self, message: str, output: str = ""):
        self.output = output
        super().__init__(message, exit_code=2)
