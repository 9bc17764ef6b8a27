"""Exception types raised across the package."""


class ItermolError(Exception):
    """Base class for all package-specific errors."""


# --- token / grammar errors ---------------------------------------------------

class EmptyInputError(ItermolError):
    pass


class UnknownTokenError(ItermolError):
    def __init__(self, symbol: str, position: int):
        super().__init__(f"unknown token {symbol!r} at position {position}")
        self.symbol = symbol
        self.position = position


# --- metric errors ------------------------------------------------------------

class RadiusMismatchError(ItermolError):
    pass


class TooFewItemsError(ItermolError):
    pass


class WrongOracleError(ItermolError):
    pass


class EmptyGraphError(ItermolError):
    pass


class DegenerateCorpusError(ItermolError):
    pass


class LengthMismatchError(ItermolError):
    pass


# --- translation / training errors --------------------------------------------

class NoPairsFoundError(ItermolError):
    pass


class EmptyTrainingError(ItermolError):
    pass


class ModeMismatchError(ItermolError):
    pass


# --- wire adapter errors -------------------------------------------------------

class ProtocolError(ItermolError):
    pass


class AdapterTimeoutError(ItermolError):
    pass


class InvalidDistributionError(ItermolError):
    pass


# --- decoding errors -----------------------------------------------------------

class NoCompletedError(ItermolError):
    pass


# --- engine errors -------------------------------------------------------------

class EmptyBatchError(ItermolError):
    pass


class MissingReferenceError(ItermolError):
    pass


class UnknownIterationError(ItermolError):
    pass


class InvalidCandidateError(ItermolError):
    pass


class CountTooLargeError(ItermolError):
    pass


class ConfigError(ItermolError):
    """Raised when a run config document is invalid; carries every problem found."""

    def __init__(self, problems: list[str]):
        super().__init__("invalid config: " + "; ".join(problems))
        self.problems = list(problems)
