"""Exception hierarchy shared by the library, the CLI and the service surfaces."""


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class InvalidInputError(EngineError, ValueError):
    """A literal, parameter record or index is not acceptable."""


class FamilyMismatchError(EngineError, TypeError):
    """A vector was handed to a module of another family."""


class PreconditionError(EngineError, ValueError):
    """An operation was called outside of its documented domain."""


class LevelCapExceededError(EngineError):
    """The simple quotient was asked to work above its configured level cap."""


class WindowError(EngineError):
    """Generators or vectors do not fit inside the truncation window."""


class NonCatalogFactorError(EngineError):
    """A tensor factor is not one of the supported module families."""
