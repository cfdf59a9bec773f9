"""Exception hierarchy shared by every module."""


class ReliabilityError(ValueError):
    """Base class for all domain errors raised by fclrel."""


class DiagramError(ReliabilityError):
    """A state diagram or transition matrix violates a structural invariant."""


class InfiniteMTTFError(ReliabilityError):
    """No path to absorption exists, so the expected time to failure diverges."""


class ScenarioError(ReliabilityError):
    """A scenario file is malformed, incomplete or carries an invalid value.

    ``key`` names the offending scenario key when there is one.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
