class ParameterError(ValueError):
    """Invalid channel, code, or cover parameters."""


class ScaleGuardError(ParameterError):
    """An exhaustive computation was requested beyond its size guard."""


class ReconstructionError(ValueError):
    """Reconstruction produced a value that no binary word can explain.

    ``index`` is the 1-based read index at which the inconsistency surfaced.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class DecodingError(ValueError):
    """The received read vector is outside the single-substitution error model."""
