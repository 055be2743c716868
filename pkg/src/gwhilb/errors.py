"""Exception types shared across the package."""


class GwError(ValueError):
    """Base class for invalid arguments to the algebra routines."""


class FieldMismatchError(GwError):
    """Raised when two values built over different field models are combined."""


class InvalidClassError(GwError):
    """Raised for a square class that makes no sense in the chosen model."""


class UnsupportedFieldError(GwError):
    """Raised when a computation needs a power structure the model lacks.

    Outside the quadratically and real closed models no reconstruction of
    symmetric powers from invariants is available, since the Grothendieck-Witt
    ring may carry torsion there.
    """

    def __init__(self, field, what="this computation"):
        super().__init__(
            f"conjecture-dependent: {what} is not available over {field.name}; "
            "no torsion-free invariant reconstruction (use cclosed or rclosed)"
        )
        self.field = field


class ParityError(GwError):
    """Raised when rank and signature data have different parities."""
