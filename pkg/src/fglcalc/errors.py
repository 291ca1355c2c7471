"""Exception types shared across the package.

Everything user-input-related derives from ValidationError so callers (and
the CLI) can distinguish "your data is wrong" from genuine bugs.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition or structural invariant."""


class BackendMismatchError(ValidationError):
    """Operands live over different coefficient backends."""


class OrderError(ValidationError):
    """Truncation orders are incompatible or too small for the request."""


class ConstantTermError(ValidationError):
    """A series substituted into another has a nonzero constant term."""


class ConfigurationError(ValidationError):
    """An intersection configuration fails its structural checks."""

    def __init__(self, violations):
        self.violations = list(violations)
        details = "; ".join(v["rule"] + " at " + str(v["face"]) for v in self.violations)
        super().__init__("invalid configuration: " + details)


class DimensionMismatchError(ValidationError):
    """Dimensions of the labels in a relation datum do not fit together."""


class WitnessError(ValidationError):
    """A relation witness is structurally malformed."""


class CycleError(ValidationError):
    """A cycle operation was applied to unsuitable operands."""
