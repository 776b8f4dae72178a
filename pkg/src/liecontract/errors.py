"""Typed exceptions shared across the package."""


class LieContractError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(LieContractError):
    """Vector length does not match the algebra dimension."""


class NotAnIdeal(LieContractError):
    """A subspace that was required to be an ideal is not one."""


class GradingRequired(LieContractError):
    """Operation needs a gradation but the algebra carries none."""


class StepTooLarge(LieContractError):
    """Requested nilpotency step exceeds the supported bound."""


class NonPolynomialExpansion(LieContractError):
    """Frame expansion did not close up with polynomial coefficients.

    Signals either a bug or a frame that does not come from a group law
    sharing coordinates with the operator being expanded.
    """


class ConstraintViolated(LieContractError):
    """Parameters violate a documented precondition."""


class SampleBudgetTooSmall(LieContractError):
    """Monte-Carlo sample count below the supported minimum."""


class QuadratureFailure(LieContractError):
    """A numerical integral did not converge to the requested accuracy."""


class PoleAlpha(LieContractError):
    """Riesz order too close to a pole of the meromorphic continuation."""


class FitFailure(LieContractError):
    """A fitted constant came out with an impossible sign or shape."""


class SpecError(LieContractError):
    """Problem in a spec-language document."""

    def __init__(self, message, line=None, column=None, construct=None):
        self.line = line
        self.column = column
        self.construct = construct
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        ctx = f" in {construct!r}" if construct else ""
        super().__init__(f"{message}{loc}{ctx}")


class SpecSyntaxError(SpecError):
    """Tokenization or grammar error in a spec document."""


class SpecSemanticError(SpecError):
    """Well-formed but meaningless construct in a spec document."""
