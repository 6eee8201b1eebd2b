"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes (see cli.EXIT_CODES):
input/validation problems exit 2, violated mathematical hypotheses exit 3,
exhausted budgets/tolerances exit 4, failed verification suites exit 5.
"""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToolkitError):
    """Unreadable or malformed input (files, JSON payloads, flag values)."""


class ValidationError(InputError):
    """Structurally valid input whose values violate a documented invariant
    (negative coefficient, element outside [0, N], parameter outside its box).
    """


class HypothesisError(ToolkitError):
    """A computation's mathematical hypothesis does not hold for the given
    input, e.g. the asymptotic constant requires I1 < 0.
    """


class DomainError(ToolkitError):
    """Input is outside the mathematical domain of an operation
    (e.g. the ratio I1^2/I2 of an identically zero series).
    """


class BudgetError(ToolkitError):
    """An exhaustive search ran out of its node budget.

    Carries the best lower bound found so far; `size` and `witness` are
    explicitly NOT exact values.
    """

    def __init__(self, message, size, witness, nodes):
        super().__init__(message)
        self.size = size
        self.witness = witness
        self.nodes = nodes


class ToleranceError(ToolkitError):
    """A requested certified tolerance cannot be met within the configured
    iteration budget; `achieved` records the error bound that was reached.
    """

    def __init__(self, message, achieved):
        super().__init__(message)
        self.achieved = achieved


class BracketError(ToolkitError):
    """One-dimensional refinement detected non-unimodal behavior inside the
    bracket; rerun with a grid pre-scan to isolate a single minimum.
    """
