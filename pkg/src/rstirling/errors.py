"""Exception hierarchy shared by all modules.

The CLI maps these onto its exit codes: DomainError -> 2,
CapacityError -> 3, I/O failures -> 4, and the internal-consistency
family (SolverError, QuadratureError, ConsistencyError) -> 5.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class CapacityError(RuntimeError):
    """A configured resource cap (table size, partition size, series order)
    would be exceeded."""


class SolverError(ArithmeticError):
    """Root solver failed to converge; carries bracket diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class QuadratureError(ArithmeticError):
    """Contour quadrature failed to converge; carries node diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConsistencyError(RuntimeError):
    """Two routes that must agree exactly (or a sign/positivity guarantee)
    disagreed; indicates a bug, never bad user input."""
