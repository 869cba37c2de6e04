"""Exception hierarchy and search-budget configuration."""

import os


class PolyworkError(Exception):
    """Base class for all library errors."""


class InputError(PolyworkError):
    """Malformed or inconsistent input."""


class EmptyPolyhedron(PolyworkError):
    pass


class NotBounded(PolyworkError):
    pass


class DimensionMismatch(InputError):
    pass


class RankDeficient(InputError):
    pass


class LowerDimensional(PolyworkError):
    pass


class NotRegular(InputError):
    pass


class NotPure(InputError):
    pass


class DegenerateWeights(InputError):
    pass


class NotUSO(PolyworkError):
    pass


class InconsistentOracle(PolyworkError):
    pass


class AxiomViolation(PolyworkError):
    pass


class UnsupportedParameter(InputError):
    pass


class SearchBudgetExceeded(PolyworkError):
    """An exponential search hit its node cap before finishing."""

    def __init__(self, what, budget):
        super().__init__(f"{what}: search budget of {budget} nodes exceeded")
        self.budget = budget


class NonTermination(SearchBudgetExceeded):
    """A sink-finding run exceeded its oracle-call cap."""


DEFAULT_BUDGET = 2_000_000


def default_budget():
    """Search budget, overridable through the POLYWORK_BUDGET environment variable."""
    raw = os.environ.get("POLYWORK_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"POLYWORK_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError("POLYWORK_BUDGET must be positive")
    return value


class Budget:
    """Node counter for a single search."""

    def __init__(self, what, limit=None):
        self.what = what
        self.limit = default_budget() if limit is None else limit
        self.used = 0

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.what, self.limit)
