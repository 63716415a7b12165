class DomainError(ValueError):
    """An argument lies outside the domain where a function is defined."""


class NonConvergenceError(RuntimeError):
    """A series or integrator did not reach its requested accuracy."""
