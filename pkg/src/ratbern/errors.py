"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside its mathematical domain (e.g. x not in [0,1])."""


class PositivityError(ValueError):
    """A quantity required to be strictly positive is not."""


class DegeneratePointError(ValueError):
    """Evaluation requested at a point where the defining ratio is 0/0."""


class SpecError(ValueError):
    """A malformed operator spec document or request."""
