"""Exception hierarchy shared by every module."""


class HeavyTailError(Exception):
    """Base class for all package errors."""


class ParameterError(HeavyTailError, ValueError):
    """A parameter lies outside its admissible domain."""


class DomainError(ParameterError):
    """An input value is outside the domain of a transform (e.g. log of 0)."""


class DegenerateError(HeavyTailError, ValueError):
    """The data carry no information for the requested statistic."""


class UnsupportedSpecError(HeavyTailError, TypeError):
    """The operation needs an analytic form the distribution does not have."""


class ModelError(HeavyTailError, ValueError):
    """A generative model's assumptions are violated."""


class InsufficientDataError(DegenerateError):
    pass


class ParseError(HeavyTailError, ValueError):
    pass
