"""Exception hierarchy shared by every gfon module."""


class FonError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(FonError, ValueError):
    """A parameter is outside its admissible range."""


class InvalidWeightsError(InvalidParameterError):
    """Weights are negative or do not sum to one."""


class RejectedInputError(FonError, ValueError):
    """Non-finite or otherwise unusable evaluation input."""


class LevelUnreachableError(FonError):
    """A sampled curve never reaches a membership level inside its grid."""


class ResolutionError(FonError):
    """A grid oracle is too coarse: refinement changed the answer."""


class ConvergenceError(FonError):
    """An iteration hit its step budget without meeting its criterion."""


class ConfigError(FonError):
    """Scenario configuration failed validation.

    ``errors`` holds every problem found, not just the first one.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
