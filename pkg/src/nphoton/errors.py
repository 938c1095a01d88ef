"""Exception hierarchy shared by every module."""


class NPhotonError(ValueError):
    """Base class; the CLI maps any subclass to exit code 1."""


class ValidationError(NPhotonError):
    """A parameter lies outside its admissible range."""


class DomainError(NPhotonError):
    """Parameters are valid but the requested quantity is undefined there."""


class NoInformationError(DomainError):
    """The fringe slope vanishes at the operating point, so a small phase
    shift leaves no first-order trace in the counts."""


class FitError(DomainError):
    """A sampled fringe is not a pure sinusoid at the requested frequency."""
