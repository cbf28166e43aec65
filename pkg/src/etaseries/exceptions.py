"""Exception types raised by the evaluators."""


class EtaSeriesError(Exception):
    """Base class for all errors raised by this package."""


class PlanFailure(EtaSeriesError):
    """No truncation index gives a convergent geometric tail; try a larger ``ell``."""


class MaxTermsExceeded(EtaSeriesError):
    """The certified truncation needs more terms than ``max_terms`` allows."""


class PoleAtOne(EtaSeriesError):
    """zeta was requested at its pole s = 1."""


class BaseExhausted(EtaSeriesError):
    """No candidate base keeps ``1 - b**(1-s)`` away from zero."""


class NearPole(EtaSeriesError):
    """The Bernoulli closed form was evaluated too close to one of its poles."""
