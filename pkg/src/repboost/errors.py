"""Exception hierarchy.

Subroutine failures carry a ``context`` trail of ``(iteration, tag)`` frames
that callers append to as the error propagates outwards.
"""


class RepboostError(Exception):
    """Base class for all library errors."""

    def __init__(self, *args):
        super().__init__(*args)
        self.context = []

    def annotate(self, iteration, tag):
        self.context.append((iteration, tag))
        return self

    @property
    def signature(self):
        """Failure kind and where it happened, used to match paired failures.

        The message is left out: it often quotes data-dependent counts.
        """
        return (type(self).__name__, tuple(self.context))

    def __str__(self):
        base = super().__str__()
        if not self.context:
            return base
        trail = " <- ".join(f"{tag}@t={it}" for it, tag in self.context)
        return f"{base} [{trail}]"


class ZeroDensity(RepboostError):
    pass


class InsufficientSamples(RepboostError):
    def __init__(self, needed, available, what="sample"):
        super().__init__(f"{what}: need {needed} items, only {available} available")
        self.needed = needed
        self.available = available


class SamplesExhausted(RepboostError):
    pass


class NoWeakHypothesis(RepboostError):
    pass


class IterationCapExceeded(RepboostError):
    pass


class PreconditionUnmet(RepboostError):
    pass


class DomainMismatch(RepboostError):
    pass


class ConfigurationError(RepboostError):
    pass
