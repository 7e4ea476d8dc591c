"""Exception hierarchy shared by every module."""


class CRSubError(Exception):
    """Base class for all errors raised by crsub."""


class DegenerateRestriction(CRSubError):
    """The metric restricted to a subspace is singular.

    ``basis`` holds the (non-complementary) null solution that was computed
    before the degeneracy was detected, for diagnostics.
    """

    def __init__(self, message, basis=None):
        super().__init__(message)
        self.basis = basis


class OffManifold(CRSubError):
    pass


class ConstraintSingular(CRSubError):
    pass


class OffLevel(CRSubError):
    pass


class InconsistentScale(CRSubError):
    def __init__(self, message, kappa=None, residual=None):
        super().__init__(message)
        self.kappa = kappa
        self.residual = residual


class SamplingExhausted(CRSubError):
    pass


class UnknownScenario(CRSubError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidParams(CRSubError, ValueError):
    pass
