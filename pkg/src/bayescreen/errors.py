"""Exception types raised by the screening and estimation routines."""


class BayescreenError(ValueError):
    """Base class for all domain errors."""


class DegenerateTest(BayescreenError):
    """The test characteristics make the requested quantity undefined (0/0)."""


class UndefinedRatio(BayescreenError):
    """Likelihood ratio 0/0: sensitivity 0 with specificity 1."""


class BoundaryLogit(BayescreenError):
    """logit requested at p = 0 or p = 1."""


class UninformativeTest(BayescreenError):
    """Youden's J <= 0: the test carries no usable signal."""


class EmptyCohort(BayescreenError):
    """No subjects tested (n = 0)."""


class UnnormalizedDensity(BayescreenError):
    """A normalized density grid was required but not supplied."""


class InvalidPrior(BayescreenError):
    """Beta prior with non-positive shape parameters."""


class InvalidTarget(BayescreenError):
    """Target post-test probability below the pretest probability."""
