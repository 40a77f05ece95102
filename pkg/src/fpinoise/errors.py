"""Exception and warning types shared across the package."""


class ParameterError(ValueError):
    """A physical parameter violates its domain (e.g. non-positive linewidth)."""


class ConfigError(ValueError):
    """A run configuration is malformed or violates an invariant.

    Messages name the offending key path and state how to fix it.
    """


class ConvergenceError(RuntimeError):
    """An adaptive integral failed to reach the requested tolerance.

    Carries the best available estimate and its error bound.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class CoverageError(ValueError):
    """A tabulated spectrum does not cover the support of an integrand.

    ``required_half_width`` suggests how far the grid should extend.
    """

    def __init__(self, message: str, required_half_width: float):
        super().__init__(message)
        self.required_half_width = required_half_width


class DegeneratePolesWarning(UserWarning):
    """Residue summation was abandoned for near-coincident poles."""


class EstimatorVarianceWarning(UserWarning):
    """A spectral estimate was averaged over too few segments to be reliable."""


class AdiabaticityWarning(UserWarning):
    """Source-cavity escape rate is not small against the polarization decay."""
