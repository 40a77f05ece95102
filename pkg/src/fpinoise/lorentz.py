"""Lorentzian lines and exact integrals of their products.

The basic object is the normalized Lorentzian density

    L(w, k) = 2k / ((w - w0)^2 + k^2),      (1/2pi) * integral L dw = 1,

with center ``w0`` and half width at half maximum ``k``.  Everything in
this package reduces to integrals of products of a few such lines over
the whole frequency axis.  Those integrals are rational and are computed
exactly here by closing the contour in one half-plane and summing
residues, including repeated poles.  An adaptive quadrature over the
infinite axis (tangent substitution, no truncation cutoff) provides an
independent numerical route used as a cross-check everywhere.

All frequencies and rates are dimensionless, expressed in units of the
source-cavity escape rate; see :data:`KAPPA_L_RAD_PER_SEC`.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DegeneratePolesWarning, ParameterError

TWO_PI = 2.0 * math.pi

# Physical value of the normalizing rate, for report metadata only; the
# numerics never touch it.
KAPPA_L_RAD_PER_SEC = 4.0e11

# Two distinct poles closer than NEAR_DEGENERATE_FACTOR * (sum of widths)
# make the residue sum ill-conditioned; quadrature takes over.  Poles
# closer than GROUP_FACTOR * (sum of widths) are treated as one pole of
# higher multiplicity.
GROUP_FACTOR = 1e-12
NEAR_DEGENERATE_FACTOR = 1e-9


@dataclass(frozen=True)
class Lorentzian:
    """A normalized Lorentzian line: ``center`` and ``hwhm``, both in kappa_l units."""

    center: float
    hwhm: float

    def __post_init__(self):
        if not math.isfinite(self.center):
            raise ParameterError(f"Lorentzian center must be finite, got {self.center}")
        if not (math.isfinite(self.hwhm) and self.hwhm > 0.0):
            raise ParameterError(f"Lorentzian hwhm must be positive, got {self.hwhm}")


def lorentz_value(omega, line: Lorentzian):
    """Evaluate L(omega; center, hwhm) = 2k / ((omega-center)^2 + k^2).

    Accepts a scalar or an array of frequencies; the peak value is
    2/hwhm and the half-maximum points sit at center +- hwhm.
    """
    d = np.asarray(omega, dtype=float) - line.center
    k = line.hwhm
    out = 2.0 * k / (d * d + k * k)
    if out.ndim == 0:
        return float(out)
    return out


def lorentz_convolve(shift: float, g1: float, g2: float) -> float:
    """Closed form of (1/2pi) * integral L(w, g1) L(shift - w, g2) dw.

    Two Lorentzians convolve to a Lorentzian of summed widths, so the
    result is L(shift, g1 + g2), exactly.
    """
    if not (g1 > 0.0 and g2 > 0.0):
        raise ParameterError(f"convolution widths must be positive, got {g1}, {g2}")
    return lorentz_value(shift, Lorentzian(0.0, g1 + g2))


@dataclass(frozen=True)
class LorentzProduct:
    """An ordered product of 1 to 4 Lorentzian factors of one variable."""

    factors: tuple[Lorentzian, ...]

    def __post_init__(self):
        if not 1 <= len(self.factors) <= 4:
            raise ParameterError(
                f"LorentzProduct supports 1..4 factors, got {len(self.factors)}"
            )

    def value(self, omega):
        """Pointwise product of the factors at ``omega`` (scalar or array)."""
        out = lorentz_value(omega, self.factors[0])
        for line in self.factors[1:]:
            out = out * lorentz_value(omega, line)
        return out

    @property
    def width_sum(self) -> float:
        return sum(line.hwhm for line in self.factors)


def product(*center_width_pairs: tuple[float, float]) -> LorentzProduct:
    """Shorthand: ``product((c1, k1), (c2, k2), ...)``."""
    return LorentzProduct(tuple(Lorentzian(c, k) for c, k in center_width_pairs))


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances for the adaptive infinite-axis quadrature."""

    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_subdivisions: int = 200
    domain_half_width_multiplier: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ParameterError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ParameterError("max_subdivisions must be at least 1")
        if not self.domain_half_width_multiplier > 0.0:
            raise ParameterError("domain_half_width_multiplier must be positive")


DEFAULT_QUADRATURE = QuadratureSettings()


class IntegralEstimate(NamedTuple):
    value: float
    error: float


def adaptive_integral(
    f: Callable[[float], float],
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> IntegralEstimate:
    """Adaptive quadrature of ``f`` over the whole real axis.

    The substitution w = m * tan(u) maps the axis onto (-pi/2, pi/2), so
    rational tails (decay at least 1/w^2) are integrated without any
    truncation cutoff; ``m`` is ``settings.domain_half_width_multiplier``.
    Returns the estimate and its error bound, or raises
    :class:`ConvergenceError` when the requested tolerance cannot be met
    within ``max_subdivisions``.
    """
    m = settings.domain_half_width_multiplier

    def transformed(u: float) -> float:
        t = math.tan(u)
        return f(m * t) * m * (1.0 + t * t)

    out = quad(
        transformed,
        -0.5 * math.pi,
        0.5 * math.pi,
        epsabs=settings.abs_tol,
        epsrel=settings.rel_tol,
        limit=settings.max_subdivisions,
        full_output=True,
    )
    value, error = out[0], out[1]
    if len(out) > 3:
        raise ConvergenceError(
            f"adaptive integral did not converge: {out[3].strip()}",
            estimate=value,
            error_bound=error,
        )
    if error > max(settings.abs_tol, settings.rel_tol * abs(value)) * 10.0:
        raise ConvergenceError(
            "adaptive integral error bound exceeds the requested tolerance",
            estimate=value,
            error_bound=error,
        )
    return IntegralEstimate(value, error)


class _NearDegeneratePoles(Exception):
    """Internal: distinct poles too close for a stable residue sum."""


def _group_poles(poles: Sequence[complex], tol: float) -> list[list]:
    """Cluster poles within ``tol`` of each other into [location, multiplicity]."""
    groups: list[list] = []
    for p in poles:
        for g in groups:
            if abs(p - g[0]) <= tol:
                g[0] = (g[0] * g[1] + p) / (g[1] + 1)
                g[1] += 1
                break
        else:
            groups.append([p, 1])
    return groups


def _half_plane_sum(
    centers: Sequence[float],
    widths: Sequence[float],
    tau: float,
) -> complex:
    """Sum of residues needed for (1/2pi) * integral prod_i L(w - c_i, k_i) e^{-i w tau} dw.

    For tau >= 0 the contour closes in the lower half-plane; for tau == 0
    either closure works and the lower one is kept.  Raises
    :class:`_NearDegeneratePoles` when two distinct pole clusters nearly
    coincide (catastrophic cancellation territory); exactly repeated
    poles are handled through their multiplicity.
    """
    width_sum = float(sum(widths))
    group_tol = GROUP_FACTOR * width_sum
    near_tol = NEAR_DEGENERATE_FACTOR * width_sum

    lower = [complex(c, -k) for c, k in zip(centers, widths)]
    upper = [complex(c, +k) for c, k in zip(centers, widths)]
    lower_groups = _group_poles(lower, group_tol)
    upper_groups = _group_poles(upper, group_tol)

    for i in range(len(lower_groups)):
        for j in range(i + 1, len(lower_groups)):
            if abs(lower_groups[i][0] - lower_groups[j][0]) < near_tol:
                raise _NearDegeneratePoles

    prefactor = 1.0
    for k in widths:
        prefactor *= 2.0 * k

    all_groups = lower_groups + upper_groups
    total = 0.0 + 0.0j
    for pole, mult in lower_groups:
        others = [(q, mq) for q, mq in all_groups if q is not pole]
        # H(z) = C e^{-i z tau} prod (z - q)^{-mq}; residue = H^{(m-1)}(pole)/(m-1)!
        h0 = prefactor * cmath.exp(-1j * pole * tau)
        for q, mq in others:
            h0 /= (pole - q) ** mq
        if mult == 1:
            total += h0
            continue
        # log-derivative of H at the pole: s(z) = -i tau - sum mq/(z - q)
        s = [complex(0.0, -tau) - sum(mq / (pole - q) for q, mq in others)]
        for j in range(1, mult - 1):
            fact = math.factorial(j) * (-1.0) ** (j + 1)
            s.append(fact * sum(mq / (pole - q) ** (j + 1) for q, mq in others))
        derivs = [h0]
        for n in range(mult - 1):
            nxt = sum(
                math.comb(n, k) * derivs[k] * s[n - k] for k in range(n + 1)
            )
            derivs.append(nxt)
        total += derivs[mult - 1] / math.factorial(mult - 1)
    # closing downward turns the contour clockwise: -2pi i * sum, and the
    # 1/2pi normalization leaves -i * sum
    return -1j * total


@dataclass(frozen=True)
class ProductIntegral:
    """Value of a Lorentz-product integral plus how it was obtained."""

    value: float
    method: str  # "residue" or "quadrature"
    error_estimate: float
    degenerate_fallback: bool

    def __float__(self) -> float:
        return self.value


def lorentz_product_integral(
    prod: LorentzProduct,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> ProductIntegral:
    """Exact (1/2pi) * integral over the real axis of a Lorentzian product.

    The residue sum over one half-plane is exact for distinct poles and
    handles repeated poles through derivatives of the reduced product.
    Two *distinct* poles within ``NEAR_DEGENERATE_FACTOR`` times the
    summed widths of each other would cancel catastrophically, so that
    case falls back to the adaptive quadrature and is flagged on the
    returned record.
    """
    centers = [line.center for line in prod.factors]
    widths = [line.hwhm for line in prod.factors]
    try:
        total = _half_plane_sum(centers, widths, 0.0)
    except _NearDegeneratePoles:
        warnings.warn(
            "near-coincident poles: falling back to adaptive quadrature",
            DegeneratePolesWarning,
            stacklevel=2,
        )
        est = adaptive_integral(lambda w: prod.value(w) / TWO_PI, settings)
        return ProductIntegral(est.value, "quadrature", est.error, True)
    # cancellation-aware round-off estimate
    scale = abs(total.real) + abs(total.imag) + 1e-300
    err = 16.0 * np.finfo(float).eps * scale
    return ProductIntegral(total.real, "residue", err, False)


def lorentz_product_transform(
    prod: LorentzProduct,
    tau: float,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> complex:
    """(1/2pi) * integral prod_i L(w - c_i, k_i) e^{-i w tau} dw for tau >= 0.

    Exact residue evaluation; the same near-degeneracy fallback as
    :func:`lorentz_product_integral`, done with the Fourier-weighted
    quadrature of :func:`lorentz_transform_quadrature`.
    """
    if tau < 0.0:
        raise ParameterError("transform lag must be nonnegative; use conjugation for tau < 0")
    centers = [line.center for line in prod.factors]
    widths = [line.hwhm for line in prod.factors]
    try:
        return complex(_half_plane_sum(centers, widths, float(tau)))
    except _NearDegeneratePoles:
        warnings.warn(
            "near-coincident poles: transform falls back to adaptive quadrature",
            DegeneratePolesWarning,
            stacklevel=2,
        )
        return lorentz_transform_quadrature(prod, tau, settings)


def lorentz_transform_quadrature(
    prod: LorentzProduct,
    tau: float,
    settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> complex:
    """Numerical route for the transform, independent of the residue path.

    Splits the axis at zero and hands each oscillatory half-line integral
    to the Fourier-weighted adaptive quadrature (cycle summation with
    extrapolation), so no truncation cutoff enters.
    """
    if tau < 0.0:
        raise ParameterError("transform lag must be nonnegative")
    if tau == 0.0:
        return complex(adaptive_integral(lambda w: prod.value(w) / TWO_PI, settings).value)

    def even_part(w: float) -> float:
        return prod.value(w) + prod.value(-w)

    def odd_part(w: float) -> float:
        return prod.value(w) - prod.value(-w)

    eps = max(settings.abs_tol, 1e-11)
    re = quad(even_part, 0.0, np.inf, weight="cos", wvar=tau, epsabs=eps, limlst=200)[0]
    im = quad(odd_part, 0.0, np.inf, weight="sin", wvar=tau, epsabs=eps, limlst=200)[0]
    return complex(re, -im) / TWO_PI


def map_over_omega(fn: Callable[[float], float], omega):
    """Apply a scalar frequency function over a scalar or array argument."""
    arr = np.asarray(omega, dtype=float)
    if arr.ndim == 0:
        return fn(float(arr))
    flat = np.array([fn(float(w)) for w in arr.ravel()])
    return flat.reshape(arr.shape)
