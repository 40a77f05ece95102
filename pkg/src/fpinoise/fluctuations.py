"""Photon-number and power fluctuation spectra, inside and outside the cavity.

In-cavity photon-number noise splits into a classical and a quantum
piece,

    d2n(w) = A^2 K0(w) + A K1(w),       A = p_in kappa1 / kappa_t,

where K0 is the self-correlation of the unit intracavity line shape
s(w) = L(w, gamma_l) L(w - delta, kappa_t) and K1 correlates s with the
mode commutator density (quantum noise in the cavity is colored).
Outside, the quantum noise is white: the transmitted and reflected power
fluctuation spectra are the self-correlations of the respective field
spectra plus a flat floor equal to the mean power,

    d2p(w) = (1/2pi) * integral p(w' - w) p(w') dw'  +  p.

All integrals are rational and evaluated exactly on the residue engine;
a tabulated-convolution route over arbitrary grids provides a second,
independent path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cavity import (
    FpiParams,
    SpectrumGrid,
    mean_photon_number,
    reflected_power,
    transmitted_power,
)
from .errors import CoverageError, ParameterError
from .lorentz import (
    TWO_PI,
    Lorentzian,
    lorentz_product_integral,
    lorentz_value,
    map_over_omega,
    product,
)
from .source import SourceParams, source_linewidth

# Acceptable truncated tail mass, as a fraction of the total integrand
# mass, before a tabulated convolution refuses to answer.  Tails up to
# this size are handled by the analytic 1/w^2 tail correction; beyond it
# the tail model itself is no longer trustworthy.
_TAIL_FRACTION = 2e-3


@dataclass(frozen=True)
class SpectrumDecomposition:
    """A fluctuation spectrum on a grid, split by noise origin.

    ``classical`` collects the field self-beat part, ``quantum`` the
    colored in-cavity quantum part (identically zero for free-space
    spectra, whose quantum noise is the flat ``white_floor``).  The
    physical spectrum is ``total = classical + quantum + white_floor``.
    """

    omegas: np.ndarray
    classical: np.ndarray
    quantum: np.ndarray
    white_floor: float = 0.0

    def __post_init__(self):
        omegas = np.asarray(self.omegas, dtype=float)
        classical = np.asarray(self.classical, dtype=float)
        quantum = np.asarray(self.quantum, dtype=float)
        if not (omegas.shape == classical.shape == quantum.shape) or omegas.ndim != 1:
            raise ParameterError("decomposition arrays must be matching 1-d arrays")
        if self.white_floor < 0.0:
            raise ParameterError("white_floor must be nonnegative")
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "classical", classical)
        object.__setattr__(self, "quantum", quantum)

    @property
    def colored(self) -> np.ndarray:
        """Frequency-dependent part, without the white floor."""
        return self.classical + self.quantum

    @property
    def total(self) -> np.ndarray:
        return self.classical + self.quantum + self.white_floor


def _amplitude(fpi: FpiParams, src: SourceParams) -> float:
    return src.p_in * fpi.kappa1 / fpi.kappa_t


def classical_noise_kernel(omega, fpi: FpiParams, src: SourceParams):
    """Self-correlation kernel of the intracavity line shape.

    K0(w) = (1/2pi) * integral s(u - w) s(u) du with
    s(u) = L(u, gamma_l) L(u - delta, kappa_t).  Even in w; carries the
    self-beat peak at w = 0 and beat sidebands at w = +-delta.
    """
    g = source_linewidth(src)
    kt, d = fpi.kappa_t, fpi.delta

    def kernel(w: float) -> float:
        prod = product((w, g), (w + d, kt), (0.0, g), (d, kt))
        return lorentz_product_integral(prod).value

    return map_over_omega(kernel, omega)


def quantum_noise_kernel(omega, fpi: FpiParams, src: SourceParams):
    """Correlation kernel of the line shape with the mode commutator density.

    K1(w) = (1/4pi) * integral [s(u - w) + s(u + w)] L(u - delta, kappa_t) du,
    even in w by construction; the colored quantum contribution peaks
    near the mode-drive beat at w = delta.
    """
    g = source_linewidth(src)
    kt, d = fpi.kappa_t, fpi.delta

    def kernel(w: float) -> float:
        left = lorentz_product_integral(product((w, g), (w + d, kt), (d, kt))).value
        right = lorentz_product_integral(product((-w, g), (d - w, kt), (d, kt))).value
        return 0.5 * (left + right)

    return map_over_omega(kernel, omega)


def reflection_cross_kernel(omega, fpi: FpiParams, src: SourceParams):
    """Drive-line/mode cross kernel entering the reflected-power noise.

    K2(w) = (1/2pi) * integral L(u - w, gamma_l) L(u, gamma_l)
            [L(u - w - delta, kappa_t) + L(u - delta, kappa_t)] du, even in w.
    """
    g = source_linewidth(src)
    kt, d = fpi.kappa_t, fpi.delta

    def kernel(w: float) -> float:
        a = lorentz_product_integral(product((w, g), (0.0, g), (w + d, kt))).value
        b = lorentz_product_integral(product((w, g), (0.0, g), (d, kt))).value
        return a + b

    return map_over_omega(kernel, omega)


def cavity_fluct_components(omega, fpi: FpiParams, src: SourceParams):
    """Classical and quantum parts of the in-cavity photon-number noise."""
    a = _amplitude(fpi, src)
    classical = a * a * classical_noise_kernel(omega, fpi, src)
    quantum = a * quantum_noise_kernel(omega, fpi, src)
    return classical, quantum


def cavity_fluctuation_spectrum(
    omegas, fpi: FpiParams, src: SourceParams
) -> SpectrumDecomposition:
    """Photon-number fluctuation spectrum d2n(w) on a grid.

    The classical part integrates to n^2, the quantum part to n, so the
    variance is the thermal-statistics value n(n+1).
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    classical, quantum = cavity_fluct_components(omegas, fpi, src)
    return SpectrumDecomposition(omegas, classical, quantum, white_floor=0.0)


def transmitted_fluct_components(omega, fpi: FpiParams, src: SourceParams):
    """Colored part and white floor of the transmitted power noise.

    The colored part is the self-correlation of p_t(w) = 2 kappa2 n(w),
    i.e. (2 kappa2)^2 times the classical in-cavity part; the quantum
    noise is the flat floor p_t.
    """
    a = _amplitude(fpi, src)
    scale = (2.0 * fpi.kappa2) ** 2
    colored = scale * a * a * classical_noise_kernel(omega, fpi, src)
    return colored, transmitted_power(fpi, src)


def transmitted_fluct_spectrum(
    omegas, fpi: FpiParams, src: SourceParams
) -> SpectrumDecomposition:
    """Transmitted power fluctuation spectrum d2p_t(w) on a grid."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    colored, floor = transmitted_fluct_components(omegas, fpi, src)
    return SpectrumDecomposition(
        omegas, colored, np.zeros_like(colored), white_floor=floor
    )


def reflected_fluct_components(omega, fpi: FpiParams, src: SourceParams):
    """Colored part and white floor of the reflected power noise.

    Self-correlation of the reflected spectrum expands into the drive
    self-beat L(w, 2 gamma_l), minus the cross kernel, plus the removed
    share beating with itself:

        p_in^2 [L(w, 2 gamma_l) - B K2(w) + B^2 K0(w)],
        B = 2 kappa1 (kappa2 + kappa0) / kappa_t,

    with white floor p_r.  Nonnegative pointwise, being a self-
    correlation of a nonnegative spectrum.
    """
    g = source_linewidth(src)
    b = 2.0 * fpi.kappa1 * (fpi.kappa2 + fpi.kappa0) / fpi.kappa_t
    self_beat = lorentz_value(omega, Lorentzian(0.0, 2.0 * g))
    colored = src.p_in**2 * (
        self_beat
        - b * reflection_cross_kernel(omega, fpi, src)
        + b * b * classical_noise_kernel(omega, fpi, src)
    )
    return colored, reflected_power(fpi, src)


def reflected_fluct_spectrum(
    omegas, fpi: FpiParams, src: SourceParams
) -> SpectrumDecomposition:
    """Reflected power fluctuation spectrum d2p_r(w) on a grid."""
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    colored, floor = reflected_fluct_components(omegas, fpi, src)
    return SpectrumDecomposition(
        omegas, colored, np.zeros_like(colored), white_floor=floor
    )


def _check_coverage(grid: SpectrumGrid, label: str) -> None:
    """Reject tabulations whose 1/w^2 tails carry non-negligible mass."""
    omegas, values = grid.omegas, grid.values
    total = abs(np.trapezoid(values, omegas)) / TWO_PI
    if total == 0.0:
        return
    for edge_value, edge_omega in ((values[0], omegas[0]), (values[-1], omegas[-1])):
        if edge_omega == 0.0:
            raise CoverageError(
                f"{label}: grid must extend well past the spectrum support",
                required_half_width=math.inf,
            )
        # rational-tail model p ~ a/w^2 beyond the edge
        tail = abs(edge_value) * abs(edge_omega) / TWO_PI
        if tail > _TAIL_FRACTION * total:
            required = abs(edge_omega) * tail / (_TAIL_FRACTION * total)
            raise CoverageError(
                f"{label}: estimated tail mass beyond |w|={abs(edge_omega):g} is "
                f"{tail:.3e} ({tail / total:.2e} of the total); extend the grid "
                f"to roughly |w| <= {required:.3g}",
                required_half_width=required,
            )


def _shifted(grid: SpectrumGrid, shift: float) -> np.ndarray:
    """Values of the tabulated spectrum at omegas + shift, zero outside."""
    return np.interp(grid.omegas + shift, grid.omegas, grid.values, left=0.0, right=0.0)


def _tail_mass(grid: SpectrumGrid) -> float:
    """Integrated 1/w^2 tail model beyond both grid edges, under dw/2pi."""
    left = abs(grid.values[0]) * abs(grid.omegas[0])
    right = abs(grid.values[-1]) * abs(grid.omegas[-1])
    return (left + right) / TWO_PI


def general_freespace_fluct_spectrum(p_spec: SpectrumGrid, omega: float):
    """Free-space power noise from a tabulated field spectrum.

    Returns ``(colored, white_floor)`` with
    colored = (1/2pi) * integral p(w' - omega) p(w') dw' evaluated by
    trapezoidal convolution on the grid, and white_floor the total
    power: the trapezoidal mass plus the analytic 1/w^2 tail beyond the
    grid edges.  (The tails contribute to the colored part only through
    tail-times-tail overlap, negligible at the accepted coverage.)
    Raises :class:`CoverageError` when the grid truncates the integrand
    beyond what the tail model can absorb.
    """
    _check_coverage(p_spec, "free-space fluctuation spectrum")
    colored = (
        np.trapezoid(_shifted(p_spec, -float(omega)) * p_spec.values, p_spec.omegas)
        / TWO_PI
    )
    floor = np.trapezoid(p_spec.values, p_spec.omegas) / TWO_PI + _tail_mass(p_spec)
    return colored, floor


def general_cavity_fluct_spectrum(
    n_spec: SpectrumGrid, c_spec: SpectrumGrid, omega: float
) -> float:
    """In-cavity photon-number noise from tabulated field and commutator spectra.

    Classical part: (1/2pi) * integral n(omega + w') n(w') dw'.
    Quantum part:   (1/4pi) * integral [n(w' + omega) + n(w' - omega)] c(w') dw'.
    Both are trapezoidal convolutions on the given grids; the commutator
    grid must match the field grid.
    """
    if not np.array_equal(n_spec.omegas, c_spec.omegas):
        raise ParameterError("field and commutator spectra must share one grid")
    _check_coverage(n_spec, "cavity fluctuation spectrum")
    _check_coverage(c_spec, "commutator spectrum")
    w = float(omega)
    classical = (
        np.trapezoid(_shifted(n_spec, w) * n_spec.values, n_spec.omegas) / TWO_PI
    )
    quantum = (
        np.trapezoid(
            (_shifted(n_spec, w) + _shifted(n_spec, -w)) * c_spec.values,
            n_spec.omegas,
        )
        / (2.0 * TWO_PI)
    )
    return classical + quantum


def variance_check_values(fpi: FpiParams, src: SourceParams):
    """Closed-form targets for the variance sum rules: (n^2, n, n(n+1))."""
    n = mean_photon_number(fpi, src)
    return n * n, n, n * (n + 1.0)
