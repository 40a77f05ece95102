"""Time-domain stochastic validation of the classical (colored) noise terms.

The drive is modeled as a complex Ornstein-Uhlenbeck process x(t) with
relaxation rate gamma_l and stationary power <|x|^2> = p_in, so its
spectrum is exactly p_in * L(w, gamma_l).  The cavity amplitude follows
the linear filter

    da/dt = -(i delta + kappa_t) a + sqrt(2 kappa1) x,

integrated with the exact exponential propagator (input held piecewise
constant over a step), and the intensity fluctuation spectrum of
|a(t)|^2 is estimated by averaged periodograms.  Being a classical
simulation, it reproduces the classical self-beat terms only; the
colored quantum contribution and the white floors are outside its reach
by construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter, welch

from .cavity import FpiParams, SpectrumGrid
from .errors import ConfigError, EstimatorVarianceWarning, ParameterError
from .source import SourceParams, source_linewidth


@dataclass(frozen=True)
class SimConfig:
    """Step size, length, ensemble size and seeding of a simulation run.

    Stability and stationarity constraints are checked against the
    physical rates in :func:`validate_sim_config`:
    dt <= 0.05 / max(gamma_l, kappa_t, |delta|) resolves the fastest
    scale, and burn_in >= 10 / (dt * min(gamma_l, kappa_t)) discards the
    pre-stationary transient.
    """

    dt: float = 0.01
    n_steps: int = 131072
    n_realizations: int = 48
    seed: int = 20260810
    burn_in: int = 8192

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ParameterError("dt must be positive")
        if self.n_steps < 2 or self.n_realizations < 1 or self.burn_in < 0:
            raise ParameterError("n_steps >= 2, n_realizations >= 1, burn_in >= 0 required")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must fit in 64 bits")


@dataclass(frozen=True)
class Trajectory:
    """Stationary section of an ensemble of simulated runs.

    ``input_amplitude`` and ``cavity_amplitude`` are complex arrays of
    shape (n_realizations, n_steps) sharing the time axis ``times``.
    """

    times: np.ndarray
    input_amplitude: np.ndarray
    cavity_amplitude: np.ndarray


def validate_sim_config(cfg: SimConfig, fpi: FpiParams, src: SourceParams) -> None:
    """Raise :class:`ConfigError` when the step or burn-in is inadequate."""
    g = source_linewidth(src)
    fastest = max(g, fpi.kappa_t, abs(fpi.delta))
    if cfg.dt > 0.05 / fastest:
        raise ConfigError(
            f"sim.dt = {cfg.dt:g} too coarse for the fastest rate {fastest:g}; "
            f"need dt <= {0.05 / fastest:g}"
        )
    slowest = min(g, fpi.kappa_t)
    needed = 10.0 / (cfg.dt * slowest)
    if cfg.burn_in < needed:
        raise ConfigError(
            f"sim.burn_in = {cfg.burn_in} too short to reach stationarity; "
            f"need at least {int(math.ceil(needed))} steps"
        )


def _stream(seed: int, realization: int) -> np.random.Generator:
    """Counter-based generator keyed by (seed, realization index)."""
    key = np.array([seed, realization], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def simulate(fpi: FpiParams, src: SourceParams, cfg: SimConfig) -> Trajectory:
    """Generate the stationary drive and cavity amplitudes.

    The drive update is the exact discrete-time Ornstein-Uhlenbeck
    solution (exponential decay plus an exactly scaled complex Gaussian
    increment), and the cavity update the exact exponential propagator
    with the drive held constant over each step; neither carries
    first-order step bias.  Fixed (seed, realization) keys make every
    trajectory bit-reproducible and realizations independent.
    """
    validate_sim_config(cfg, fpi, src)
    g = source_linewidth(src)
    lam = complex(fpi.kappa_t, fpi.delta)
    total = cfg.burn_in + cfg.n_steps

    decay = math.exp(-g * cfg.dt)
    step_std = math.sqrt(src.p_in * (1.0 - decay * decay)) if src.p_in > 0 else 0.0
    cavity_decay = np.exp(-lam * cfg.dt)
    drive_gain = math.sqrt(2.0 * fpi.kappa1) * (1.0 - cavity_decay) / lam

    x = np.empty((cfg.n_realizations, total), dtype=np.complex128)
    for r in range(cfg.n_realizations):
        rng = _stream(cfg.seed, r)
        noise = rng.standard_normal(2 * total)
        kicks = (noise[0::2] + 1j * noise[1::2]) * (step_std / math.sqrt(2.0))
        # x[n] = decay * x[n-1] + kick[n]
        x[r] = lfilter([1.0], [1.0, -decay], kicks)

    # a[n] = cavity_decay * a[n-1] + drive_gain * x[n-1]
    a = lfilter([0.0, drive_gain], [1.0, -cavity_decay], x, axis=1)

    times = np.arange(cfg.n_steps) * cfg.dt
    return Trajectory(
        times=times,
        input_amplitude=x[:, cfg.burn_in :],
        cavity_amplitude=a[:, cfg.burn_in :],
    )


def intensity_fluct_spectrum(
    traj: Trajectory,
    cfg: SimConfig,
    segment_length: int = 8192,
    signal: str = "cavity",
) -> SpectrumGrid:
    """Averaged-periodogram estimate of the intensity fluctuation spectrum.

    Welch estimate of the two-sided spectral density of
    I(t) = |amplitude|^2 - <|amplitude|^2>: the stationary mean is
    removed once over the whole ensemble (removing it per segment would
    notch the spectrum at zero frequency), then Hann-windowed segments
    with 50% overlap are averaged over segments and realizations.
    Returned in angular frequency with the (1/2pi) * integral dw
    normalization, directly comparable to the analytic classical terms.
    ``signal`` selects the cavity (default) or the input amplitude.
    """
    if signal not in ("cavity", "input"):
        raise ParameterError("signal must be 'cavity' or 'input'")
    amp = traj.cavity_amplitude if signal == "cavity" else traj.input_amplitude
    intensity = np.abs(amp) ** 2
    intensity = intensity - intensity.mean()
    n_steps = intensity.shape[1]
    segment_length = int(min(segment_length, n_steps))
    segments = traj.input_amplitude.shape[0] * max(
        (n_steps - segment_length // 2) // (segment_length // 2), 1
    )
    if segments < 8:
        warnings.warn(
            f"only {segments} periodogram segments; the estimate variance is high",
            EstimatorVarianceWarning,
            stacklevel=2,
        )
    freqs, psd = welch(
        intensity,
        fs=1.0 / cfg.dt,
        window="hann",
        nperseg=segment_length,
        noverlap=segment_length // 2,
        detrend=False,
        return_onesided=False,
        scaling="density",
        axis=1,
        average="mean",
    )
    mean_psd = psd.mean(axis=0)
    # fftshift puts the two-sided axis in increasing order; the density
    # in cyclic frequency equals the density in angular frequency under
    # the (1/2pi) dw measure, so only the axis is rescaled.
    omegas = 2.0 * math.pi * np.fft.fftshift(freqs)
    values = np.fft.fftshift(mean_psd)
    return SpectrumGrid(omegas, values)


def stationary_input_power(traj: Trajectory) -> tuple[float, float]:
    """Ensemble mean of |x|^2 and its standard error across realizations."""
    per_run = np.mean(np.abs(traj.input_amplitude) ** 2, axis=1)
    return float(per_run.mean()), float(per_run.std(ddof=1) / math.sqrt(per_run.size))


def stationary_photon_number(traj: Trajectory) -> tuple[float, float]:
    """Ensemble mean of |a|^2 and its standard error across realizations."""
    per_run = np.mean(np.abs(traj.cavity_amplitude) ** 2, axis=1)
    return float(per_run.mean()), float(per_run.std(ddof=1) / math.sqrt(per_run.size))
