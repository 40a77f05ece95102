"""Figure presets, parameter sweeps and the CLI product builders.

The ``fig*`` ids reproduce the bundled reference study: mirror rates
0.5/0.5, absorption 0.1, detuning 5 and the drive-power sweep
p_in/kappa_l in {0.1, 1.5, 5, 50}, everything in kappa_l units.  Each
builder returns a :class:`~fpinoise.output.FigureDataset` whose
metadata echoes the full configuration.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
from scipy.integrate import quad

from . import __version__
from .autocorr import cavity_autocorr, reflected_autocorr, transmitted_autocorr
from .cavity import (
    FpiParams,
    absorbed_fraction,
    absorbed_spectrum,
    cavity_field_spectrum,
    commutator_spectrum,
    mean_photon_number,
    reflected_spectrum,
    reflection_coefficient,
    reflection_coefficient_hwhm,
    transmission_coefficient,
    transmission_coefficient_hwhm,
    transmitted_spectrum,
)
from .config import SWEEP_POWERS, RunConfig, config_echo
from .errors import ParameterError
from .fluctuations import (
    cavity_fluct_components,
    cavity_fluctuation_spectrum,
    reflected_fluct_spectrum,
    transmitted_fluct_spectrum,
)
from .lorentz import KAPPA_L_RAD_PER_SEC
from .oracle import (
    intensity_fluct_spectrum,
    simulate,
    stationary_input_power,
    stationary_photon_number,
)
from .output import FigureDataset
from .source import SourceParams, input_spectrum, source_linewidth, source_regime

FIGURE_IDS = (
    "fig3a",
    "fig3b",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig4d",
    "fig5a",
    "fig5b",
    "fig6a",
    "fig6b",
    "fig6c",
    "fig6d",
    "fig7a",
    "fig7b",
    "fig8a",
    "fig8b",
    "fig8c",
    "fig8d",
    "fig9",
)

_PANEL_POWER = dict(zip("abcd", SWEEP_POWERS))


def _power_tag(p: float) -> str:
    return f"{p:g}"


def base_metadata(cfg: RunConfig, **extra) -> dict[str, object]:
    meta: dict[str, object] = {
        "generator": f"fpinoise {__version__}",
        "kappa_l_rad_per_s": f"{KAPPA_L_RAD_PER_SEC:.3e}",
        "units": "frequencies and rates in kappa_l, times in 1/kappa_l",
    }
    meta.update(config_echo(cfg))
    meta["source.regime"] = source_regime(cfg.source)
    meta.update(extra)
    return meta


def _sweep_source(cfg: RunConfig, p_in: float) -> SourceParams:
    return SourceParams(p_in=p_in, gamma_max=cfg.source.gamma_max)


def energy_split_fraction(fpi: FpiParams, src: SourceParams) -> float:
    """Fraction of the transmitted energy below the inter-peak point delta/2.

    Quadrature of the transmitted density over (-inf, delta/2] against
    the closed-form total; requires a positive detuning so the split
    point separates the drive-line and mode peaks.
    """
    if not fpi.delta > 0.0:
        raise ParameterError("energy split needs a positive detuning")
    total = mean_photon_number(fpi, src)
    if total == 0.0:
        return 0.0

    def density(w: float) -> float:
        return cavity_field_spectrum(w, fpi, src) / (2.0 * math.pi)

    cut = -40.0 * (fpi.kappa_t + source_linewidth(src) + abs(fpi.delta))
    tail, _ = quad(density, -np.inf, cut)
    body, _ = quad(density, cut, 0.5 * fpi.delta, points=[0.0], limit=200)
    return (tail + body) / total


def energy_split_report(cfg: RunConfig) -> FigureDataset:
    """Transmitted-energy split fractions for the standard power sweep."""
    powers = [p for p in SWEEP_POWERS if p > 0.5]  # 1.5, 5, 50
    fractions = [
        energy_split_fraction(cfg.fpi, _sweep_source(cfg, p)) for p in powers
    ]
    return FigureDataset(
        "energy_split",
        {"p_in": np.array(powers), "fraction_below_half_detuning": np.array(fractions)},
        base_metadata(cfg),
    )


def _fig3a(cfg: RunConfig) -> FigureDataset:
    powers = np.linspace(0.0, 50.0, 501)
    photon = np.array(
        [mean_photon_number(cfg.fpi, _sweep_source(cfg, p)) for p in powers]
    )
    widths = np.array([source_linewidth(_sweep_source(cfg, p)) for p in powers])
    return FigureDataset(
        "fig3a",
        {"p_in": powers, "photon_number": photon, "gamma_l": widths},
        base_metadata(cfg),
    )


def _fig3b(cfg: RunConfig) -> FigureDataset:
    deltas = np.linspace(-15.0, 15.0, 601)
    finite_src = _sweep_source(cfg, 1.0)
    g_finite = source_linewidth(finite_src)
    r_fin = np.empty_like(deltas)
    t_fin = np.empty_like(deltas)
    r_mono = np.empty_like(deltas)
    t_mono = np.empty_like(deltas)
    for i, d in enumerate(deltas):
        fpi = replace(cfg.fpi, delta=float(d))
        r_fin[i] = reflection_coefficient_hwhm(fpi, g_finite)
        t_fin[i] = transmission_coefficient_hwhm(fpi, g_finite)
        r_mono[i] = reflection_coefficient_hwhm(fpi, 0.0)
        t_mono[i] = transmission_coefficient_hwhm(fpi, 0.0)
    return FigureDataset(
        "fig3b",
        {
            "delta": deltas,
            "reflection_finite": r_fin,
            "transmission_finite": t_fin,
            "reflection_mono": r_mono,
            "transmission_mono": t_mono,
        },
        base_metadata(cfg, finite_line_hwhm=g_finite),
    )


def _fig4(cfg: RunConfig, panel: str) -> FigureDataset:
    p_in = _PANEL_POWER[panel]
    src = _sweep_source(cfg, p_in)
    omegas = cfg.omega_grid.build()
    return FigureDataset(
        f"fig4{panel}",
        {
            "omega": omegas,
            "reflected": reflected_spectrum(omegas, cfg.fpi, src),
            "transmitted": transmitted_spectrum(omegas, cfg.fpi, src),
            "input": input_spectrum(omegas, src),
        },
        base_metadata(cfg, p_in=p_in, gamma_l=source_linewidth(src)),
    )


def _fig5a(cfg: RunConfig) -> FigureDataset:
    omegas = cfg.omega_grid.build()
    series: dict[str, np.ndarray] = {"omega": omegas}
    for p in SWEEP_POWERS:
        src = _sweep_source(cfg, p)
        series[f"n_{_power_tag(p)}"] = cavity_field_spectrum(omegas, cfg.fpi, src)
    return FigureDataset("fig5a", series, base_metadata(cfg))


def _fig5b(cfg: RunConfig) -> FigureDataset:
    omegas = cfg.omega_grid.build()
    series: dict[str, np.ndarray] = {"omega": omegas}
    for p in SWEEP_POWERS:
        spec = cavity_fluctuation_spectrum(omegas, cfg.fpi, _sweep_source(cfg, p))
        series[f"d2n_{_power_tag(p)}"] = spec.total
    return FigureDataset("fig5b", series, base_metadata(cfg))


def _fig6(cfg: RunConfig, panel: str) -> FigureDataset:
    p_in = _PANEL_POWER[panel]
    omegas = cfg.omega_grid.build()
    spec = cavity_fluctuation_spectrum(omegas, cfg.fpi, _sweep_source(cfg, p_in))
    return FigureDataset(
        f"fig6{panel}",
        {
            "omega": omegas,
            "total": spec.total,
            "classical": spec.classical,
            "quantum": spec.quantum,
        },
        base_metadata(cfg, p_in=p_in),
    )


def _fig7(cfg: RunConfig, which: str) -> FigureDataset:
    omegas = cfg.omega_grid.build()
    series: dict[str, np.ndarray] = {"omega": omegas}
    floors: dict[str, object] = {}
    build = transmitted_fluct_spectrum if which == "a" else reflected_fluct_spectrum
    label = "d2pt" if which == "a" else "d2pr"
    for p in SWEEP_POWERS:
        spec = build(omegas, cfg.fpi, _sweep_source(cfg, p))
        series[f"{label}_{_power_tag(p)}"] = spec.total
        floors[f"white_floor_{_power_tag(p)}"] = spec.white_floor
    return FigureDataset(f"fig7{which}", series, base_metadata(cfg, **floors))


def _fig8(cfg: RunConfig, panel: str) -> FigureDataset:
    p_in = _PANEL_POWER[panel]
    taus = cfg.tau_grid.build()
    ac = cavity_autocorr(cfg.fpi, _sweep_source(cfg, p_in), taus)
    norm = ac.values[0] if ac.values[0] > 0.0 else 1.0
    return FigureDataset(
        f"fig8{panel}",
        {
            "tau": taus,
            "total": ac.values / norm,
            "classical": ac.classical / norm,
            "quantum": ac.quantum / norm,
        },
        base_metadata(cfg, p_in=p_in, normalization=float(norm)),
    )


def _fig9(cfg: RunConfig) -> FigureDataset:
    taus = cfg.tau_grid.build()
    series: dict[str, np.ndarray] = {"tau": taus}
    weights: dict[str, object] = {}
    for p in SWEEP_POWERS:
        ac = transmitted_autocorr(cfg.fpi, _sweep_source(cfg, p), taus, normalized=True)
        series[f"d2pt_norm_{_power_tag(p)}"] = ac.values
        weights[f"delta_weight_{_power_tag(p)}"] = ac.delta_weight
    return FigureDataset("fig9", series, base_metadata(cfg, **weights))


def run_figure(figure_id: str, cfg: RunConfig) -> FigureDataset:
    """Build the dataset behind one bundled figure preset."""
    if figure_id not in FIGURE_IDS:
        raise ParameterError(
            f"unknown figure id '{figure_id}'; choose from {', '.join(FIGURE_IDS)}"
        )
    if figure_id == "fig3a":
        return _fig3a(cfg)
    if figure_id == "fig3b":
        return _fig3b(cfg)
    if figure_id.startswith("fig4"):
        return _fig4(cfg, figure_id[-1])
    if figure_id == "fig5a":
        return _fig5a(cfg)
    if figure_id == "fig5b":
        return _fig5b(cfg)
    if figure_id.startswith("fig6"):
        return _fig6(cfg, figure_id[-1])
    if figure_id.startswith("fig7"):
        return _fig7(cfg, figure_id[-1])
    if figure_id.startswith("fig8"):
        return _fig8(cfg, figure_id[-1])
    return _fig9(cfg)


def spectra_product(cfg: RunConfig) -> FigureDataset:
    """Field spectra (input, in-cavity, commutator, three output ports)."""
    omegas = cfg.omega_grid.build()
    src = cfg.source
    return FigureDataset(
        "spectra",
        {
            "omega": omegas,
            "input": input_spectrum(omegas, src),
            "cavity": cavity_field_spectrum(omegas, cfg.fpi, src),
            "commutator": commutator_spectrum(omegas, cfg.fpi),
            "transmitted": transmitted_spectrum(omegas, cfg.fpi, src),
            "absorbed": absorbed_spectrum(omegas, cfg.fpi, src),
            "reflected": reflected_spectrum(omegas, cfg.fpi, src),
        },
        base_metadata(cfg),
    )


def fluct_product(cfg: RunConfig) -> FigureDataset:
    """Fluctuation spectra of photon number and of the two output powers."""
    omegas = cfg.omega_grid.build()
    cav = cavity_fluctuation_spectrum(omegas, cfg.fpi, cfg.source)
    tr = transmitted_fluct_spectrum(omegas, cfg.fpi, cfg.source)
    rf = reflected_fluct_spectrum(omegas, cfg.fpi, cfg.source)
    return FigureDataset(
        "fluct",
        {
            "omega": omegas,
            "d2n_total": cav.total,
            "d2n_classical": cav.classical,
            "d2n_quantum": cav.quantum,
            "d2pt_total": tr.total,
            "d2pt_colored": tr.colored,
            "d2pr_total": rf.total,
            "d2pr_colored": rf.colored,
        },
        base_metadata(
            cfg,
            d2pt_white_floor=tr.white_floor,
            d2pr_white_floor=rf.white_floor,
        ),
    )


def autocorr_product(cfg: RunConfig) -> FigureDataset:
    """Lag autocorrelations for the cavity and the two output powers."""
    taus = cfg.tau_grid.build()
    cav = cavity_autocorr(cfg.fpi, cfg.source, taus)
    tr = transmitted_autocorr(cfg.fpi, cfg.source, taus)
    tr_norm = transmitted_autocorr(cfg.fpi, cfg.source, taus, normalized=True)
    rf, fit = reflected_autocorr(cfg.fpi, cfg.source, taus)
    return FigureDataset(
        "autocorr",
        {
            "tau": taus,
            "cavity_total": cav.values,
            "cavity_classical": cav.classical,
            "cavity_quantum": cav.quantum,
            "transmitted": tr.values,
            "transmitted_norm": tr_norm.values,
            "reflected": rf.values,
        },
        base_metadata(
            cfg,
            transmitted_delta_weight=tr.delta_weight,
            reflected_delta_weight=rf.delta_weight,
            reflected_exp_rate=fit.rate,
            reflected_exp_rms=fit.rms_deviation,
        ),
    )


def coeffs_product(cfg: RunConfig) -> FigureDataset:
    """Scalar summary: linewidth, photon number and the energy fractions."""
    fpi, src = cfg.fpi, cfg.source
    return FigureDataset(
        "coeffs",
        {
            "gamma_l": np.array([source_linewidth(src)]),
            "photon_number": np.array([mean_photon_number(fpi, src)]),
            "reflection": np.array([reflection_coefficient(fpi, src)]),
            "transmission": np.array([transmission_coefficient(fpi, src)]),
            "absorbed_fraction": np.array([absorbed_fraction(fpi, src)]),
        },
        base_metadata(cfg),
    )


def oracle_product(cfg: RunConfig) -> FigureDataset:
    """Stochastic estimate of the classical noise next to the analytic curve."""
    traj = simulate(cfg.fpi, cfg.source, cfg.sim)
    spec = intensity_fluct_spectrum(traj, cfg.sim)
    analytic = cavity_fluct_components(spec.omegas, cfg.fpi, cfg.source)[0]
    mask = np.abs(spec.omegas) <= 10.0
    scale = math.sqrt(float(np.mean(analytic[mask] ** 2)))
    rms = (
        math.sqrt(float(np.mean((spec.values[mask] - analytic[mask]) ** 2))) / scale
        if scale > 0.0
        else 0.0
    )
    power_mean, power_err = stationary_input_power(traj)
    photon_mean, photon_err = stationary_photon_number(traj)
    return FigureDataset(
        "oracle",
        {
            "omega": spec.omegas,
            "estimated": spec.values,
            "analytic_classical": analytic,
        },
        base_metadata(
            cfg,
            rms_deviation_central=rms,
            input_power_mean=power_mean,
            input_power_stderr=power_err,
            photon_number_mean=photon_mean,
            photon_number_stderr=photon_err,
            photon_number_analytic=mean_photon_number(cfg.fpi, cfg.source),
        ),
    )


def sweep_product(cfg: RunConfig) -> FigureDataset:
    """Scalar summaries over the standard drive-power sweep."""
    rows = {
        "p_in": [],
        "gamma_l": [],
        "photon_number": [],
        "reflection": [],
        "transmission": [],
        "absorbed_fraction": [],
        "energy_split": [],
    }
    for p in SWEEP_POWERS:
        src = _sweep_source(cfg, p)
        rows["p_in"].append(p)
        rows["gamma_l"].append(source_linewidth(src))
        rows["photon_number"].append(mean_photon_number(cfg.fpi, src))
        rows["reflection"].append(reflection_coefficient(cfg.fpi, src))
        rows["transmission"].append(transmission_coefficient(cfg.fpi, src))
        rows["absorbed_fraction"].append(absorbed_fraction(cfg.fpi, src))
        rows["energy_split"].append(
            energy_split_fraction(cfg.fpi, src) if cfg.fpi.delta > 0 else math.nan
        )
    return FigureDataset(
        "sweep",
        {name: np.array(col) for name, col in rows.items()},
        base_metadata(cfg),
    )


PRODUCT_BUILDERS = {
    "spectra": spectra_product,
    "fluct": fluct_product,
    "autocorr": autocorr_product,
    "coeffs": coeffs_product,
    "oracle": oracle_product,
    "sweep": sweep_product,
}
