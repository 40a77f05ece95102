"""Run configuration: defaults, key-value parsing and validation.

A configuration is a plain text document of ``key = value`` lines with
``#`` comments.  Dotted keys address nested records, e.g.::

    fpi.kappa1   = 0.5
    source.p_in  = 1.5
    grid.omega   = -10:15:2001
    outputs      = spectra, coeffs
    format       = csv

An empty document yields the default parameter set: mirror rates
0.5/0.5, absorption 0.1, detuning 5, maximum source linewidth 3 and
drive power 1.5, all in kappa_l units.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

import numpy as np

from .cavity import FpiParams
from .errors import ConfigError, ParameterError
from .oracle import SimConfig
from .source import SourceParams, source_linewidth

PRODUCTS = ("spectra", "fluct", "autocorr", "coeffs", "oracle", "sweep")
FORMATS = ("csv", "json")

# drive powers (in kappa_l units) used by the bundled figure presets
SWEEP_POWERS = (0.1, 1.5, 5.0, 50.0)


@dataclass(frozen=True)
class GridSpec:
    """A uniform grid given as start, stop and point count."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if not self.stop > self.start:
            raise ParameterError("grid stop must exceed start")
        if self.count < 2:
            raise ParameterError("grid needs at least 2 points")

    def build(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterError("grid spec must be 'start:stop:count'")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.count}"


DEFAULT_OMEGA_GRID = GridSpec(-10.0, 15.0, 2001)
DEFAULT_TAU_GRID = GridSpec(0.0, 12.0, 601)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs: physics, grids, products and output policy."""

    fpi: FpiParams = field(default_factory=FpiParams)
    source: SourceParams = field(default_factory=lambda: SourceParams(p_in=1.5))
    omega_grid: GridSpec = DEFAULT_OMEGA_GRID
    tau_grid: GridSpec = DEFAULT_TAU_GRID
    outputs: tuple[str, ...] = ("spectra", "fluct", "autocorr", "coeffs")
    format: str = "csv"
    out_dir: str = "out"
    sim: SimConfig = field(default_factory=SimConfig)

    def __post_init__(self):
        for name in self.outputs:
            if name not in PRODUCTS:
                raise ConfigError(
                    f"outputs: unknown product '{name}'; choose from {', '.join(PRODUCTS)}"
                )
        if self.format not in FORMATS:
            raise ConfigError(
                f"format: '{self.format}' is not supported; use one of {', '.join(FORMATS)}"
            )


def _set_nested(updates: dict, group: str, attr: str, value) -> None:
    updates.setdefault(group, {})[attr] = value


_FLOAT_KEYS = {
    "fpi.kappa1": ("fpi", "kappa1"),
    "fpi.kappa2": ("fpi", "kappa2"),
    "fpi.kappa0": ("fpi", "kappa0"),
    "fpi.delta": ("fpi", "delta"),
    "source.p_in": ("source", "p_in"),
    "source.gamma_max": ("source", "gamma_max"),
    "sim.dt": ("sim", "dt"),
}
_INT_KEYS = {
    "sim.n_steps": ("sim", "n_steps"),
    "sim.n_realizations": ("sim", "n_realizations"),
    "sim.burn_in": ("sim", "burn_in"),
    "seed": ("sim", "seed"),
}
_KNOWN_KEYS = sorted(
    list(_FLOAT_KEYS) + list(_INT_KEYS) + ["grid.omega", "grid.tau", "outputs", "format", "out_dir"]
)


def parse_config(text: str) -> RunConfig:
    """Parse a key-value document into a validated :class:`RunConfig`.

    Raises :class:`ConfigError` naming the offending key and how to fix
    it; unknown keys list the known ones.
    """
    nested: dict[str, dict] = {}
    flat: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"line {lineno}: expected 'key = value', got {raw.strip()!r}"
            )
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            if key in _FLOAT_KEYS:
                group, attr = _FLOAT_KEYS[key]
                _set_nested(nested, group, attr, float(value))
            elif key in _INT_KEYS:
                group, attr = _INT_KEYS[key]
                _set_nested(nested, group, attr, int(value))
            elif key == "grid.omega":
                flat["omega_grid"] = GridSpec.parse(value)
            elif key == "grid.tau":
                flat["tau_grid"] = GridSpec.parse(value)
            elif key == "outputs":
                flat["outputs"] = tuple(
                    token.strip() for token in value.split(",") if token.strip()
                )
            elif key == "format":
                flat["format"] = value
            elif key == "out_dir":
                flat["out_dir"] = value
            else:
                raise ConfigError(
                    f"unknown key '{key}'; known keys: {', '.join(_KNOWN_KEYS)}"
                )
        except ConfigError:
            raise
        except (ParameterError, ValueError) as exc:
            raise ConfigError(f"{key}: {exc}") from exc

    kwargs: dict[str, object] = dict(flat)
    try:
        if "fpi" in nested:
            kwargs["fpi"] = FpiParams(**nested["fpi"])
        if "source" in nested:
            kwargs["source"] = SourceParams(**nested["source"])
        if "sim" in nested:
            kwargs["sim"] = SimConfig(**nested["sim"])
        return RunConfig(**kwargs)
    except ParameterError as exc:
        group = next((g for g in ("fpi", "source", "sim") if g in nested), "config")
        raise ConfigError(f"{group}.*: {exc}") from exc


def load_config(path: str | None) -> RunConfig:
    """Read a config file, or return the defaults when ``path`` is None."""
    if path is None:
        return RunConfig()
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def apply_overrides(
    cfg: RunConfig,
    out_dir: str | None = None,
    fmt: str | None = None,
    seed: int | None = None,
    grid_points: int | None = None,
) -> RunConfig:
    """Apply command-line overrides on top of a parsed configuration."""
    if out_dir is not None:
        cfg = replace(cfg, out_dir=out_dir)
    if fmt is not None:
        if fmt not in FORMATS:
            raise ConfigError(f"format: '{fmt}' is not supported; use csv or json")
        cfg = replace(cfg, format=fmt)
    if seed is not None:
        if not 0 <= seed < 2**64:
            raise ConfigError("seed: must fit in 64 bits")
        cfg = replace(cfg, sim=replace(cfg.sim, seed=seed))
    if grid_points is not None:
        if grid_points < 2:
            raise ConfigError("grid-points: need at least 2")
        cfg = replace(
            cfg, omega_grid=replace(cfg.omega_grid, count=grid_points)
        )
    return cfg


def config_echo(cfg: RunConfig) -> dict[str, object]:
    """Flat key-value echo of a configuration, for dataset metadata."""
    echo: dict[str, object] = {}
    for group_name, group in (("fpi", cfg.fpi), ("source", cfg.source), ("sim", cfg.sim)):
        for fld in fields(group):
            echo[f"{group_name}.{fld.name}"] = getattr(group, fld.name)
    echo["grid.omega"] = str(cfg.omega_grid)
    echo["grid.tau"] = str(cfg.tau_grid)
    echo["source.gamma_l"] = source_linewidth(cfg.source)
    return echo
