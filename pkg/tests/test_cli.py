"""Command line and dataset emission: figures, formats, reproducibility."""

import csv
import json

import numpy as np
import pytest

from fpinoise import SourceParams, mean_photon_number, source_linewidth
from fpinoise.cli import main
from fpinoise.config import RunConfig, parse_config
from fpinoise.figures import (
    FIGURE_IDS,
    energy_split_fraction,
    energy_split_report,
    run_figure,
)
from fpinoise.output import write_dataset


def _read_csv(path):
    metadata = {}
    rows = []
    header = None
    with open(path, newline="") as handle:
        for line in handle:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = line.strip().split(",")
                continue
            rows.append([float(tok) for tok in line.strip().split(",")])
    return metadata, header, np.array(rows)


class TestFigureDatasets:
    def test_all_ids_build(self, tmp_path):
        cfg = parse_config("grid.omega = -10:15:201\ngrid.tau = 0:12:101")
        for figure_id in FIGURE_IDS:
            ds = run_figure(figure_id, cfg)
            assert ds.figure_id == figure_id
            lengths = {len(col) for col in ds.series.values()}
            assert len(lengths) == 1

    def test_unknown_id_rejected(self):
        from fpinoise.errors import ParameterError

        with pytest.raises(ParameterError, match="unknown figure id"):
            run_figure("fig99", RunConfig())

    def test_fig3b_columns(self):
        ds = run_figure("fig3b", RunConfig())
        assert list(ds.series) == [
            "delta",
            "reflection_finite",
            "transmission_finite",
            "reflection_mono",
            "transmission_mono",
        ]
        deltas = ds.series["delta"]
        assert deltas[0] == -15.0 and deltas[-1] == 15.0
        # finite-linewidth transmission is below the monochromatic one
        # near resonance
        mid = np.argmin(np.abs(deltas))
        assert ds.series["transmission_finite"][mid] < ds.series["transmission_mono"][mid]
        assert ds.series["reflection_finite"][mid] > ds.series["reflection_mono"][mid]

    def test_fig4b_drive_power(self):
        cfg = parse_config("grid.omega = -10:15:201")
        ds = run_figure("fig4b", cfg)
        assert ds.metadata["p_in"] == pytest.approx(1.5)
        assert ds.metadata["gamma_l"] == pytest.approx(1.2)
        assert set(ds.series) == {"omega", "reflected", "transmitted", "input"}

    def test_fig9_delta_weights_in_metadata_only(self):
        cfg = parse_config("grid.tau = 0:12:101")
        ds = run_figure("fig9", cfg)
        assert "tau" in ds.series
        for p in (0.1, 1.5, 5.0, 50.0):
            key = f"delta_weight_{p:g}"
            assert key in ds.metadata
        # normalized curves start at one
        for name, col in ds.series.items():
            if name != "tau":
                assert col[0] == pytest.approx(1.0, rel=1e-12)

    def test_fig8_normalization_metadata(self):
        cfg = parse_config("grid.tau = 0:12:101")
        ds = run_figure("fig8c", cfg)
        src = SourceParams(p_in=5.0)
        n = mean_photon_number(cfg.fpi, src)
        assert ds.metadata["normalization"] == pytest.approx(n * (n + 1), rel=1e-10)
        assert ds.series["total"][0] == pytest.approx(1.0, rel=1e-12)


class TestEnergySplit:
    def test_reference_fractions(self):
        cfg = RunConfig()
        for p, target in ((1.5, 0.48), (5.0, 0.70), (50.0, 0.95)):
            frac = energy_split_fraction(cfg.fpi, SourceParams(p_in=p))
            assert frac == pytest.approx(target, abs=0.02)

    def test_report_dataset(self):
        ds = energy_split_report(RunConfig())
        assert list(ds.series["p_in"]) == [1.5, 5.0, 50.0]


class TestWriters:
    def test_csv_json_numeric_identity(self, tmp_path):
        cfg = parse_config("grid.omega = -10:15:101")
        ds = run_figure("fig5a", cfg)
        csv_path = write_dataset(ds, tmp_path, "csv")
        json_path = write_dataset(ds, tmp_path, "json")
        _, header, rows = _read_csv(csv_path)
        payload = json.loads(json_path.read_text())
        for j, name in enumerate(header):
            assert rows[:, j].tolist() == payload["series"][name]

    def test_metadata_echo_complete(self, tmp_path):
        cfg = parse_config("source.p_in = 50")
        ds = run_figure("fig5b", cfg)
        path = write_dataset(ds, tmp_path, "csv")
        metadata, _, _ = _read_csv(path)
        for key in (
            "fpi.kappa1",
            "fpi.kappa2",
            "fpi.kappa0",
            "fpi.delta",
            "source.p_in",
            "source.gamma_max",
            "sim.seed",
            "grid.omega",
            "kappa_l_rad_per_s",
        ):
            assert key in metadata

    def test_nine_significant_digits(self):
        from fpinoise.output import format_float

        assert format_float(1 / 3) == "3.33333333e-01"
        assert format_float(123456789.0) == "1.23456789e+08"


class TestCliMain:
    def test_coeffs_roundtrip(self, tmp_path):
        out = tmp_path / "run"
        code = main(["coeffs", "--out", str(out)])
        assert code == 0
        metadata, header, rows = _read_csv(out / "coeffs.csv")
        cfg = RunConfig()
        assert header[0] == "gamma_l"
        assert rows[0][0] == pytest.approx(source_linewidth(cfg.source), rel=1e-8)

    def test_reruns_are_bit_identical(self, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        assert main(["figure", "fig3a", "--out", str(out_a)]) == 0
        assert main(["figure", "fig3a", "--out", str(out_b)]) == 0
        assert (out_a / "fig3a.csv").read_bytes() == (out_b / "fig3a.csv").read_bytes()

    def test_config_file_and_grid_override(self, tmp_path):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text("source.p_in = 5\nformat = json\n")
        out = tmp_path / "out"
        code = main(
            ["spectra", "--config", str(cfg_file), "--out", str(out), "--grid-points", "101"]
        )
        assert code == 0
        payload = json.loads((out / "spectra.json").read_text())
        assert len(payload["series"]["omega"]) == 101
        assert payload["metadata"]["source.p_in"] == "5.00000000e+00"

    def test_bad_config_exits_2(self, tmp_path):
        cfg_file = tmp_path / "bad.cfg"
        cfg_file.write_text("fpi.kappa1 = -2\n")
        assert main(["coeffs", "--config", str(cfg_file), "--out", str(tmp_path)]) == 2

    def test_unreadable_config_exits_2_or_4(self, tmp_path):
        code = main(["coeffs", "--config", str(tmp_path / "missing.cfg")])
        assert code == 4

    def test_unknown_figure_id_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["figure", "fig99", "--out", str(tmp_path)])
        assert info.value.code == 2

    def test_oracle_subcommand(self, tmp_path):
        cfg_file = tmp_path / "sim.cfg"
        cfg_file.write_text(
            "sim.n_steps = 16384\nsim.n_realizations = 4\nsim.burn_in = 1024\n"
        )
        out = tmp_path / "out"
        code = main(
            ["oracle", "--config", str(cfg_file), "--out", str(out), "--seed", "7"]
        )
        assert code == 0
        metadata, header, rows = _read_csv(out / "oracle.csv")
        assert metadata["sim.seed"] == "7"
        assert {"omega", "estimated", "analytic_classical"} <= set(header)

    def test_sweep_subcommand_emits_split(self, tmp_path):
        out = tmp_path / "out"
        code = main(["sweep", "--out", str(out)])
        assert code == 0
        assert (out / "sweep.csv").exists()
        assert (out / "energy_split.csv").exists()
