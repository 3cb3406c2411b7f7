"""Command-line surface: flags, formats, exit codes, determinism."""

from __future__ import annotations

import json
import math

import pytest

from quasizero import (
    Quasipolynomial,
    enumerate_zeros,
    quadrangle,
    sector_radius,
    sigma,
)
from quasizero.cli import main

Q11 = Quasipolynomial(1, 1)


def run_cli(capsys, argv):
    """Invoke the CLI in-process; normalize argparse SystemExit to a code."""
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return (0 if code is None else code), out, err


class TestZerosCommand:
    def test_csv_shape_and_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys, ["zeros", "--k", "1", "--a", "1+0i", "--nu", "1..40"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "nu,guess_re,guess_im,zero_re,zero_im,residual,newton_iters"
        rows = [ln for ln in lines[1:] if ln and not ln.startswith("#")]
        assert len(rows) == 36
        # Values parse back to the in-memory records exactly.
        records = {r.nu: r for r in enumerate_zeros(Q11, 1, 40)}
        for row in rows:
            fields = row.split(",")
            rec = records[int(fields[0])]
            assert float(fields[1]) == rec.guess.real
            assert float(fields[2]) == rec.guess.imag
            assert float(fields[3]) == rec.refined.real
            assert float(fields[4]) == rec.refined.imag
            assert float(fields[5]) == rec.residual
            assert int(fields[6]) == rec.newton_iters

    def test_empty_range_notes_skip(self, capsys):
        code, out, _ = run_cli(
            capsys, ["zeros", "--k", "1", "--a", "1+0i", "--nu", "0..0"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("nu,")
        assert any(ln.startswith("#") and "no chain indices" in ln for ln in lines)

    def test_json_envelope(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["zeros", "--k", "2", "--a", "3i", "--nu", "5..8", "--format", "json"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["command"] == "zeros"
        assert doc["config"]["k"] == 2
        assert doc["config"]["a"] == {"re": 0.0, "im": 3.0}
        assert doc["timings"] is None
        assert len(doc["results"]["records"]) == 4

    def test_malformed_coefficient_is_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, ["zeros", "--k", "1", "--a", "banana", "--nu", "1..5"]
        )
        assert code == 2
        assert err

    def test_malformed_range_is_usage_error(self, capsys):
        code, _, _ = run_cli(
            capsys, ["zeros", "--k", "1", "--a", "1+0i", "--nu", "5-10"]
        )
        assert code == 2


class TestCountCommand:
    def test_rect_count(self, capsys):
        code, out, _ = run_cli(
            capsys, ["count", "--k", "1", "--a", "1+0i", "--rect", "0,4,8,14"]
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "count: 1"
        assert lines[1].startswith("edge_segments: ")
        assert lines[2].startswith("min_boundary_ratio: ")

    def test_disk_count(self, capsys):
        code, out, _ = run_cli(
            capsys, ["count", "--k", "1", "--a", "1+0i", "--disk", "0,0,2"]
        )
        assert code == 0
        assert out.splitlines()[0] == "count: 1"

    def test_rect_and_disk_conflict(self, capsys):
        code, _, _ = run_cli(
            capsys,
            [
                "count", "--k", "1", "--a", "1+0i",
                "--rect", "0,4,8,14", "--disk", "0,0,2",
            ],
        )
        assert code == 2

    def test_neither_contour_given(self, capsys):
        code, _, _ = run_cli(capsys, ["count", "--k", "1", "--a", "1+0i"])
        assert code == 2

    def test_boundary_zero_is_numeric_failure(self, capsys):
        # Bottom edge through the real zero: the walk classifies it as a
        # boundary zero, which is a numeric failure, not a usage error.
        code, _, err = run_cli(
            capsys,
            [
                "count", "--k", "1", "--a", "1+0i",
                "--rect=-1.5671432904097838,0.4328567095902162,0,2",
            ],
        )
        assert code == 1
        assert "error:" in err

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "count", "--k", "1", "--a", "1+0i",
                "--disk", "0,0,2", "--format", "json",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["results"]["count"] == 1


class TestBoundsCommand:
    def test_eq3_json_passes(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "bounds", "--ineq", "eq3", "--k", "1", "--a", "1+0i",
                "--h", "auto+0.5", "--samples", "2000", "--seed", "7",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["results"]["passed"] is True
        assert doc["results"]["min_ratio"] >= 0.5
        assert doc["config"]["h"] == pytest.approx(math.log(2) + 0.5)
        assert doc["timings"] is None

    def test_identical_seeds_identical_output(self, capsys):
        argv = [
            "bounds", "--ineq", "eq4", "--k", "2", "--a", "0.5+0.5i",
            "--h", "auto+0.5", "--samples", "1000", "--seed", "3",
        ]
        _, first, _ = run_cli(capsys, argv)
        _, second, _ = run_cli(capsys, argv)
        assert first == second

    def test_eq7_requires_delta(self, capsys):
        code, _, err = run_cli(
            capsys,
            ["bounds", "--ineq", "eq7", "--k", "1", "--a", "1+0i"],
        )
        assert code == 2
        assert "delta" in err

    def test_eq7_reports_estimate(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "bounds", "--ineq", "eq7", "--k", "1", "--a", "1+0i",
                "--delta", "0.5", "--nu-hi", "30", "--samples", "2000",
                "--seed", "42",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["results"]["inequality_id"] == "eq7"
        assert doc["results"]["min_ratio"] > 0
        assert doc["results"]["stability_ratio"] is not None

    def test_environment_seed_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("QUASIZERO_SEED", "123")
        code, out, _ = run_cli(
            capsys,
            [
                "bounds", "--ineq", "eq3", "--k", "1", "--a", "1+0i",
                "--h", "auto+0.5", "--samples", "500", "--seed", "7",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["config"]["seed"] == 123
        assert doc["results"]["seed"] == 123

    def test_invalid_environment_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("QUASIZERO_SEED", "not-a-seed")
        code, _, _ = run_cli(
            capsys,
            [
                "bounds", "--ineq", "eq3", "--k", "1", "--a", "1+0i",
                "--h", "auto+0.5", "--samples", "500",
            ],
        )
        assert code == 2

    def test_timings_opt_in(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "bounds", "--ineq", "eq3", "--k", "1", "--a", "1+0i",
                "--h", "auto+0.5", "--samples", "500", "--seed", "1",
                "--timings",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        assert isinstance(doc["timings"], dict)
        assert doc["timings"]["elapsed_seconds"] > 0


class TestGeometryCommand:
    def test_gamma_rows_satisfy_curve_equation(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "geometry", "--curve", "gamma", "--k", "1", "--a", "1+0i",
                "--S", "1", "--j", "2", "--h", "2", "--im", "10..200",
                "--n", "16",
            ],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "re,im"
        rows = lines[1:]
        assert len(rows) == 16
        for row in rows:
            re_s, im_s = row.split(",")
            p = complex(float(re_s), float(im_s))
            assert abs(sigma(Q11, 1, p) - 2.0) < 1e-9

    def test_gamma_single_point_rejected(self, capsys):
        code, _, _ = run_cli(
            capsys,
            [
                "geometry", "--curve", "gamma", "--k", "1", "--a", "1+0i",
                "--S", "1", "--j", "2", "--h", "2", "--im", "10..200",
                "--n", "1",
            ],
        )
        assert code == 2

    def test_quadrangle_csv_matches_library(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "geometry", "--quadrangle", "--k", "1", "--a", "1+0i",
                "--nu", "10", "--h", "2",
            ],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "corner,re,im"
        geom = quadrangle(Q11, 10, 2.0)
        for idx, corner in enumerate(geom.corners, start=1):
            fields = lines[idx].split(",")
            assert int(fields[0]) == idx
            assert float(fields[1]) == corner.real
            assert float(fields[2]) == corner.imag
        diag_line = next(ln for ln in lines if ln.startswith("# diag "))
        assert float(diag_line.split()[-1]) == geom.diag

    def test_quadrangle_requires_nu(self, capsys):
        code, _, _ = run_cli(
            capsys,
            ["geometry", "--quadrangle", "--k", "1", "--a", "1+0i", "--h", "2"],
        )
        assert code == 2

    def test_sector_radius_output(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "geometry", "--sector", "--k", "1", "--a", "1+0i",
                "--h", "2", "--delta", "0.3",
            ],
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "sector_radius"
        assert float(lines[1]) == sector_radius(Q11, 1, 2.0, 0.3)

    def test_mode_flags_are_exclusive(self, capsys):
        code, _, _ = run_cli(
            capsys,
            [
                "geometry", "--curve", "gamma", "--quadrangle",
                "--k", "1", "--a", "1+0i", "--h", "2",
            ],
        )
        assert code == 2


class TestParsing:
    def test_complex_forms(self, capsys):
        for text, expected in [
            ("0.5-0.5i", {"re": 0.5, "im": -0.5}),
            ("3i", {"re": 0.0, "im": 3.0}),
            ("-2", {"re": -2.0, "im": 0.0}),
        ]:
            code, out, _ = run_cli(
                capsys,
                [
                    "zeros", "--k", "1", "--a", text, "--nu", "5..5",
                    "--format", "json",
                ],
            )
            assert code == 0
            assert json.loads(out)["config"]["a"] == expected

    def test_missing_subcommand(self, capsys):
        code, _, _ = run_cli(capsys, [])
        assert code == 2

    def test_auto_h_uses_region_threshold(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "bounds", "--ineq", "eq4", "--k", "1", "--a", "-2",
                "--h", "auto", "--samples", "200", "--seed", "0",
            ],
        )
        assert code == 0
        doc = json.loads(out)
        # auto = ln(2|a|) + 0.5 for the far-field inequality.
        assert doc["config"]["h"] == pytest.approx(math.log(4) + 0.5)
