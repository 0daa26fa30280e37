import csv
import io
import json

import pytest

from scenariorisk import diagonal_region
from scenariorisk.__main__ import main
from scenariorisk.commands import int_range
from scenariorisk.errors import ValidationError
from scenariorisk.export import format_real
from scenariorisk.utils import EXIT_INVALID, EXIT_OK


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestCertify:
    def test_diagonal_band(self, capsys):
        code, out, _ = run(capsys, "certify", "--n", "800,1200", "--k", "120,80", "--beta", "1e-5",
                           "--scheme", "diagonal")
        assert code == EXIT_OK
        data = json.loads(out)
        region = diagonal_region((800, 1200), (800, 1200), (120, 80), 1e-5)
        assert data["region"]["kind"] == "DiagonalBand"
        assert data["region"]["t_bar"] == format_real(region.roots.t_bar)
        assert data["region"]["t_underbar"] == "1"
        assert data["joint"]["method"] == "DiagonalClosedForm"

    def test_single_criterion(self, capsys):
        code, out, _ = run(capsys, "cert", "--n", "1000", "--k", "100", "--beta", "1e-5")
        assert code == EXIT_OK
        assert float(json.loads(out)["joint"]["bound"]) == pytest.approx(0.158, abs=2e-3)

    def test_uniform_scheme_searches_the_region(self, capsys):
        code, out, _ = run(capsys, "certify", "--n", "40,60", "--k", "4,6", "--beta", "0.01",
                           "--scheme", "uniform")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["region"]["scheme"] == "uniform"
        assert data["joint"]["method"] == "GeneralRegionMax"

    def test_k_exceeds_n(self, capsys):
        code, out, err = run(capsys, "certify", "--n", "800,1200", "--k", "900,80", "--beta", "1e-5")
        assert code == EXIT_INVALID
        assert out == ""
        assert "k exceeds N" in err
        assert len(err.strip().splitlines()) == 1

    def test_bad_beta(self, capsys):
        code, _, err = run(capsys, "certify", "--n", "10", "--k", "1", "--beta", "1.5")
        assert code == EXIT_INVALID
        assert "beta" in err

    def test_output_file(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("SCENARIORISK_OUTPUT_DIR", str(tmp_path))
        code, out, _ = run(capsys, "certify", "--n", "50,50", "--k", "5,5", "--beta", "0.05", "-o", "cert.json")
        assert code == EXIT_OK and out == ""
        assert json.loads((tmp_path / "cert.json").read_text())["region"]["k"] == [5, 5]


class TestRegionGrid:
    def test_diagonal_grid(self, capsys):
        code, out, _ = run(capsys, "region-grid", "--n", "50,50", "--k", "5,5", "--beta", "0.05", "-r", "20")
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["v1", "v2", "member", "g_value", "member_box"]
        assert len(table) == 1 + 20 * 20
        region = diagonal_region((50, 50), (50, 50), (5, 5), 0.05)
        for v1, v2, member, _, _ in table[1:]:
            t = (1 - float(v1)) * (1 - float(v2))
            assert member == ("1" if region.roots.t_bar <= t <= region.roots.t_underbar else "0")

    def test_uniform_grid_is_bounded(self, capsys):
        code, out, _ = run(capsys, "grid", "--n", "800,1200", "--h", "1600,2400", "--k", "120,80",
                           "--beta", "1e-5", "--scheme", "uniform", "-r", "50")
        assert code == EXIT_OK
        members = [(float(r[0]), float(r[1])) for r in rows(out)[1:] if r[2] == "1"]
        assert members
        assert max(v1 for v1, _ in members) < 0.5 and max(v2 for _, v2 in members) < 0.5
        assert min(v1 for v1, _ in members) > 0.0

    def test_only_two_criteria(self, capsys):
        code, _, err = run(capsys, "region-grid", "--n", "5,5,5", "--k", "1,1,1", "--beta", "0.1")
        assert code == EXIT_INVALID
        assert "two-dimensional" in err


class TestTables:
    def test_apriori(self, capsys):
        code, out, _ = run(capsys, "apriori", "--n-lower", "1000", "--beta", "1e-5", "--kstar", "100",
                           "--m-range", "1,50")
        assert code == EXIT_OK
        header, first, second = rows(out)
        assert header == ["m", "independent_raw", "independent", "diagonal", "bestcase", "uniform"]
        assert [float(x) for x in first[2:5]] == pytest.approx([0.158] * 3, abs=2e-3)
        assert float(second[1]) > 1.0 and second[2] == "1"

    def test_apriori_json(self, capsys):
        code, out, _ = run(capsys, "prior", "--n-lower", "100", "--beta", "1e-3", "--kstar", "5",
                           "--m-range", "1:3", "-f", "json")
        assert code == EXIT_OK
        records = json.loads(out)
        assert [r["m"] for r in records] == [1, 2, 3]

    def test_bad_range(self, capsys):
        code, _, _ = run(capsys, "apriori", "--n-lower", "100", "--beta", "1e-3", "--kstar", "5",
                         "--m-range", "3:1")
        assert code == EXIT_INVALID
        with pytest.raises(ValidationError):
            int_range("1:x")

    def test_table1(self, capsys):
        code, out, _ = run(capsys, "table1")
        assert code == EXIT_OK
        table = rows(out)
        assert table[0] == ["m", "N", "k", "k_total", "independent_raw", "independent", "diagonal"]
        assert len(table) == 7
        fifth = dict(zip(table[0], table[5]))
        assert fifth["independent"] == "1"
        assert float(fifth["independent_raw"]) == pytest.approx(1.062, abs=1e-2)

    def test_table1_custom_row(self, capsys):
        code, out, _ = run(capsys, "table", "--row", "40,1500,1")
        assert code == EXIT_OK
        _, row = rows(out)
        assert float(row[5]) == pytest.approx(0.697, abs=1.5e-3)
        assert float(row[6]) == pytest.approx(0.0545, abs=1e-3)


class TestSize:
    def test_uniform(self, capsys):
        code, out, _ = run(capsys, "size", "--uniform", "--kstar", "10", "--beta", "1e-5", "--eps", "0.2")
        assert code == EXIT_OK
        header, row = rows(out)
        record = dict(zip(header, row))
        assert float(record["bound"]) <= 0.2
        assert record["mode"] == "uniform-in-m"

    def test_finite_m_needs_less_data(self, capsys):
        _, uniform, _ = run(capsys, "size", "--uniform", "--kstar", "10", "--beta", "1e-5", "--eps", "0.2")
        _, finite, _ = run(capsys, "size", "--m", "5", "--kstar", "10", "--beta", "1e-5", "--eps", "0.2")
        assert int(rows(finite)[1][0]) <= int(rows(uniform)[1][0])

    def test_invalid_target(self, capsys):
        code, _, err = run(capsys, "size", "--m", "5", "--kstar", "10", "--beta", "1e-5", "--eps", "1.5")
        assert code == EXIT_INVALID
        assert "eps" in err


class TestSimulate:
    ARGS = ("simulate", "--n", "20,30", "--beta", "0.2", "--trials", "200", "--seed", "5")

    def test_run_passes(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["passed"] is True
        assert report["seed"] == 5

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, *self.ARGS)
        _, second, _ = run(capsys, *self.ARGS, "--workers", "3")
        assert first == second

    def test_no_trials(self, capsys):
        code, _, err = run(capsys, "simulate", "--n", "20,30", "--beta", "0.2", "--trials", "0")
        assert code == EXIT_INVALID
        assert "trials" in err

    def test_robust_lp(self, capsys):
        code, out, _ = run(capsys, "sim", "--problem", "robust-lp2d", "--n", "30,30", "--beta", "0.2",
                           "--trials", "20", "--qmc-points", "1024", "--certificate", "box")
        assert code in (0, 1)
        assert json.loads(out)["problem"]["name"] == "robust-lp2d"


def test_versions(capsys):
    code, out, err = run(capsys, "versions")
    assert code == EXIT_OK
    assert out == ""
    assert "scenariorisk" in err


def test_argument_errors_exit_with_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--n", "10"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv, label", [
    (("size", "--m", "3", "--kstar", "5", "--beta", "1e-4", "--eps", "0.3"), "sizing time"),
    (("table1", "--row", "10,1500,4"), "table time"),
])
def test_debug_reports_elapsed_time(capsys, monkeypatch, argv, label):
    import scenariorisk

    monkeypatch.setattr(scenariorisk, "debug", True)
    code, out, err = run(capsys, *argv)
    assert code == EXIT_OK
    assert label in err
    assert label not in out


def test_importing_the_cli_keeps_warnings_visible():
    import warnings

    import scenariorisk.docs  # noqa: F401

    assert not any(f[0] == "ignore" and f[2] is Warning for f in warnings.filters)
