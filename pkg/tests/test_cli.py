import json
import math

import pytest

from hgl.cli import EXIT_INPUT, EXIT_OK, main


def run(args):
    return main(args)


class TestAnalyzeCommand:
    def test_gaussian_preset_writes_coefficients(self, tmp_path):
        out = tmp_path / "coef.json"
        code = run(["analyze", "--preset", "gaussian:1.0", "--dim", "1",
                    "--max-degree", "10", "--out", str(out)])
        assert code == EXIT_OK
        data = json.loads(out.read_text())
        by_alpha = {tuple(e["alpha"]): e for e in data["entries"]}
        assert by_alpha[(0,)]["re"] == pytest.approx(math.pi**0.25, rel=1e-9)
        others = [abs(complex(e["re"], e["im"])) for a, e in by_alpha.items() if a != (0,)]
        assert max(others) < 1e-9
        assert data["config"]["command"] == "analyze"

    def test_hermite_preset_single_entry(self, tmp_path):
        out = tmp_path / "coef.json"
        assert run(["analyze", "--preset", "hermite:2,1", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        assert len(data["entries"]) == 1
        assert data["entries"][0]["alpha"] == [2, 1]
        assert data["entries"][0]["re"] == 1.0

    def test_malformed_csv_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("0.0,1.0\nnope,2.0\n")
        code = run(["analyze", "--input", str(bad), "--max-degree", "4"])
        assert code == EXIT_INPUT
        assert "row 2" in capsys.readouterr().err

    def test_sampled_csv_roundtrip(self, tmp_path):
        import numpy as np
        xs = np.linspace(-8, 8, 2001)
        csv = tmp_path / "g.csv"
        csv.write_text("\n".join(f"{x},{math.exp(-x * x / 2)}" for x in xs) + "\n")
        out = tmp_path / "coef.json"
        assert run(["analyze", "--input", str(csv), "--max-degree", "4",
                    "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text())
        c0 = [e for e in data["entries"] if e["alpha"] == [0]][0]
        assert c0["re"] == pytest.approx(math.pi**0.25, rel=1e-4)

    def test_missing_input_is_error(self, capsys):
        assert run(["analyze"]) == EXIT_INPUT


class TestClassifyCommand:
    def test_synthetic_flat(self, tmp_path):
        out = tmp_path / "report.json"
        code = run(["classify", "--preset", "synthetic_flat:1,1,80",
                    "--sigma", "1.0", "--out", str(out)])
        assert code == EXIT_OK
        data = json.loads(out.read_text())
        cls = data["classification"]
        assert cls["kind"] == "flat_sigma"
        assert cls["flavor"] == "roumieu"
        assert abs(cls["parameter"] - 1.0) <= 0.1
        assert data["cross_validation"]["agrees"] is True

    def test_hermite_preset_finite(self, tmp_path):
        out = tmp_path / "report.json"
        assert run(["classify", "--preset", "hermite:7", "--out", str(out)]) == EXIT_OK
        assert json.loads(out.read_text())["classification"]["kind"] == "finite_expansion"

    def test_synthetic_s(self, tmp_path):
        out = tmp_path / "report.json"
        assert run(["classify", "--preset", "synthetic_s:0.5,2,80",
                    "--out", str(out)]) == EXIT_OK
        cls = json.loads(out.read_text())["classification"]
        assert cls["kind"] == "s_type"
        assert abs(cls["parameter"] - 0.5) <= 0.05

    def test_csv_format_rejected(self):
        assert run(["classify", "--preset", "hermite:1", "--format", "csv"]) == EXIT_INPUT


class TestEnvelopeCommand:
    def test_flat_table_monotone(self, tmp_path):
        out = tmp_path / "env.csv"
        code = run(["envelope", "--sigma", "1.0", "--radius", "1.0",
                    "--n-max", "40", "--out", str(out)])
        assert code == EXIT_OK
        lines = out.read_text().strip().splitlines()
        assert lines[1] == "N,log_envelope"
        rows = [line.split(",") for line in lines[2:]]
        ns = [int(r[0]) for r in rows]
        vals = [float(r[1]) for r in rows]
        assert ns[0] == 3  # N = 1, 2 omitted since N sigma <= e
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_small_n_skipped_with_warning(self, tmp_path, capsys):
        out = tmp_path / "env.csv"
        run(["envelope", "--sigma", "1.0", "--n-max", "5", "--out", str(out)])
        assert "omitted" in capsys.readouterr().err

    def test_s_table_is_factorial(self, tmp_path):
        out = tmp_path / "env.csv"
        run(["envelope", "--s", "0.5", "--radius", "1.0", "--n-max", "10",
             "--out", str(out)])
        rows = out.read_text().strip().splitlines()[2:]
        vals = [float(r.split(",")[1]) for r in rows]
        assert vals[3] == pytest.approx(math.log(6.0), rel=1e-12)  # log 3!


class TestNormsCommand:
    def test_ground_state_constant_column(self, tmp_path):
        out = tmp_path / "norms.csv"
        code = run(["norms", "--preset", "hermite:0", "--n-max", "10",
                    "--out", str(out)])
        assert code == EXIT_OK
        rows = out.read_text().strip().splitlines()[2:]
        vals = [float(r.split(",")[1]) for r in rows]
        assert vals == pytest.approx([0.0] * 11, abs=1e-12)

    def test_synthetic_increasing(self, tmp_path):
        out = tmp_path / "norms.csv"
        run(["norms", "--preset", "synthetic_flat:1,1,80", "--n-max", "40",
             "--out", str(out)])
        rows = out.read_text().strip().splitlines()[2:]
        vals = [float(r.split(",")[1]) for r in rows]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_linf_norm_kind(self, tmp_path):
        out = tmp_path / "norms.csv"
        run(["norms", "--preset", "gaussian:1.0", "--max-degree", "10",
             "--norm", "linf", "--n-max", "2", "--out", str(out)])
        rows = out.read_text().strip().splitlines()[2:]
        assert rows[0].endswith("linf")
        # the width-1 preset is exp(-x^2/2): sup norm 1
        assert float(rows[0].split(",")[1]) == pytest.approx(0.0, abs=1e-6)

    def test_determinism_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["norms", "--preset", "finite_random:20,7", "--n-max", "10"]
        run(args + ["--out", str(a)])
        run(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestVerifyLemmasCommand:
    def test_default_grids_pass(self, tmp_path):
        out = tmp_path / "suites.json"
        code = run(["verify-lemmas", "--out", str(out)])
        assert code == EXIT_OK
        data = json.loads(out.read_text())
        assert data["all_passed"] is True
        assert len(data["suites"]) == 9
        assert {s["name"] for s in data["suites"]} == {
            "factor_ratios_bounded", "envelope_factor_monotone",
            "infimum_coeff_bound", "peak_term_bounded"}

    def test_narrowed_domain_is_input_error(self, capsys):
        # t floor below sigma(e+1)+e violates the monotonicity domain
        assert run(["verify-lemmas", "--t-min", "2.0"]) == EXIT_INPUT
        # degenerate extent (below the domain floor) is also an input error
        assert run(["verify-lemmas", "--t-max", "8.0"]) == EXIT_INPUT

    def test_suite_failure_exits_3(self, tmp_path, monkeypatch, capsys):
        import hgl.cli as cli
        from hgl import check_factor_ratios_bounded

        def failing(R, **kwargs):
            rep = check_factor_ratios_bounded(R, **kwargs)
            return type(rep)(**{**rep.__dict__, "passed": False})

        monkeypatch.setattr(cli.envelopes, "check_factor_ratios_bounded", failing)
        assert run(["verify-lemmas"]) == 3
        capsys.readouterr()

    def test_report_roundtrips_schema(self, tmp_path):
        out = tmp_path / "suites.json"
        run(["verify-lemmas", "--out", str(out)])
        for suite in json.loads(out.read_text())["suites"]:
            assert {"name", "grid", "max_ratio", "fitted_constant", "witness",
                    "passed", "threshold", "details"} <= set(suite)
            assert set(suite["max_ratio"]) == {"sign", "log"}


def test_csv_input_with_higher_dim_rejected(tmp_path, capsys):
    csv = tmp_path / "g.csv"
    csv.write_text("0.0,1.0\n1.0,0.5\n")
    assert run(["analyze", "--input", str(csv), "--dim", "2"]) == EXIT_INPUT
    assert "dimension 1" in capsys.readouterr().err
