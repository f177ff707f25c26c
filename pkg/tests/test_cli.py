"""End-to-end CLI coverage: every documented flag combination and exit code."""

import json
import subprocess

import pytest

from hyperzeta.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def manifold_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    code, _, _ = run_cli(
        capsys,
        "synth-spectrum", "--seed", "11", "--count", "3", "--min-length", "1.0",
        "--max-power", "2", "--dim", "4", "--out", str(path),
    )
    assert code == 0
    return path


class TestAnomaly:
    def test_dim2_default(self, capsys):
        code, out, _ = run_cli(capsys, "anomaly", "--dim", "2", "--form", "0")
        assert code == 0
        assert out.strip() == "-1/12 * pi^-1 = -0.0265258"

    def test_conformal_scalar_mode(self, capsys):
        code, out, _ = run_cli(
            capsys, "anomaly", "--dim", "6", "--alpha-mode", "conformal-scalar",
            "--form", "0", "--format", "exact",
        )
        assert code == 0
        assert out.strip() == "-5/4032 * pi^-3"

    def test_float_only_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "anomaly", "--dim", "4", "--form", "1", "--format", "float"
        )
        assert code == 0
        assert out.strip() == "-0.0424282"

    def test_massive_mode(self, capsys):
        # alpha = 9/4 + 2 = 17/4 on the 0-form sector
        code, out, _ = run_cli(
            capsys, "anomaly", "--dim", "4", "--form", "0",
            "--alpha-mode", "massive", "--mass-sq", "2", "--format", "exact",
        )
        assert code == 0
        assert out.strip().endswith("* pi^-2")

    def test_massive_rejects_negative(self, capsys):
        code, _, err = run_cli(
            capsys, "anomaly", "--dim", "4", "--form", "0",
            "--alpha-mode", "massive", "--mass-sq", "-1",
        )
        assert code == 2
        assert "mass" in err

    def test_radius_scaling(self, capsys):
        _, base, _ = run_cli(capsys, "anomaly", "--dim", "2", "--format", "exact")
        code, out, _ = run_cli(
            capsys, "anomaly", "--dim", "2", "--radius", "2", "--format", "exact"
        )
        assert code == 0
        assert out.strip() == "-1/48 * pi^-1"
        assert base.strip() == "-1/12 * pi^-1"

    def test_middle_degree_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "anomaly", "--dim", "4", "--form", "2")
        assert code == 2
        assert "middle degree" in err

    def test_odd_dimension_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "anomaly", "--dim", "3")
        assert code == 2
        assert "odd dimensions" in err


class TestTable:
    def test_table2_csv_shape(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--which", "table2", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 6  # header + 5 dimensions
        assert lines[0].split(",")[0] == "n"
        assert out.count("excluded") == 20  # 10 markers x doubled columns
        assert "-34196177/7096320 * pi^-5" in out

    def test_table1_markdown(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--which", "table1")
        assert code == 0
        assert out.count("\n") == 9  # header + rule + 7 rows
        assert "-133787/251596800 * pi^-6" in out

    def test_custom_single_cell(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--which", "custom", "--dims", "4", "--forms", "0",
            "--format", "plain",
        )
        assert code == 0
        assert "29/240 * pi^-2" in out

    def test_custom_without_lists_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "table", "--which", "custom")
        assert code == 2
        assert "--dims" in err

    def test_csv_byte_stable_across_processes(self):
        runs = [
            subprocess.run(
                ["hyperzeta", "table", "--which", "table2", "--format", "csv"],
                capture_output=True,
            ).stdout
            for _ in range(2)
        ]
        assert runs[0] == runs[1] and runs[0]


class TestPlancherel:
    def test_coefficients_listed(self, capsys):
        code, out, _ = run_cli(capsys, "plancherel", "--dim", "6", "--form", "0")
        assert code == 0
        assert "a_0 = 9/16" in out
        assert "a_2 = 5/2" in out
        assert "monic: True" in out

    def test_eval_flag(self, capsys):
        code, out, _ = run_cli(
            capsys, "plancherel", "--dim", "2", "--form", "0", "--eval", "1.0"
        )
        assert code == 0
        assert "mu(r=1) = 3.12988" in out

    def test_odd_dim_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "plancherel", "--dim", "5", "--form", "0")
        assert code == 2

    def test_form_out_of_range_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "plancherel", "--dim", "4", "--form", "4")
        assert code == 2
        assert "form order" in err


class TestHeatTrace:
    def test_markdown_rows(self, capsys, manifold_file):
        code, out, _ = run_cli(
            capsys, "heat-trace", "--manifold", str(manifold_file),
            "--form", "1", "--t", "0.5", "1.0",
        )
        assert code == 0
        lines = out.splitlines()
        assert "identity" in lines[0] and "betti" in lines[0]
        assert len(lines) == 4

    def test_csv_format(self, capsys, manifold_file):
        code, out, _ = run_cli(
            capsys, "heat-trace", "--manifold", str(manifold_file),
            "--form", "0", "--t", "1.0", "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == "t,identity,hyperbolic,betti,total"

    def test_nonpositive_t_exit_2(self, capsys, manifold_file):
        code, _, _ = run_cli(
            capsys, "heat-trace", "--manifold", str(manifold_file),
            "--form", "0", "--t", "-1.0",
        )
        assert code == 2

    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "heat-trace", "--manifold", str(tmp_path / "nope.json"),
            "--form", "0", "--t", "1.0",
        )
        assert code == 2

    def test_bad_file_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"format_version": 1, "dimension": 3}')
        code, _, err = run_cli(
            capsys, "heat-trace", "--manifold", str(bad), "--form", "0", "--t", "1.0"
        )
        assert code == 2
        assert "manifold" in err


class TestZetaCheck:
    def test_default_passes(self, capsys, manifold_file):
        code, out, _ = run_cli(
            capsys, "zeta-check", "--manifold", str(manifold_file), "--form", "0"
        )
        assert code == 0
        assert out.count("[ok]") == 3
        assert "scaling ratio" in out

    def test_impossible_tolerance_fails(self, capsys, manifold_file):
        code, out, _ = run_cli(
            capsys, "zeta-check", "--manifold", str(manifold_file),
            "--form", "0", "--s", "0.5", "--tolerance", "1e-18",
        )
        assert code == 1
        assert "MISMATCH" in out


class TestSynthSpectrum:
    def test_stdout_document(self, capsys):
        code, out, _ = run_cli(
            capsys, "synth-spectrum", "--seed", "7", "--count", "2",
            "--max-power", "3", "--dim", "2",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["format_version"] == 1
        assert doc["dimension"] == 2
        assert len(doc["geodesics"]) == 6

    def test_deterministic_output(self, capsys):
        args = ("synth-spectrum", "--seed", "3", "--count", "2", "--dim", "4")
        _, a, _ = run_cli(capsys, *args)
        _, b, _ = run_cli(capsys, *args)
        assert a == b

    def test_betti_override(self, capsys):
        code, out, _ = run_cli(
            capsys, "synth-spectrum", "--seed", "1", "--count", "0", "--dim", "2",
            "--betti", "1", "2", "1",
        )
        assert code == 0
        assert json.loads(out)["betti"] == [1, 2, 1]

    def test_wrong_betti_length_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "synth-spectrum", "--seed", "1", "--count", "0", "--dim", "2",
            "--betti", "1", "2",
        )
        assert code == 2


class TestVerify:
    def test_fast_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--fast")
        assert code == 0
        assert "golden-table2" in out
        assert "FAIL" not in out

    def test_corrupted_golden_named_failure(self, capsys, tmp_path):
        bad = tmp_path / "golden.json"
        bad.write_text("{not json")
        code, out, _ = run_cli(capsys, "verify", "--fast", "--golden", str(bad))
        assert code == 1
        assert "FAIL" in out and "golden-load" in out

    def test_tampered_value_named_failure(self, capsys, tmp_path):
        from importlib import resources

        blob = json.loads(
            resources.files("hyperzeta").joinpath("data/golden_tables.json").read_text()
        )
        blob["table2"][3]["exact"] = "1/2 * pi^-2"
        bad = tmp_path / "golden.json"
        bad.write_text(json.dumps(blob))
        code, out, _ = run_cli(capsys, "verify", "--fast", "--golden", str(bad))
        assert code == 1
        assert "golden-table2" in out and "FAIL" in out


class TestEnvAndParser:
    def test_precision_env(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPERZETA_PRECISION", "9")
        code, out, _ = run_cli(capsys, "anomaly", "--dim", "2", "--format", "float")
        assert code == 0
        assert out.strip() == "-0.0265258238"

    def test_bad_precision_exit_2(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPERZETA_PRECISION", "zero")
        code, _, err = run_cli(capsys, "anomaly", "--dim", "2")
        assert code == 2
        assert "HYPERZETA_PRECISION" in err

    def test_unknown_subcommand_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        assert "hyperzeta" in out

    def test_installed_entry_point(self):
        out = subprocess.run(
            ["hyperzeta", "anomaly", "--dim", "2"], capture_output=True, text=True
        )
        assert out.returncode == 0
        assert out.stdout.strip() == "-1/12 * pi^-1 = -0.0265258"
