import csv
import io
import json
import math

import pytest
import sympy

import cli
import invariants
import moduli
from config.solver_config import SweepConfig
from invariants import BlockLabel
from moduli import DeformationSpectrum


def csv_rows(text):
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


@pytest.fixture(autouse=True)
def no_thread_env(monkeypatch):
    monkeypatch.delenv(SweepConfig.THREADS_ENV_VAR, raising=False)


class TestVerify:
    def test_algebra_suite_passes(self, capsys):
        assert cli.main(["verify", "--suite", "algebra", "--Lmax", "8"]) == 0
        out = capsys.readouterr().out
        assert "claim-identities: pass" in out
        assert "checks passed in suite algebra" in out

    def test_corrupted_operator_fails(self, capsys, monkeypatch):
        original = invariants.weight_operators

        def broken(label):
            ops = original(label)
            return invariants.WeightOperators(
                label=label,
                names=ops.names,
                A=ops.A,
                B=ops.B + sympy.eye(len(ops.names)),
                C=ops.C,
            )

        monkeypatch.setattr(invariants, "weight_operators", broken)
        assert cli.main(["verify", "--suite", "algebra", "--Lmax", "6"]) == 1
        assert "claim-identities: FAIL" in capsys.readouterr().out


class TestBlocks:
    def test_json_rows(self, capsys):
        assert cli.main(["blocks", "--Lmax", "8"]) == 0
        rows = {(row["K"], row["L"]): row for row in json.loads(capsys.readouterr().out)}
        assert rows[(0, 8)]["tags"] == "KE_FILLABLE,HARMONIC_TARGET"
        assert rows[(0, 8)]["kernel_global"] == 9
        assert rows[(6, 4)]["tags"] == "SD_TANGENT"
        assert rows[(3, 8)]["tags"] == "PARITY_EMPTY"
        assert rows[(-4, 0)]["dim_C4"] == 1

    def test_csv_to_file(self, tmp_path, capsys):
        out = tmp_path / "blocks.csv"
        assert cli.main(["blocks", "--Lmax", "4", "--format", "csv", "--out", str(out)]) == 0
        rows = csv_rows(out.read_text(encoding="utf-8"))
        assert list(rows[0]) == list(cli.BLOCK_COLUMNS)
        assert len(rows) == len(moduli.sweep_labels(4))
        assert "✅" in capsys.readouterr().err

    def test_threads_from_bad_env(self, monkeypatch):
        monkeypatch.setenv(SweepConfig.THREADS_ENV_VAR, "many")
        assert cli.main(["blocks", "--Lmax", "4"]) == 2

    def test_threads_from_env(self, monkeypatch):
        monkeypatch.setenv(SweepConfig.THREADS_ENV_VAR, "3")
        assert cli.threads_from_env() == 3


class TestRadial:
    def test_parity_failure_is_usage_error(self, capsys):
        assert cli.main(["radial", "--K", "7", "--L", "8"]) == 2
        assert "Block Error" in capsys.readouterr().err

    def test_missing_block(self):
        assert cli.main(["radial"]) == 2

    def test_too_few_samples(self):
        assert cli.main(["radial", "--K", "0", "--L", "4", "--samples", "1"]) == 2

    def test_csv_profile(self, capsys):
        assert cli.main(["radial", "--K", "0", "--L", "4", "--samples", "32", "--format", "csv"]) == 0
        text = capsys.readouterr().out
        assert "# c_inf=5/2" in text.splitlines()
        rows = csv_rows(text)
        assert len(rows) == 32
        last = rows[-1]
        assert float(last["r"]) == pytest.approx(12.0)
        assert math.sinh(12.0) ** 4 * float(last["a4"]) == pytest.approx(2.5, rel=1e-4)


class TestBoundary:
    def test_single_block(self, capsys):
        assert cli.main(["boundary", "--K", "0", "--L", "4"]) == 0
        (row,) = json.loads(capsys.readouterr().out)
        assert row["c_inf"] == "5/2"
        assert row["relative_error"] <= 1e-4

    def test_sweep(self, capsys):
        assert cli.main(["boundary", "--Lmax", "8"]) == 0
        rows = {(row["K"], row["L"]): row for row in json.loads(capsys.readouterr().out)}
        assert rows[(4, 8)]["c_inf"] == "21"
        assert rows[(-4, 8)]["c_inf"] == "9/2"


def test_indicial(capsys):
    assert cli.main(["indicial", "--L", "8"]) == 0
    (record,) = json.loads(capsys.readouterr().out)
    assert record["order0_min"] == "6"
    assert record["lambda_min"] == "0"
    assert (record["delta_minus"], record["delta_plus"]) == ("0", "4")
    assert record["lambda_up"] == [-11, -9, -7, -5]
    assert (record["rejected_exponent"], record["regular_exponent"]) == (-14, 4)


def test_indicial_low_level_is_usage_error(capsys):
    assert cli.main(["indicial", "--L", "2"]) == 2
    assert "Block Error" in capsys.readouterr().err


class TestProjections:
    @pytest.fixture
    def spectrum_file(self, tmp_path):
        s = DeformationSpectrum(
            {BlockLabel(-6, 4): 1.0, BlockLabel(-8, 4): 2.0, BlockLabel(0, 8): 3.0}
        )
        path = tmp_path / "spectrum.json"
        moduli.dump_spectrum(s, path)
        return path

    def test_bland(self, spectrum_file, capsys):
        assert cli.main(["bland", "--spectrum", str(spectrum_file)]) == 0
        captured = capsys.readouterr()
        assert json.loads(captured.out) == [{"K": 0, "L": 8, "re": 3.0, "im": 0.0}]
        assert "1/3 coefficients kept" in captured.err

    def test_tangent_output_loads_back(self, spectrum_file, tmp_path):
        out = tmp_path / "tangent.json"
        assert cli.main(["tangent", "--spectrum", str(spectrum_file), "--out", str(out)]) == 0
        assert moduli.load_spectrum(out).support == [BlockLabel(-8, 4), BlockLabel(-6, 4)]

    def test_missing_spectrum(self):
        assert cli.main(["bland"]) == 2

    def test_unreadable_file(self, tmp_path):
        assert cli.main(["tangent", "--spectrum", str(tmp_path / "absent.json")]) == 2

    def test_real_flag_rejects_positive_K(self, tmp_path):
        path = tmp_path / "real.json"
        path.write_text('[{"K": 2, "L": 8, "re": 1.0}]', encoding="utf-8")
        assert cli.main(["bland", "--real", "--spectrum", str(path)]) == 2


def test_render_csv_preamble():
    text = cli.render([{"a": sympy.Rational(1, 3), "b": [1, 2]}], ("a", "b"), "csv", {"x": 1})
    lines = text.split("\r\n")
    assert lines[0] == "# x=1"
    assert lines[1] == "a,b"
    assert lines[2] == '1/3,"1,2"'
