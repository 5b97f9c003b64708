import csv
import io
from contextlib import redirect_stdout

from lqtlab import parse_polynomial
from lqtlab.cli import main


def run_cli(*argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(list(argv))
    return code, buffer.getvalue()


class TestClassifyCommand:
    def test_directional_certified(self):
        code, out = run_cli("classify", "--family", "directional")
        assert code == 0
        assert "classification: non-archimedean" in out
        assert "certainty: certified" in out

    def test_fibonacci_certified(self):
        code, out = run_cli("classify", "--family", "fibonacci")
        assert code == 0
        assert "classification: archimedean" in out

    def test_deterministic_output(self):
        first = run_cli("classify", "--family", "fibonacci")
        second = run_cli("classify", "--family", "fibonacci")
        assert first == second


class TestVerifyCommand:
    def test_sqrt8_blocks_pass(self):
        code, out = run_cli(
            "verify", "--family", "example77", "--sigma", "sqrt(8)", "--blocks", "3"
        )
        assert code == 0
        assert "all blocks pass" in out

    def test_requires_sigma_family(self):
        code, _ = run_cli("verify", "--family", "fibonacci")
        assert code == 1

    def test_block_csv(self, tmp_path):
        target = tmp_path / "blocks.csv"
        code, _ = run_cli(
            "verify",
            "--family",
            "example77",
            "--sigma",
            "sqrt(8)",
            "--blocks",
            "2",
            "--csv",
            str(target),
        )
        assert code == 0
        rows = list(csv.reader(target.open()))
        assert rows[0][0] == "block"
        assert rows[1][:4] == ["0", "0", "2", "2"]
        assert rows[2][:4] == ["1", "1", "3", "3"]
        assert all(row[-1] == "pass" for row in rows[1:])

    def test_rational_sigma_rejected(self):
        code, _ = run_cli("verify", "--family", "example77", "--sigma", "3")
        assert code == 1


class TestInvariantCommands:
    def test_invalid_normalizer_is_an_error(self):
        code, _ = run_cli("w", "--family", "directional", "--element", "y", "--normalizer", "y")
        assert code == 1

    def test_e_exit_code_tracks_certainty(self):
        code, out = run_cli("e", "--family", "directional", "--element", "x")
        assert code == 0 and "e(x) = 0 [certified]" in out
        code, out = run_cli("e", "--family", "directional", "--element", "x^3*y^2+y^5")
        assert code == 2 and "e(x^3*y^2+y^5) = 2" in out

    def test_tau_exact(self):
        code, out = run_cli("tau", "--family", "fibonacci")
        assert code == 0
        assert "tau = (3+sqrt(5))/2" in out

    def test_w_heuristic_exit(self):
        code, out = run_cli(
            "w", "--family", "directional", "--element", "x+y", "--normalizer", "x"
        )
        assert code in (0, 2)
        assert "w(x+y)" in out

    def test_cic_verdict(self):
        code, out = run_cli("cic", "--family", "cic3d", "--sigma", "sqrt(8)")
        assert code == 0
        assert "dependence: independent" in out
        assert "verdict: completely integrally closed" in out

    def test_witness_verdict(self):
        code, out = run_cli(
            "witness",
            "--family",
            "fibonacci3d",
            "--element",
            "z",
            "--element",
            "x*y",
            "--horizon",
            "40",
        )
        assert code == 0
        assert "witness(z, x*y): true" in out

    def test_boundary_pair(self):
        code, out = run_cli(
            "boundary",
            "--family",
            "fibonacci3d",
            "--element",
            "z",
            "--element",
            "x*y",
            "--horizon",
            "40",
        )
        assert "v(z / x*y) = (0 (exact), -1 (exact))" in out

    def test_boundary_nonarch_needs_uniformizer(self):
        code, _ = run_cli("boundary", "--family", "directional", "--element", "y")
        assert code == 1
        code, out = run_cli(
            "boundary", "--family", "directional", "--element", "y", "--uniformizer", "y"
        )
        assert "v(y) = (1 (exact), 0" in out


class TestTrackCommand:
    def test_report_and_csv(self, tmp_path):
        target = tmp_path / "stages.csv"
        code, out = run_cli(
            "track",
            "--family",
            "directional",
            "--element",
            "x^3*y^2+y^5",
            "--horizon",
            "6",
            "--window",
            "4",
            "--csv",
            str(target),
        )
        assert code == 0
        assert "transform orders: [5, 2, 2, 2, 2, 2, 2]" in out
        rows = list(csv.reader(target.open()))
        assert rows[0] == [
            "element",
            "n",
            "ord_n_a",
            "ord_n_transform",
            "partial_w_series_lo",
            "ratio_num",
            "ratio_den",
        ]
        assert rows[1][1:] == ["0", "5", "5", "5", "5", "1"]
        assert rows[2][1:] == ["1", "7", "2", "7", "7", "1"]

    def test_printed_polynomials_reparse(self):
        code, out = run_cli(
            "track",
            "--family",
            "directional",
            "--element",
            "x^3*y^2 + y^5",
            "--horizon",
            "4",
            "--window",
            "2",
        )
        assert code == 0
        element_lines = [l for l in out.splitlines() if l.startswith("element: ")]
        assert element_lines
        for line in element_lines:
            text = line.removeprefix("element: ")
            assert parse_polynomial(text, ["x", "y"]) == parse_polynomial(
                "x^3*y^2 + y^5", ["x", "y"]
            )


class TestConstructCommand:
    def test_block_table(self):
        code, out = run_cli(
            "construct", "--family", "example77", "--sigma", "sqrt(8)", "--blocks", "2"
        )
        assert code == 0
        assert "stages: 15" in out
        assert "n=0 pivot=x shifts=(y=1) value=1" in out
        assert "n=5 pivot=x shifts=() value=1/4" in out


class TestConfigFile:
    def test_load_and_override(self, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            """
[ring]
dim = 2
vars = ["x", "y"]

[sequence]
kind = "periodic"
moves = [{pivot = "x", shifts = {}}, {pivot = "y", shifts = {}}]

[query]
elements = ["y"]
normalizer = "x"
horizon = 40
"""
        )
        code, out = run_cli("w", "--config", str(cfg))
        assert code == 2  # window estimate, not certified
        assert "w(y)" in out

    def test_explicit_moves_with_shifts(self, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            """
[ring]
dim = 2
vars = ["x", "y"]

[sequence]
kind = "explicit"
moves = [
  {pivot = "x", shifts = {y = "1"}},
  {pivot = "y", shifts = {}},
  {pivot = "x", shifts = {}},
  {pivot = "x", shifts = {}},
]

[query]
elements = ["y"]
horizon = 4
window = 2
"""
        )
        code, out = run_cli("track", "--config", str(cfg))
        assert code == 0

    def test_bad_config_field(self, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text("[ring]\ndim = 1\n")
        code, _ = run_cli("classify", "--config", str(cfg))
        assert code == 1

    def test_unknown_variable_in_move(self, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            """
[sequence]
kind = "explicit"
moves = [{pivot = "q", shifts = {}}]
"""
        )
        code, _ = run_cli("track", "--config", str(cfg), "--element", "x")
        assert code == 1

    def test_missing_elements(self):
        code, _ = run_cli("e", "--family", "directional")
        assert code == 1
