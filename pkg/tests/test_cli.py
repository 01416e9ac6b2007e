import re
from pathlib import Path

import numpy as np
import pytest

from wfamin.cli import main
from wfamin.hankel import build_hankel
from wfamin.io import load_document

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_nilpotent_word(self, capsys):
        code, out, _ = run(capsys, "eval", str(FIXTURES / "nilpotent.wfa"), "ab")
        assert code == 0
        assert out.strip() == "1.0"

    def test_empty_word_gives_alpha_beta(self, capsys):
        code, out, _ = run(capsys, "eval", str(FIXTURES / "e1.wfa"), "")
        assert code == 0
        assert out.strip() == "1.0"

    def test_unknown_label_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", str(FIXTURES / "nilpotent.wfa"), "az")
        assert code == 2
        assert "unknown symbol" in err

    def test_unreadable_file_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", str(FIXTURES / "does-not-exist.wfa"), "a")
        assert code == 2


class TestApproximate:
    def test_e1_rank_zero_reports_four_thirds(self, capsys, tmp_path):
        out_file = tmp_path / "out.wfa"
        code, out, _ = run(
            capsys, "approximate", str(FIXTURES / "e1.wfa"), "0",
            "--mode", "aak", "--no-timestamp", "-o", str(out_file),
        )
        assert code == 0
        error_line = next(line for line in out.splitlines() if line.startswith("error:"))
        assert abs(float(error_line.split()[1]) - 4.0 / 3.0) < 1e-9
        assert out_file.exists()

    def test_e2_rank_one_certificate(self, capsys, tmp_path):
        out_file = tmp_path / "out.wfa"
        code, out, _ = run(
            capsys, "approximate", str(FIXTURES / "e2.wfa"), "1",
            "--mode", "aak", "--no-timestamp", "-o", str(out_file),
        )
        assert code == 0
        cert = next(line for line in out.splitlines() if line.startswith("certificate:"))
        deviation = float(re.search(r"within (\S+) relative", cert).group(1))
        assert deviation <= 1e-6
        assert load_document(out_file).wfa.num_states == 1

    def test_round_trip_reproduces_reported_error(self, capsys, tmp_path):
        out_file = tmp_path / "out.wfa"
        code, out, _ = run(
            capsys, "approximate", str(FIXTURES / "e2.wfa"), "1",
            "--mode", "aak", "--no-timestamp", "-o", str(out_file),
        )
        assert code == 0
        reported = float(
            next(line for line in out.splitlines() if line.startswith("achieved"))
            .split()[-1]
        )
        original = load_document(FIXTURES / "e2.wfa").wfa
        reloaded = load_document(out_file).wfa
        h = build_hankel(original, 63, 63).entries
        g = build_hankel(reloaded, 63, 63).entries
        assert abs(np.linalg.norm(h - g, 2) - reported) <= 1e-12

    def test_nilpotent_svd_reports_block_sigma(self, capsys, tmp_path):
        out_file = tmp_path / "out.wfa"
        code, out, _ = run(
            capsys, "approximate", str(FIXTURES / "nilpotent.wfa"), "1",
            "--mode", "svd", "--length", "5", "--no-timestamp", "-o", str(out_file),
        )
        assert code == 0
        block = build_hankel(load_document(FIXTURES / "nilpotent.wfa").wfa, 5, 5)
        sigma_1 = np.linalg.svd(block.entries, compute_uv=False)[1]
        reported = float(
            next(line for line in out.splitlines() if line.startswith("truncated-block"))
            .split()[-1]
        )
        assert reported == pytest.approx(sigma_1, rel=1e-12)
        assert load_document(out_file).wfa.num_states == 1

    def test_aak_on_multi_letter_exits_2(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "approximate", str(FIXTURES / "nilpotent.wfa"), "1",
            "--mode", "aak", "-o", str(tmp_path / "x.wfa"),
        )
        assert code == 2
        assert "one-letter" in err

    def test_k_out_of_range_exits_2(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "approximate", str(FIXTURES / "e2.wfa"), "5",
            "-o", str(tmp_path / "x.wfa"),
        )
        assert code == 2


class TestVerify:
    def test_hankel_eq_on_fixture(self, capsys):
        code, out, _ = run(
            capsys, "verify", str(FIXTURES / "nilpotent.wfa"),
            "--suite", "hankel-eq", "--no-timestamp",
        )
        assert code == 0
        assert "max discrepancy over fixtures: 0.0" in out
        assert out.strip().endswith("result: pass")

    def test_free_group_reports_violation(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "free-group", "--no-timestamp")
        assert code == 0
        assert "4.0 > 2.0" in out

    def test_shifts_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "shifts", "--degree", "4",
            "--trials", "20", "--no-timestamp",
        )
        assert code == 0
        assert "result: pass" in out

    def test_nc_rational_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "nc-rational", "--trials", "10",
            "--seed", "3", "--no-timestamp",
        )
        assert code == 0
        assert "head coefficient exactly: True" in out

    def test_all_suites_deterministic_output(self, capsys):
        _, first, _ = run(
            capsys, "verify", "--suite", "all", "--trials", "5",
            "--seed", "7", "--no-timestamp",
        )
        _, second, _ = run(
            capsys, "verify", "--suite", "all", "--trials", "5",
            "--seed", "7", "--no-timestamp",
        )
        assert first == second

    def test_timestamp_line_present_by_default(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "free-group")
        assert code == 0
        assert out.startswith("# generated: ")


class TestUsage:
    def test_no_command_exits_2(self, capsys):
        assert main([]) == 2

    def test_unknown_suite_exits_2(self, capsys):
        assert main(["verify", "--suite", "bogus"]) == 2
