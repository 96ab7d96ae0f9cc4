"""CLI behavior: reports, CSV output, exit codes, and the verify gateway."""

import numpy as np
import pytest

from ptsig import cli, cpt

_BELL_LINES = []
for _i in range(4):
    for _j in range(4):
        _BELL_LINES.append("0.5 0" if _i in (0, 3) and _j in (0, 3) else "0 0")
BELL_FILE_TEXT = "\n".join(_BELL_LINES) + "\n"


def _write_bell(tmp_path, name="bell.txt", text=BELL_FILE_TEXT):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestEvolve:
    _ARGS = [
        "evolve", "--s", "0.5", "--xi", "0.7", "--tau", "1.3",
        "--family", "werner", "--p", "0.8",
    ]

    def test_report_fields(self, capsys):
        assert cli.main(self._ARGS) == 0
        out = capsys.readouterr().out
        assert "family: werner  p=0.8" in out
        assert "mode: naive" in out
        assert "alpha: 0.523599" in out
        assert "t1: 1.12583" in out
        assert "signaling measure: 0.304648" in out
        assert "pre-renormalization trace: 1.54316" in out
        assert "analytic no-signaling predicate: false" in out

    def test_cpt_mode_reports_zero_measure(self, capsys):
        assert cli.main(self._ARGS[:-4] + ["--family", "werner", "--p", "0.8", "--mode", "cpt"]) == 0
        out = capsys.readouterr().out
        assert "mode: cpt" in out
        measure = float(out.split("signaling measure: ")[1].splitlines()[0])
        assert measure < 1e-12

    def test_tau_physical_conversion(self, capsys):
        args = [
            "evolve", "--family", "werner", "--p", "0.5",
            "--tau-physical", "2.0", "--J", "0.5", "--hbar", "1.0",
        ]
        assert cli.main(args) == 0
        assert "tau=1" in capsys.readouterr().out

    def test_both_tau_flags_rejected(self, capsys):
        args = self._ARGS + ["--tau-physical", "1.0"]
        assert cli.main(args) == 1
        assert "not both" in capsys.readouterr().err

    def test_missing_tau_rejected(self, capsys):
        args = ["evolve", "--family", "werner", "--p", "0.5"]
        assert cli.main(args) == 1
        assert "--tau or --tau-physical" in capsys.readouterr().err

    def test_broken_phase_is_domain_error(self, capsys):
        args = ["evolve", "--s", "2", "--tau", "1", "--family", "werner", "--p", "0.5"]
        assert cli.main(args) == 2
        assert "domain error" in capsys.readouterr().err

    def test_branch_point_is_domain_error(self, capsys):
        args = ["evolve", "--s", "1", "--t", "1", "--tau", "1", "--family", "werner", "--p", "0.5"]
        assert cli.main(args) == 2

    def test_out_of_range_p_is_domain_error(self, capsys):
        args = ["evolve", "--tau", "1", "--family", "werner", "--p", "3"]
        assert cli.main(args) == 2

    def test_missing_family_is_usage_error(self):
        assert cli.main(["evolve", "--tau", "1"]) == 1

    def test_missing_p_is_usage_error(self, capsys):
        assert cli.main(["evolve", "--tau", "1", "--family", "werner"]) == 1
        assert "requires --p" in capsys.readouterr().err


class TestCustomState:
    def test_bell_file_matches_werner_p_one(self, tmp_path, capsys):
        path = _write_bell(tmp_path)
        args = [
            "evolve", "--s", "0.5", "--xi", "0.7", "--tau", "1.3",
            "--family", "custom", "--state-file", path,
        ]
        assert cli.main(args) == 0
        out = capsys.readouterr().out
        assert "signaling measure: 0.380811" in out
        assert "n/a (custom state)" in out

    def test_custom_requires_state_file(self, capsys):
        assert cli.main(["evolve", "--tau", "1", "--family", "custom"]) == 1
        assert "requires --state-file" in capsys.readouterr().err

    def test_custom_rejects_p(self, tmp_path):
        path = _write_bell(tmp_path)
        args = ["evolve", "--tau", "1", "--family", "custom", "--state-file", path, "--p", "0.5"]
        assert cli.main(args) == 1

    def test_state_file_on_named_family_rejected(self, tmp_path):
        path = _write_bell(tmp_path)
        args = ["evolve", "--tau", "1", "--family", "werner", "--p", "0.5", "--state-file", path]
        assert cli.main(args) == 1

    def test_wrong_line_count(self, tmp_path, capsys):
        path = _write_bell(tmp_path, text="\n".join(_BELL_LINES[:15]) + "\n")
        args = ["evolve", "--tau", "1", "--family", "custom", "--state-file", path]
        assert cli.main(args) == 2
        assert "expected 16 data lines" in capsys.readouterr().err

    def test_non_numeric_entry(self, tmp_path):
        bad = list(_BELL_LINES)
        bad[5] = "zero 0"
        path = _write_bell(tmp_path, text="\n".join(bad) + "\n")
        args = ["evolve", "--tau", "1", "--family", "custom", "--state-file", path]
        assert cli.main(args) == 2

    def test_bad_trace_rejected(self, tmp_path, capsys):
        lines = ["0 0"] * 16
        lines[0] = lines[5] = lines[10] = "0.5 0"  # trace 1.5
        path = _write_bell(tmp_path, text="\n".join(lines) + "\n")
        args = ["evolve", "--tau", "1", "--family", "custom", "--state-file", path]
        assert cli.main(args) == 2
        assert "trace" in capsys.readouterr().err

    def test_missing_file_is_io_error(self, tmp_path, capsys):
        args = [
            "evolve", "--tau", "1", "--family", "custom",
            "--state-file", str(tmp_path / "nope.txt"),
        ]
        assert cli.main(args) == 3
        assert "i/o error" in capsys.readouterr().err

    def test_blank_lines_skipped(self, tmp_path, capsys):
        spaced = "\n\n".join(_BELL_LINES) + "\n"
        path = _write_bell(tmp_path, text=spaced)
        args = [
            "evolve", "--s", "0.5", "--xi", "0.7", "--tau", "1.3",
            "--family", "custom", "--state-file", path,
        ]
        assert cli.main(args) == 0
        assert "0.380811" in capsys.readouterr().out


class TestSweep:
    _BASE = ["sweep", "--s", "0,0.5,1", "--p", "0.5", "--out"]

    def test_csv_shape_and_header(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert cli.main(self._BASE + [str(out)]) == 0
        assert f"wrote 3 records to {out}" in capsys.readouterr().out
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == cli.CSV_HEADER
        assert len(lines) == 4

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli.main(self._BASE + [str(a)]) == 0
        assert cli.main(self._BASE + [str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_flagged_row_fields_empty(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert cli.main(self._BASE + [str(out)]) == 0
        rows = [ln.split(",") for ln in out.read_text(encoding="utf-8").splitlines()[1:]]
        by_status = {row[-1]: row for row in rows}
        flagged = by_status["branch_point"]
        assert flagged[1] == "1"  # the s grid coordinate survives
        assert flagged[5] == flagged[6] == flagged[10] == flagged[11] == ""
        ok = by_status["ok"]
        assert all(field != "" for field in ok)

    def test_stdout_target(self, capsys):
        assert cli.main(["sweep", "--p", "0.5", "--out", "-"]) == 0
        out = capsys.readouterr().out
        assert out.startswith(cli.CSV_HEADER + "\n")
        assert out.endswith("\n")
        assert len(out.splitlines()) == 2

    def test_linspace_grid(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert cli.main(["sweep", "--p", "0.1:1:10", "--out", str(out)]) == 0
        rows = out.read_text(encoding="utf-8").splitlines()[1:]
        ps = [float(row.split(",")[8]) for row in rows]
        np.testing.assert_allclose(ps, np.linspace(0.1, 1, 10), rtol=1e-15)

    def test_precision_flag(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert cli.main(self._BASE[:-1] + ["--precision", "6", "--out", str(out)]) == 0
        numeric_cols = (0, 1, 2, 3, 4, 5, 6, 8, 10, 11)
        for line in out.read_text(encoding="utf-8").splitlines()[1:]:
            fields = line.split(",")
            for idx in numeric_cols:
                if fields[idx]:  # flagged rows leave derived fields empty
                    # %.6g output reformats to itself
                    assert fields[idx] == f"{float(fields[idx]):.6g}"

    def test_both_modes_and_families(self, tmp_path):
        out = tmp_path / "sweep.csv"
        args = [
            "sweep", "--p", "0.3,0.6", "--family", "werner,classical",
            "--mode", "naive,cpt", "--out", str(out),
        ]
        assert cli.main(args) == 0
        rows = out.read_text(encoding="utf-8").splitlines()[1:]
        assert len(rows) == 8
        assert {row.split(",")[7] for row in rows} == {"werner", "classical"}
        assert {row.split(",")[9] for row in rows} == {"naive", "cpt"}

    def test_bad_p_range_is_config_error(self, tmp_path, capsys):
        args = ["sweep", "--family", "classical", "--p", "-0.2", "--out", str(tmp_path / "x.csv")]
        assert cli.main(args) == 1
        assert "config error" in capsys.readouterr().err

    def test_bad_grid_is_usage_error(self, capsys):
        assert cli.main(["sweep", "--p", "0.1:1", "--out", "-"]) == 1
        assert "bad grid" in capsys.readouterr().err

    def test_bad_precision_is_usage_error(self):
        assert cli.main(["sweep", "--p", "0.5", "--precision", "20", "--out", "-"]) == 1

    def test_unknown_family_is_usage_error(self):
        assert cli.main(["sweep", "--p", "0.5", "--family", "bogus", "--out", "-"]) == 1

    def test_unwritable_path_is_io_error(self, tmp_path, capsys):
        target = tmp_path / "missing-dir" / "sweep.csv"
        assert cli.main(["sweep", "--p", "0.5", "--out", str(target)]) == 3
        assert "i/o error" in capsys.readouterr().err


class TestVerify:
    def test_passes_cleanly(self, capsys):
        assert cli.main(["verify", "--seed", "7"]) == 0
        out = capsys.readouterr().out
        assert "25/25 suites passed" in out
        assert "FAIL" not in out

    def test_seeded_reruns_identical(self, capsys):
        assert cli.main(["verify", "--seed", "7"]) == 0
        first = capsys.readouterr().out
        assert cli.main(["verify", "--seed", "7"]) == 0
        assert capsys.readouterr().out == first

    def test_fault_injection_fails_suite(self, capsys, monkeypatch):
        real = cpt.charge_conjugation

        def corrupted(params):
            c = real(params).copy()
            c[0, 0] += 0.05
            return c

        monkeypatch.setattr(cpt, "charge_conjugation", corrupted)
        assert cli.main(["verify"]) == 4
        out = capsys.readouterr().out
        line = next(ln for ln in out.splitlines() if ln.startswith("charge-conjugation-square"))
        assert "FAIL" in line
        assert "25/25" not in out


class TestTopLevel:
    def test_help_exits_zero(self):
        assert cli.main(["--help"]) == 0

    def test_subcommand_help_exits_zero(self):
        assert cli.main(["sweep", "--help"]) == 0

    def test_no_command_is_usage_error(self):
        assert cli.main([]) == 1

    def test_unknown_command_is_usage_error(self):
        assert cli.main(["frobnicate"]) == 1
