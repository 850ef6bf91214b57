# Tests for the command-line surface: output formats and exit codes.

import json
import pytest
from unittest.mock import patch
from src.thetaglue.cli import (
    EXIT_BAD_INPUT,
    EXIT_BAD_ORDER,
    EXIT_OK,
    EXIT_TOO_LARGE,
    format_report,
    main,
)
from src.thetaglue.core.diagnostics import CheckResult
from src.thetaglue.settings import ToolkitSettings


def run(argv, settings=None):
    return main(argv, settings=settings or ToolkitSettings())


def test_series_csv(capsys):
    """E4 as CSV."""
    assert run(["series", "E4", "--order", "8", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == "exponent,coefficient\n0,1\n2,240\n4,2160\n6,6720\n"


def test_series_plain(capsys):
    """Plain output has a header and tab-separated rows."""
    assert run(["series", "rho:0", "--order", "4"]) == EXIT_OK
    assert capsys.readouterr().out == "# rho:0 (known below q^4)\nq^0\t3\n"


def test_series_quarter_exponents(capsys):
    """theta2 rows carry fractional exponents."""
    assert run(["series", "theta2", "--order", "3", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == "exponent,coefficient\n1/4,2\n9/4,2\n"


def test_series_qs_format(capsys):
    """The qs format is the raw quarter grid."""
    assert run(["series", "h:0", "--order", "2", "--format", "qs"]) == EXIT_OK
    assert capsys.readouterr().out == "trunc=8\n0\t3\n"


def test_series_unknown(capsys):
    """Unknown names exit 2."""
    assert run(["series", "E6"]) == EXIT_BAD_INPUT
    assert "error:" in capsys.readouterr().err


def test_bad_order(capsys):
    """Non-positive orders exit 3."""
    assert run(["series", "E4", "--order", "0"]) == EXIT_BAD_ORDER


def test_identities(capsys):
    """A small identity run passes."""
    assert run(["identities", "--nmax", "3", "--order", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.rstrip().endswith("0 failed, 0 informational mismatches")


@pytest.mark.slow
def test_identities_default_run(capsys):
    """identities --nmax 10 at the default order reports every row as PASS."""
    assert run(["identities", "--nmax", "10"]) == EXIT_OK
    lines = capsys.readouterr().out.rstrip().splitlines()
    assert lines[-1].endswith("0 failed, 0 informational mismatches")
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_identities_nmax_too_small():
    """nmax below 3 exits 3."""
    assert run(["identities", "--nmax", "2"]) == EXIT_BAD_ORDER


def test_lattice_theta(write_spec, capsys):
    """D24 by cosets and theorem."""
    path = write_spec("ODD_8M", [3])
    assert run(["lattice-theta", "--spec", str(path), "--order", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# family=ODD_8M k=1 m=3 n=24 rank=24\n")
    assert "# gram: rank=24 det=1 integral=True even=True PASS" in out
    assert "q^2\t1104" in out
    assert "# cosets vs theorem: agree" in out


def test_lattice_theta_extended_reading(write_spec, capsys):
    """The extended reading for an l = 2 even lattice."""
    path = write_spec("EVEN_8M4", [1, 1, 0, 0])
    assert run(["lattice-theta", "--spec", str(path), "--order", "4", "--reading", "extended"]) == EXIT_OK
    assert "# cosets vs theorem: agree" in capsys.readouterr().out


def test_lattice_theta_enum(write_spec, capsys):
    """Three methods on E8."""
    path = write_spec("ODD_8M", [1])
    code = run(["lattice-theta", "--spec", str(path), "--order", "4", "--methods", "cosets,theorem,enum"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "# cosets vs enum: agree" in out
    assert "# theorem vs enum: agree" in out


def test_lattice_theta_bounds(write_spec, capsys):
    """Enumeration beyond the point limit exits 4."""
    path = write_spec("ODD_8M", [1])
    settings = ToolkitSettings(enum_max_points=10)
    assert run(["lattice-theta", "--spec", str(path), "--order", "4", "--methods", "enum"], settings) == EXIT_TOO_LARGE


def test_lattice_theta_bad_input(write_spec, tmp_path):
    """Invalid specs, missing files and unknown methods exit 2."""
    bad = write_spec("ODD_8M", [0])
    assert run(["lattice-theta", "--spec", str(bad)]) == EXIT_BAD_INPUT
    assert run(["lattice-theta", "--spec", str(tmp_path / "absent.json")]) == EXIT_BAD_INPUT
    good = write_spec("ODD_8M", [1], name="e8.json")
    assert run(["lattice-theta", "--spec", str(good), "--methods", "cosets,magic"]) == EXIT_BAD_INPUT


def test_sym_expand_pattern(capsys):
    """Six summands for one h block and two identical rho blocks."""
    assert run(["sym-expand", "h:2:+1,rho:1:-1,rho:1:-1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "h[m1+m2+1]*rho[m3-1]*rho[m4-1]"
    assert lines[-1] == "count: 6 (formula 6)"


def test_sym_expand_spec(write_spec, capsys):
    """Every term of the D8^3 display."""
    path = write_spec("ODD_8M", [1, 1, 1])
    assert run(["sym-expand", "--spec", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "count: 5"


@pytest.mark.parametrize("argv", [
    ["sym-expand"],
    ["sym-expand", "h"],
    ["sym-expand", "h:0:0"],
    ["sym-expand", "h:2:1", "--k", "3"],
])
def test_sym_expand_bad_input(argv):
    """Missing, malformed and mis-sized patterns exit 2."""
    assert run(argv) == EXIT_BAD_INPUT


def test_audit_counts(capsys):
    """The counts audit passes its asserted rows."""
    assert run(["audit", "counts", "--lmax", "3"]) == EXIT_OK
    assert "INFO" in capsys.readouterr().out


def test_audit_counts_bad_lmax():
    """lmax must be positive."""
    assert run(["audit", "counts", "--lmax", "0"]) == EXIT_BAD_ORDER


def test_audit_niemeier_csv(capsys):
    """Report rows as CSV."""
    assert run(["audit", "niemeier", "--order", "4", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name,status,asserted,detail"
    assert len(lines) == 1 + 8


def test_out_file(tmp_path, capsys):
    """--out writes the file instead of stdout."""
    target = tmp_path / "e4.csv"
    assert run(["series", "E4", "--order", "4", "--format", "csv", "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert target.read_text() == "exponent,coefficient\n0,1\n2,240\n"


def test_profile_log(tmp_path, monkeypatch):
    """THETAGLUE_PROFILE appends one JSON line per run."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("THETAGLUE_PROFILE", "1")
    run(["series", "E4", "--order", "2"])
    run(["series", "nope", "--order", "2"])
    lines = (tmp_path / "thetaglue_profile.jsonl").read_text().splitlines()
    records = [json.loads(line) for line in lines]
    assert [r["exit_code"] for r in records] == [0, 2]
    assert records[0]["verb"] == "series"


def test_new_spec(tmp_path, capsys):
    """new-spec writes a file that lattice-theta can load."""
    target = tmp_path / "d8_cubed.json"
    assert run(["new-spec", str(target), "--family", "ODD_8M", "--m", "1,1,1"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "# family=ODD_8M k=3 m=1,1,1 n=8,8,8 rank=24"
    assert json.loads(target.read_text()) == {"family": "ODD_8M", "k": 3, "m": [1, 1, 1], "epsilon": 0}
    assert run(["lattice-theta", "--spec", str(target), "--order", "4"]) == EXIT_OK


def test_new_spec_rejects(tmp_path):
    """Invalid parameters exit 2 and write nothing."""
    target = tmp_path / "bad.json"
    assert run(["new-spec", str(target), "--family", "ODD_8M", "--m", "1,1"]) == EXIT_BAD_INPUT
    assert run(["new-spec", str(target), "--family", "FOUR_BLOCK", "--m", "0,0,0,0", "--epsilon", "0.5"]) == EXIT_BAD_INPUT
    assert not target.exists()


def test_settings_verb(tmp_path, capsys):
    """settings prints the defaults; --set validates and saves."""
    path = tmp_path / "settings.json"
    with patch("src.thetaglue.settings._get_settings_path", return_value=path):
        assert run(["settings"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["enum_order"] == 6
        assert not path.exists()

        assert run(["settings", "--set", "enum_order=4", "--set", "output_format=csv"]) == EXIT_OK
        capsys.readouterr()
        saved = json.loads(path.read_text())
        assert saved["enum_order"] == 4
        assert saved["output_format"] == "csv"

        assert run(["settings", "--set", "max_workers=0"]) == EXIT_BAD_INPUT
        assert json.loads(path.read_text())["max_workers"] == 4


def test_format_report_plain():
    """Plain reports end with a summary line."""
    rows = [CheckResult("a", True), CheckResult("b", False, asserted=False, detail="q^1: x=1 y=2")]
    text = format_report(rows, "plain")
    assert "INFO  b  q^1: x=1 y=2" in text
    assert text.endswith("2 checks, 0 failed, 1 informational mismatches\n")
