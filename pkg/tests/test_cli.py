import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from minstrata.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_ag_basic():
    code, out, _ = run_cli("ag", "--genus", "1", "--marks", "1")
    assert code == 0
    record = json.loads(out)
    assert record["schema_version"] == "1"
    assert record["value"] == "-1/24"
    assert record["k"] == "1"


def test_ag_spin():
    code, out, _ = run_cli("ag", "--genus", "1", "--marks", "1", "--spin")
    assert code == 0
    assert json.loads(out)["value"] == "1/24"


def test_ag_genus0():
    code, out, _ = run_cli("ag", "--genus", "0", "--marks", "2,-1,-1,1")
    assert code == 0
    assert json.loads(out)["value"] == "1"


def test_ag_precondition_error():
    code, out, err = run_cli("ag", "--genus", "0", "--marks", "1")
    assert code == 2
    assert "error" in err


def test_ag_bad_marks():
    code, _, err = run_cli("ag", "--genus", "1", "--marks", "1,x")
    assert code == 2
    assert "integer" in err


def test_residues_subcommand():
    code, out, _ = run_cli(
        "residues", "--genus", "1", "--zero", "5", "--poles=-1,-1",
        "--conditions", "1",
    )
    assert code == 0
    assert json.loads(out)["value"] == "5/12"
    code, out, _ = run_cli(
        "residues", "--genus", "0", "--zero", "5", "--poles=-1,-1,-1",
        "--conditions", "1", "--method", "genus0",
    )
    assert code == 0
    assert json.loads(out)["value"] == "1"
    code, out, _ = run_cli(
        "residues", "--genus", "0", "--zero", "5", "--poles=-1,-1,-1",
        "--conditions", "0",
    )
    assert code == 0
    assert json.loads(out)["value"] == "1"


def test_residues_invalid_signature():
    code, _, err = run_cli(
        "residues", "--genus", "1", "--zero", "5", "--poles=1,-1",
        "--conditions", "1",
    )
    assert code == 2
    code, _, err = run_cli(
        "residues", "--genus", "1", "--zero", "5", "--poles=-1,-1",
        "--conditions", "0", "--method", "treesum",
    )
    assert code == 2


def test_euler_table_values():
    code, out, _ = run_cli("euler", "--max-genus", "6")
    assert code == 0
    rows = json.loads(out)["rows"]
    by_genus = {row["genus"]: row for row in rows}
    assert by_genus["6"]["chi_even"] == "-76466/63"
    assert by_genus["6"]["chi_odd"] == "-5841833/3120"
    assert by_genus["5"]["chi_even"] == "-693/40"
    assert by_genus["5"]["chi_odd"] == "-3933/110"
    assert by_genus["1"]["chi_even"] == "0"
    assert by_genus["1"]["chi_odd"] == "-1/12"


def test_euler_csv_and_table():
    code, out, _ = run_cli("euler", "--max-genus", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("genus,chi_total,chi_spin")
    assert lines[1].startswith("1,-1/12,1/12")
    code, out, _ = run_cli("euler", "--max-genus", "2", "--format", "table")
    assert code == 0
    assert out.splitlines()[0].startswith("genus")


def test_euler_bad_range():
    code, _, _ = run_cli("euler", "--min-genus", "3", "--max-genus", "2")
    assert code == 2


def test_components_single():
    code, out, _ = run_cli("components", "--genus", "4")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["chi_nonhyp_odd"] == "-179/144"
    assert row["hyp_parity"] == "odd"


def test_verify_exit_codes_and_determinism():
    code, out1, _ = run_cli("verify", "--suite", "regrouping", "--max-genus", "6")
    assert code == 0
    report = json.loads(out1)
    assert report["passed"] is True
    code, out2, _ = run_cli("verify", "--suite", "regrouping", "--max-genus", "6")
    assert out1 == out2


def test_verify_seeded_suite_reproducible():
    args = ("verify", "--suite", "identities", "--max-genus", "2",
            "--samples", "20", "--seed", "7")
    code1, out1, _ = run_cli(*args)
    code2, out2, _ = run_cli(*args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_bad_suite():
    with pytest.raises(SystemExit) as exc:
        run_cli("verify", "--suite", "nonsense")
    assert exc.value.code == 2


def test_asymptotics():
    code, out, _ = run_cli("asymptotics", "--max-genus", "3")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["chi"] == "-1/12"
    assert rows[0]["chi_spin"] == "1/12"
    for row in rows:
        assert row["chi_negative"] is True
        assert row["chi_spin_positive"] is True
        assert "ratio_over_4_decimal" in row and "ratio_over_3_decimal" in row


def test_rationals_roundtrip_in_output():
    from minstrata.series import parse_rational

    code, out, _ = run_cli("euler", "--max-genus", "4")
    assert code == 0
    for row in json.loads(out)["rows"]:
        for key, value in row.items():
            if key in ("genus", "hyp_parity") or value == "":
                continue
            parse_rational(value)  # must not raise
