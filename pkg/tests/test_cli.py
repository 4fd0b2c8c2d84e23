import io
import json
import re

import pytest

from regmaps.cli import build_parser, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def test_verify_pgl7(capsys):
    code, rep = run_json(capsys, "verify", "pgl2:7", "--type", "3,8")
    assert code == 0 and rep["pass"] and rep["schema"] == 1
    cert = rep["items"][0]
    assert cert["chi"] == -7 and cert["non_orientable"] and cert["order"] == 336
    assert (cert["r"], cert["d"]) == (7, 1)


def test_verify_h_descriptors(capsys):
    code, rep = run_json(capsys, "verify", "h2:3,5", "--no-lemmas")
    assert code == 0 and rep["items"][0]["chi"] == -7
    code, rep = run_json(capsys, "verify", "h3:15", "--no-lemmas")
    assert code == 0 and rep["items"][0]["chi"] == -11


def test_census_psl5(capsys):
    code, rep = run_json(capsys, "census", "psl2:5")
    assert code == 0
    types = {(it["m"], it["n"]): it for it in rep["items"]}
    assert types[(5, 5)]["classes_of_type"] == 1 and types[(5, 5)]["chi"] == -3
    assert types[(3, 5)]["chi"] == 1 and not types[(3, 5)]["hyperbolic"]


def test_family_rows(capsys):
    code, rep = run_json(capsys, "family", "--row", "B3", "--max", "100")
    assert code == 0 and rep["items"][0]["pass"]
    code, rep = run_json(capsys, "family", "--row", "C3", "--r", "7", "--d", "1")
    assert code == 0 and {(it["j"], it["k"]) for it in rep["items"]} == {(3, 5)}


def test_tables(capsys):
    code, rep = run_json(capsys, "tables", "--all")
    assert code == 0 and rep["pass"] and len(rep["items"]) == 18


def test_cover_rank(capsys):
    code, rep = run_json(
        capsys, "cover-rank", "--group", "pgl2:5", "--type", "5,4", "--r", "3"
    )
    assert code == 0
    item = rep["items"][0]
    assert item["expected"] == item["computed"] == 31 and item["pass"]
    assert item["matrix_cols"] == 241


def test_snf_file(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("2 2\n2 4\n6 8\n")
    code, rep = run_json(capsys, "snf", str(f))
    assert code == 0
    assert rep["items"][0]["invariant_factors"] == "2,4"
    assert rep["items"][0]["free_rank"] == 0


def test_scan_pgl(capsys):
    code, rep = run_json(capsys, "scan-pgl", "--bound", "121")
    assert code == 0
    assert [(it["q"], it["m"], it["n"], it["r"]) for it in rep["items"]] == [
        (5, 4, 5, 3),
        (5, 4, 6, 5),
        (7, 3, 8, 7),
    ]


def test_cell_descriptor(capsys):
    code, rep = run_json(capsys, "verify", "cell:h1:4,3", "--no-lemmas")
    assert code == 0
    assert (rep["items"][0]["m"], rep["items"][0]["n"]) == (2, 12)


def test_reports_deterministic(capsys):
    _c1, rep1 = run_json(capsys, "census", "pgl2:5")
    _c2, rep2 = run_json(capsys, "census", "pgl2:5")
    rep1.pop("seconds")
    rep2.pop("seconds")
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)


def test_bad_descriptor(capsys):
    assert main(["verify", "sporadic:1", "--type", "3,7"]) == 2


def test_failing_check_exits_nonzero(capsys):
    # no (2,7,3)*-triple in PSL2(7): definitive refusal
    code, rep = run_json(capsys, "verify", "psl2:7", "--type", "7,3")
    assert code == 1 and not rep["pass"]


def test_tsv_and_text_formats(capsys):
    code, out = run_cli(capsys, "--format", "tsv", "scan-pgl", "--bound", "121")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["d", "m", "n", "q", "r"]
    assert lines[-1] == "pass\tTrue"
    code, out = run_cli(capsys, "--format", "text", "tables")
    assert code == 0 and out.strip().endswith("pass: True")


def test_parser_has_all_subcommands():
    ap = build_parser()
    subs = next(
        a for a in ap._actions if isinstance(a, type(ap._subparsers._group_actions[0]))
    )
    names = set(subs.choices)
    assert {
        "verify",
        "census",
        "family",
        "tables",
        "corollary",
        "cover-rank",
        "snf",
        "scan-pgl",
    } <= names
