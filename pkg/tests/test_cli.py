"""Command-line surface: parsing, reports, goldens, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from zonoforge.cli import main, parse_document
from zonoforge.errors import InputError

ROOT = Path(__file__).resolve().parent.parent
INPUTS = ROOT / "inputs"
GOLDEN = Path(__file__).resolve().parent / "golden"


def write_doc(tmp_path, payload):
    p = tmp_path / "doc.json"
    p.write_text(json.dumps(payload), encoding="utf-8")
    return str(p)


# -- document parsing ----------------------------------------------------------


def test_parse_document_rejects_unknown_fields():
    with pytest.raises(InputError, match="unknown document fields"):
        parse_document({"matrix": [[1, 0], [0, 1]], "bogus": 1})


def test_parse_document_requires_matrix():
    with pytest.raises(InputError, match="matrix"):
        parse_document({})


def test_parse_document_names_the_bad_entry():
    with pytest.raises(InputError, match=r"matrix\[0\]\[1\]"):
        parse_document({"matrix": [["1", "1/0"], ["0", "1"]]})


def test_parse_document_rejects_floats_and_bools():
    with pytest.raises(InputError):
        parse_document({"matrix": [[1.5, 0], [0, 1]]})
    with pytest.raises(InputError):
        parse_document({"matrix": [[True, 0], [0, 1]]})


def test_parse_document_rejects_ragged_matrix():
    with pytest.raises(InputError):
        parse_document({"matrix": [[1, 0], [0]]})


def test_parse_document_checks_index_ranges():
    with pytest.raises(InputError, match="out of range"):
        parse_document({"matrix": [[1, 0], [0, 1]], "i": [5]})
    with pytest.raises(InputError, match="iprime"):
        parse_document({"matrix": [[1, 0], [0, 1]], "iprime": [[0], [7]]})


def test_parse_document_seed_must_be_int():
    with pytest.raises(InputError, match="seed"):
        parse_document({"matrix": [[1, 0], [0, 1]], "seed": "7"})
    with pytest.raises(InputError, match="seed"):
        parse_document({"matrix": [[1, 0], [0, 1]], "seed": True})


def test_parse_document_lambda_holes_allowed():
    c, meta = parse_document(
        {"matrix": [[1, 0], [0, 1]], "lambda": ["3", None], "seed": 2}
    )
    assert c.lam[0] == 3 and c.lam[1] is None
    assert meta["seed"] == 2


def test_parse_document_iprime_closed_must_be_bool():
    with pytest.raises(InputError, match="iprime_closed"):
        parse_document({"matrix": [[1, 0], [0, 1]], "iprime_closed": 1})


# -- golden reports ------------------------------------------------------------

GOLDEN_RUNS = [
    ("matroid_example25_first.json", ["matroid", "--input", str(INPUTS / "example25_first.json")]),
    (
        "space_semi_external_example25_first.json",
        ["space", "--input", str(INPUTS / "example25_first.json"), "--kind", "semi_external"],
    ),
    (
        "space_central_triangle.json",
        ["space", "--input", str(INPUTS / "triangle.json"), "--kind", "central"],
    ),
    (
        "verify_t28_example25_first.json",
        ["verify", "--input", str(INPUTS / "example25_first.json"), "--theorem", "t28"],
    ),
    (
        "verify_t28_example25_second.json",
        ["verify", "--input", str(INPUTS / "example25_second.json"), "--theorem", "t28"],
    ),
    (
        "verify_t33_repeated.json",
        ["verify", "--input", str(INPUTS / "repeated.json"), "--theorem", "t33"],
    ),
    (
        "verify_pi_identity2.json",
        ["verify", "--input", str(INPUTS / "identity2.json"), "--theorem", "pi"],
    ),
    ("search_r37_n3c4.json", ["search-r37", "--max-n", "3", "--max-cols", "4"]),
]


@pytest.mark.parametrize("golden_name,argv", GOLDEN_RUNS, ids=[g for g, _ in GOLDEN_RUNS])
def test_golden_reports(tmp_path, capsys, golden_name, argv):
    out = tmp_path / "report.json"
    code = main(argv + ["--output", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "FAIL" not in captured.out
    assert out.read_bytes() == (GOLDEN / golden_name).read_bytes()


def test_reports_parse_and_carry_the_envelope():
    for golden_name, _ in GOLDEN_RUNS:
        doc = json.loads((GOLDEN / golden_name).read_text(encoding="utf-8"))
        assert set(doc) == {"command", "input", "result", "passed", "version"}
        assert doc["passed"] is True


# -- stdout / output modes -------------------------------------------------------


def test_json_goes_to_stdout_without_output_flag(capsys):
    code = main(["matroid", "--input", str(INPUTS / "triangle.json")])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["command"] == "matroid"
    assert len(doc["result"]["bases"]) == 3


def test_human_tables_accompany_output_flag(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(
        [
            "verify",
            "--input",
            str(INPUTS / "example25_first.json"),
            "--theorem",
            "t28",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    text = capsys.readouterr().out
    assert "[pass]" in text
    assert "holds: False" in text


def test_double_run_bytes_identical(tmp_path, capsys):
    doc = write_doc(tmp_path, {"matrix": [["1", "0", "1"], ["0", "1", "1"]], "seed": 3})
    runs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert main(["verify", "--input", doc, "--theorem", "pi", "--output", str(out)]) == 0
        runs.append(out.read_bytes())
    capsys.readouterr()
    assert runs[0] == runs[1]


def test_seed_flag_overrides_document(tmp_path, capsys):
    doc = write_doc(tmp_path, {"matrix": [["1", "0", "1"], ["0", "1", "1"]], "seed": 3})
    outputs = []
    for extra in ([], ["--seed", "4"]):
        out = tmp_path / f"s{len(extra)}.json"
        assert (
            main(["verify", "--input", doc, "--theorem", "pi", "--output", str(out)] + extra)
            == 0
        )
        outputs.append(json.loads(out.read_text(encoding="utf-8")))
    capsys.readouterr()
    assert outputs[0]["input"]["seed"] == 3
    assert outputs[1]["input"]["seed"] == 4
    # different seeds sample different offsets
    row = lambda rep: rep["result"]["checks"][0]["offsets"]
    assert row(outputs[0]) != row(outputs[1])


def test_dmax_renders_cover_kernel(tmp_path, capsys):
    out = tmp_path / "o.json"
    code = main(
        [
            "space",
            "--input",
            str(INPUTS / "triangle.json"),
            "--kind",
            "central",
            "--dmax",
            "2",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    capsys.readouterr()
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["result"]["d_space"] is not None


# -- exit codes ------------------------------------------------------------------


def test_exit_2_on_malformed_documents(tmp_path, capsys):
    bad = [
        {"matrix": [["1", "1/0"], ["0", "1"]]},
        {"matrix": [[1, 0], [0, 1]], "bogus": 3},
        {"matrix": [[0, 0], [0, 1]]},
    ]
    for payload in bad:
        code = main(["matroid", "--input", write_doc(tmp_path, payload)])
        err = capsys.readouterr().err
        assert code == 2
        assert err.startswith("input error:")


def test_exit_2_on_unreadable_or_invalid_files(tmp_path, capsys):
    code = main(["matroid", "--input", str(tmp_path / "missing.json")])
    assert code == 2
    bad = tmp_path / "notjson.json"
    bad.write_text("not json", encoding="utf-8")
    code = main(["matroid", "--input", str(bad)])
    assert code == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_exit_2_when_kind_lacks_its_field(tmp_path, capsys):
    doc = write_doc(tmp_path, {"matrix": [["1", "0"], ["0", "1"]]})
    assert main(["space", "--input", doc, "--kind", "semi_external"]) == 2
    assert main(["verify", "--input", doc, "--theorem", "t33"]) == 2
    err = capsys.readouterr().err
    assert "input error:" in err


def test_exit_1_on_certificate_failure(tmp_path, capsys):
    # equal fixed offsets on a doubled column can never become simple
    doc = write_doc(
        tmp_path,
        {"matrix": [["1", "1", "0"], ["0", "0", "1"]], "lambda": ["1", "1", None]},
    )
    code = main(["verify", "--input", doc, "--theorem", "pi"])
    err = capsys.readouterr().err
    assert code == 1
    assert err.startswith("certificate failure:")
    assert "SamplingExhausted" in err


def test_exit_2_on_fixed_non_simple_offsets(tmp_path, capsys):
    doc = write_doc(
        tmp_path,
        {"matrix": [["1", "0", "1"], ["0", "1", "1"]], "lambda": ["1", "1", "2"]},
    )
    code = main(["verify", "--input", doc, "--theorem", "pi"])
    capsys.readouterr()
    assert code == 2


def test_search_refuses_large_bounds(capsys):
    code = main(["search-r37", "--max-n", "4"])
    err = capsys.readouterr().err
    assert code == 2
    assert "bounds" in err


# -- console entry points --------------------------------------------------------


def test_console_script_runs():
    proc = subprocess.run(
        ["zonoforge", "matroid", "--input", str(INPUTS / "identity2.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "zonoforge", "matroid", "--input", str(INPUTS / "identity2.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "matroid"
