import json

import pytest

from ybrace.cli import (
    ParseError,
    format_solution,
    main,
    parse_solution_text,
    read_solution,
    write_solution,
)
from ybrace.family import construct
from ybrace.solution import trivial_solution


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture()
def fam23_file(tmp_path, fam23):
    path = tmp_path / "fam23.txt"
    write_solution(fam23, str(path), "family solution for primes 2,3")
    return str(path)


# -- file format -------------------------------------------------------------


def test_format_parse_roundtrip(fam23):
    text = format_solution(fam23, "a comment\nsecond line")
    assert text.startswith("# a comment\n# second line\n6\n")
    S = parse_solution_text(text)
    assert S == fam23


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_solution_text("2\n1 1\n2 1\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_solution_text("# ok\n2\nx y\n")
    with pytest.raises(ParseError, match="empty"):
        parse_solution_text("# only comments\n")
    with pytest.raises(ParseError, match="expected 2 rows"):
        parse_solution_text("2\n2 1\n")


def test_read_write_roundtrip(tmp_path, fam23):
    path = tmp_path / "s.txt"
    write_solution(fam23, str(path))
    assert read_solution(str(path)) == fam23


# -- commands ----------------------------------------------------------------


def test_validate_ok(capsys, fam23_file):
    code, report = run_json(capsys, "validate", fam23_file)
    assert code == 0
    assert report == {"valid": True, "n": 6}


def test_validate_invalid_table(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 1\n1 2\n")  # mixed flip/identity rows: not a solution
    code, report = run_json(capsys, "validate", str(bad))
    assert code == 1
    assert report["valid"] is False and report["violations"]


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a number\n")
    code, report = run_json(capsys, "validate", str(bad))
    assert code == 3
    assert "parse_error" in report


def test_analyze_includes_brace_section(capsys, fam23_file):
    code, report = run_json(capsys, "analyze", fam23_file)
    assert code == 0
    assert report["solution"]["group_order"] == 18
    assert report["solution"]["mp_level"] == 2
    assert report["brace"]["socle_order"] == 9
    assert report["brace"]["sylow_orders"] == {"2": 2, "3": 9}


def test_analyze_decomposable_has_no_brace_section(capsys, tmp_path):
    path = tmp_path / "t.txt"
    write_solution(trivial_solution(3), str(path))
    code, report = run_json(capsys, "analyze", str(path))
    assert code == 0
    assert "brace" not in report


def test_construct_then_verify(capsys, tmp_path):
    out = tmp_path / "c.txt"
    code, _ = run(capsys, "construct", "--primes", "3,2", "-o", str(out))
    assert code == 0
    assert read_solution(str(out)) == construct([3, 2])
    code, report = run_json(capsys, "retract-tower", str(out))
    assert code == 0
    assert report == {"sizes": [6, 3, 1], "mp_level": 2}


def test_construct_rejects_bad_primes(capsys):
    code, report = run_json(capsys, "construct", "--primes", "4,3")
    assert code == 3
    assert "error" in report


def test_verify_theorems_flip(capsys, tmp_path):
    path = tmp_path / "flip.txt"
    path.write_text("2\n2 1\n2 1\n")
    code, report = run_json(capsys, "verify-theorems", str(path))
    assert code == 0
    assert report["ok"] is True
    assert report["kernel_chain"]["primes"] == [2]
    for section in (
        "sylow_decomposition",
        "chain_vs_sylow_products",
        "multipermutation",
        "abelian_sylow_retractability",
        "lambda_on_generators",
    ):
        assert report[section]["ok"] is True


def test_verify_theorems_preconditions(capsys, tmp_path):
    path = tmp_path / "t4.txt"
    write_solution(trivial_solution(4), str(path))
    code, report = run_json(capsys, "verify-theorems", str(path))
    assert code == 3
    assert report["preconditions"] == {
        "square_free": False,
        "indecomposable": False,
    }


def test_enumerate_writes_class_files(capsys, tmp_path):
    out = tmp_path / "classes"
    code, report = run_json(
        capsys, "enumerate", "--size", "3", "--out", str(out)
    )
    assert code == 0
    assert report["classes"] == 5 and report["written"] == 5
    files = sorted(out.iterdir())
    assert [f.name for f in files] == [
        f"size3_class{i:03d}.txt" for i in range(5)
    ]
    for f in files:
        assert read_solution(str(f)).validate() == []


def test_enumerate_size_cap(capsys):
    code, report = run_json(capsys, "enumerate", "--size", "6")
    assert code == 3 and "error" in report


def test_simple_check(capsys, tmp_path):
    flip = tmp_path / "flip.txt"
    flip.write_text("2\n2 1\n2 1\n")
    code, report = run_json(capsys, "simple-check", str(flip))
    assert code == 0
    assert report == {"n": 2, "simple": True, "congruences": 2}


def test_json_output_is_deterministic(capsys, fam23_file):
    _, first = run(capsys, "--format", "json", "analyze", fam23_file)
    _, second = run(capsys, "--format", "json", "analyze", fam23_file)
    assert first == second


def test_text_output_mentions_fields(capsys, fam23_file):
    code, out = run(capsys, "analyze", fam23_file)
    assert code == 0
    assert "group_order: 18" in out
    assert "socle_order: 9" in out
