import json

import pytest

from polyfunctor.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dim_shift_tensor_square(capsys):
    code, out, _ = run_cli(capsys, "dim", "--functor", "shift(2,tensor(id,id))", "--n", "3")
    assert code == 0
    assert out.strip() == "25"


def test_dderiv_characteristic_five(capsys):
    code, out, _ = run_cli(
        capsys,
        "dderiv",
        "--field",
        "fp:5",
        "--poly",
        "y^25*z^2 + x^10*y^25*z",
        "--w-vars",
        "x,y",
        "--dir",
        "1,1",
    )
    assert code == 0
    assert out.strip() == "2*x^5*y^25*z"


def test_example_rank1_json(capsys):
    code, out, _ = run_cli(
        capsys, "example-rank1", "--n", "3", "--field", "q", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["h"] == "2*z_1_2"
    assert len(doc["certificate"]) == 3
    assert doc["all_passed"] is True
    assert doc["e0"] == 0
    assert doc["delta"]["value"] == 4


def test_hasse_and_taylor(capsys):
    code, out, _ = run_cli(
        capsys, "hasse", "--field", "q", "--poly", "x^6", "--w-vars", "x", "--dir", "1", "--r", "2"
    )
    assert code == 0
    assert out.strip() == "15*x^4"
    code, out, _ = run_cli(
        capsys, "taylor", "--field", "q", "--poly", "x^2", "--w-vars", "x"
    )
    assert code == 0
    assert out.strip() == "x^2 + 2*x*t*x_w + t^2*x_w^2"


def test_round_trip_of_printed_polynomials(capsys):
    from polyfunctor import GradedRing, parse_polynomial
    from conftest import F5

    code, out, _ = run_cli(
        capsys,
        "dderiv",
        "--field",
        "fp:5",
        "--poly",
        "y^25*z^2 + x^10*y^25*z",
        "--w-vars",
        "x,y",
        "--dir",
        "2,3",
    )
    ring = GradedRing(F5, ["x", "y", "z"])
    reparsed = parse_polynomial(out.strip(), ring)
    assert reparsed.to_text() == out.strip()


def test_round_trip_of_printed_functors(capsys):
    from polyfunctor import format_functor, parse_functor

    for text in (
        "shift(2,tensor(id,id))",
        "quot(shift(2,sum(tsym,talt)),5)",
        "sum(sym(2,id),ext(3,const(4)))",
    ):
        expr = parse_functor(text)
        assert parse_functor(format_functor(expr)) == expr


def test_decompose_output(capsys):
    code, out, _ = run_cli(capsys, "decompose", "--functor", "shift(2,tensor(id,id))")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree 0: p0 const(4) dim = 4"
    assert "tensor(id,id)" in lines[-1]


def test_compare_output(capsys):
    code, out, _ = run_cli(
        capsys,
        "compare",
        "--functor-a",
        "quot(shift(2,sum(tsym,talt)),5)",
        "--functor-b",
        "tensor(id,id)",
    )
    assert code == 0
    assert out.splitlines()[0] == "lex-smaller"


def test_shift_check_output(capsys):
    code, out, _ = run_cli(
        capsys, "shift-check", "--functor", "sym(3,id)", "--u", "2", "--n", "3"
    )
    assert code == 0
    assert "composite is identity: true" in out
    assert "top-degree part isomorphic: true" in out


def test_delta_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "delta",
        "--field",
        "q",
        "--vars",
        "z_1_2",
        "--weights",
        "2",
        "--generators",
        "z_1_2^2",
    )
    assert code == 0
    assert "delta: 4" in out


def test_proofstep_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "proofstep",
        "--field",
        "q",
        "--functor",
        "sum(tsym,talt)",
        "--u",
        "2",
        "--n",
        "2",
        "--f",
        "y_1_1*y_2_2 - y_1_2^2 + z_1_2^2",
        "--r0",
        "1",
        "--r-part",
        "p1",
    )
    assert code == 0
    assert "h: 2*z_1_2" in out
    assert "all passed: true" in out


def test_parse_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "dim", "--functor", "bogus(", "--n", "2")
    assert code == 2
    assert "parse error" in err


def test_domain_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "example-rank1", "--n", "3", "--field", "fp:2")
    assert code == 1
    assert "error" in err


def test_certificate_not_found_exit_code(capsys):
    # one element cannot eliminate three moving coordinates
    code, out, _ = run_cli(
        capsys,
        "proofstep",
        "--field",
        "q",
        "--functor",
        "sum(tsym,talt)",
        "--u",
        "2",
        "--n",
        "3",
        "--f",
        "y_1_1*y_2_2 - y_1_2^2 + z_1_2^2",
        "--r0",
        "1",
        "--r-part",
        "p1",
        "--phi",
        "1,0,0;0,1,0",
    )
    assert code == 3
    assert "INCONCLUSIVE certificate-found" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["dim"])  # missing required arguments
    assert exc.value.code == 2


def test_byte_identical_reports(capsys):
    args = ("example-rank1", "--n", "2", "--field", "q", "--seed", "3", "--format", "json")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_report_polynomials_reparse(capsys):
    from polyfunctor import parse_polynomial
    from polyfunctor.functors import SumF, TenAltF, TenSymF
    from polyfunctor.proofstep import coordinate_model
    from conftest import Q

    code, out, _ = run_cli(
        capsys, "example-rank1", "--n", "3", "--field", "q", "--format", "json"
    )
    doc = json.loads(out)
    big = coordinate_model(SumF((TenSymF(), TenAltF())), Q, 5).ring
    small = coordinate_model(SumF((TenSymF(), TenAltF())), Q, 2).ring
    assert parse_polynomial(doc["f"], small).to_text() == doc["f"]
    assert parse_polynomial(doc["h"], small).to_text() == doc["h"]
    for item in doc["k"]:
        assert parse_polynomial(item["value"], big).to_text() == item["value"]
    for entry in doc["certificate"]:
        assert parse_polynomial(entry["numerator"], big).to_text() == entry["numerator"]


def test_byte_identical_across_processes():
    import subprocess
    import sys

    cmd = [
        sys.executable,
        "-m",
        "polyfunctor",
        "example-rank1",
        "--n",
        "2",
        "--field",
        "fp:3",
        "--format",
        "json",
    ]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout


def test_induce_json(capsys):
    code, out, _ = run_cli(
        capsys,
        "induce",
        "--functor",
        "ext(2,id)",
        "--field",
        "q",
        "--phi",
        "1,2,0;3,4,0;0,0,1",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"][0][0] == "-2"  # det [[1,2],[3,4]]
