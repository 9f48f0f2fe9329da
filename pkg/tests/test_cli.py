"""End-to-end tests for the command-line interface.

Everything goes through ``main(argv)`` with captured stdout/stderr, which is
much faster than spawning subprocesses; one smoke test at the bottom checks
that ``python3 -m twinbuild`` is wired up at all.
"""

import json
import pathlib
import subprocess
import sys

import pytest

from twinbuild.building import standard_chamber, weyl_matrix
from twinbuild.cli import _matrix_text, _parse_matrix, main
from twinbuild.coxeter import word_to_affine


def run_cli(capsys, *argv):
    """Invoke the CLI and return (exit_code, stdout, stderr)."""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# golden text outputs
# ---------------------------------------------------------------------------


def test_codelta_of_standard_pair_is_empty_word(capsys):
    code, out, _ = run_cli(capsys, "codelta", "--n", "3")
    assert code == 0
    assert out == "\n"


def test_schubert_series_of_identity_is_one(capsys):
    code, out, _ = run_cli(
        capsys,
        "poincare", "schubert",
        "--type", "A3", "--quotient", "J=2,3", "--w", "",
    )
    assert code == 0
    assert out == "1\n"


def test_loop_series_degree_six(capsys):
    code, out, _ = run_cli(capsys, "poincare", "loop", "--n", "4", "--deg", "6")
    assert code == 0
    assert out == "[1,0,1,0,2,0,3]\n"


def test_bott_check_inside_guaranteed_window(capsys):
    code, out, _ = run_cli(capsys, "poincare", "bott-check", "--k", "2", "--deg", "5")
    assert code == 0
    assert out == "true\n"


def test_bott_check_reports_divergence(capsys):
    code, out, _ = run_cli(capsys, "poincare", "bott-check", "--k", "2", "--deg", "6")
    assert code == 0
    assert out == "false\n"


def test_coset_representatives_listing(capsys):
    code, out, _ = run_cli(
        capsys,
        "coxeter", "cosets",
        "--type", "A~3", "--quotient", "J=2,4", "--within", "K=1,2,4",
    )
    assert code == 0
    assert out.splitlines() == ["", "1", "2,1", "4,1", "2,4,1", "1,2,4,1"]


def test_coxeter_reduce_and_length(capsys):
    code, out, _ = run_cli(
        capsys, "coxeter", "reduce", "--type", "A2", "--word", "1,1,2",
    )
    assert code == 0
    assert out == "2\n"

    code, out, _ = run_cli(
        capsys, "coxeter", "length", "--type", "A2", "--word", "1,2,1",
    )
    assert code == 0
    assert out == "3\n"


def test_coxeter_bruhat_order(capsys):
    code, out, _ = run_cli(
        capsys, "coxeter", "bruhat", "--type", "A2", "--v", "1", "--w", "1,2,1",
    )
    assert code == 0
    assert out == "true\n"

    code, out, _ = run_cli(
        capsys, "coxeter", "bruhat", "--type", "A2", "--v", "1,2", "--w", "2,1",
    )
    assert code == 0
    assert out == "false\n"


def test_veronese_spherical_golden_line(capsys):
    code, out, _ = run_cli(
        capsys, "veronese", "spherical", "--flag", "1,0", "--weights", "1",
    )
    assert code == 0
    assert out == "-1/2,0;0,1/2\n"


def test_veronese_affine_vertex(capsys):
    code, out, _ = run_cli(capsys, "veronese", "affine", "--n", "2", "--k", "1")
    assert code == 0
    assert out == "1/2,0;0,-1/2\n"


def test_veronese_caveat_default_window(capsys):
    code, out, _ = run_cli(capsys, "veronese", "caveat", "--n", "2", "--deg", "6")
    assert code == 0
    assert out == "true\n"


# ---------------------------------------------------------------------------
# word distance round trips driven through the CLI
# ---------------------------------------------------------------------------


def test_delta_recovers_planted_word(capsys):
    d = standard_chamber("+", 3).rep @ weyl_matrix(word_to_affine((1, 2, 1), 3))
    code, out, _ = run_cli(
        capsys, "delta", "--side", "+", "--n", "3", "--d", _matrix_text(d),
    )
    assert code == 0
    assert out == "1,2,1\n"


def test_matrix_text_round_trips_through_delta(capsys):
    # Echoing a chamber matrix back into delta against itself gives the
    # identity word, so the compact matrix format is parse/print stable.
    d = standard_chamber("+", 3).rep @ weyl_matrix(word_to_affine((2, 1), 3))
    text = _matrix_text(d)
    assert _parse_matrix(text) == d
    code, out, _ = run_cli(
        capsys,
        "delta", "--side", "+", "--n", "3", "--c", text, "--d", text,
    )
    assert code == 0
    assert out == "\n"


def test_json_matrix_input_is_accepted(capsys):
    blob = json.dumps([["1", "z"], ["0", "1"]])
    code, out, _ = run_cli(
        capsys, "delta", "--side", "+", "--n", "2", "--d", blob,
    )
    assert code == 0
    assert out == "\n"  # upper triangular, same chamber as the standard one


def test_coords_encode_decode_round_trip(capsys):
    code, out, _ = run_cli(
        capsys,
        "coords", "encode", "--n", "2",
        "--chamber", "1,0;z^2 + (i),1",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("word: ")
    assert lines[1].startswith("coords: ")
    word = lines[0].removeprefix("word: ")
    coords = lines[1].removeprefix("coords: ")

    code, out, _ = run_cli(
        capsys,
        "coords", "decode", "--n", "2",
        "--word", word, "--coords", coords,
    )
    assert code == 0
    recovered = _parse_matrix(out.strip())

    # Same chamber: distance from the original must be the empty word.
    code, out, _ = run_cli(
        capsys,
        "delta", "--side", "+", "--n", "2",
        "--c", "1,0;z^2 + (i),1", "--d", _matrix_text(recovered),
    )
    assert code == 0
    assert out == "\n"


def test_coords_decode_accepts_infinity(capsys):
    code, out, _ = run_cli(
        capsys,
        "coords", "decode", "--n", "2",
        "--word", "1", "--coords", "INF",
    )
    assert code == 0
    assert out.strip()  # some chamber matrix


def test_opposite_and_projection(capsys):
    code, out, _ = run_cli(
        capsys,
        "opposite", "--n", "2", "--cminus", "1,0;0,1", "--cplus", "1,0;0,1",
    )
    assert code == 0
    assert out == "true\n"

    code, out, _ = run_cli(
        capsys,
        "project", "--side", "+", "--basis", "1,0;0,1", "--keep", "0",
        "--chamber", "1,0;1,1",
    )
    assert code == 0
    gate = _parse_matrix(out.strip())
    assert (gate.nrows, gate.ncols) == (2, 2)


# ---------------------------------------------------------------------------
# JSON envelopes
# ---------------------------------------------------------------------------


def test_json_envelope_shape(capsys):
    code, out, _ = run_cli(
        capsys,
        "poincare", "loop", "--n", "4", "--deg", "6", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "twinbuild/1"
    assert doc["command"] == "poincare.loop"
    assert doc["parameters"] == {"n": 4, "deg": 6}
    assert doc["result"]["coefficients"] == [1, 0, 1, 0, 2, 0, 3]


def test_json_output_is_deterministic(capsys):
    args = ("codelta", "--n", "3", "--format", "json")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["result"]["word"] == []


def test_json_error_envelope(capsys):
    # With --format json the machine-readable envelope stays on stdout.
    code, out, _ = run_cli(
        capsys, "delta", "--side", "+", "--n", "2", "--d", "1,0;0,0",
        "--format", "json",
    )
    assert code == 3
    doc = json.loads(out)
    assert doc["schema"] == "twinbuild/1"
    assert doc["error"]["code"] == "not-invertible"
    assert "degenerate" in doc["error"]["message"]


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_domain_error_exits_three(capsys):
    code, _, err = run_cli(
        capsys, "delta", "--side", "+", "--n", "2", "--d", "1,0;0,0",
    )
    assert code == 3
    assert "not-invertible" in err


def test_usage_error_exits_two(capsys):
    code, _, err = run_cli(
        capsys, "coxeter", "reduce", "--type", "A2", "--word", "notaword",
    )
    assert code == 2
    assert err.startswith("usage error:")


def test_argparse_rejects_unknown_command(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_verification_failure_exits_one(capsys, monkeypatch):
    import twinbuild.verify as verify_mod

    def always_fails(col, rng, count):
        col.check(False, "forced failure")

    patched = dict(verify_mod._SUITES)
    patched["zz-fail"] = (always_fails, 1)
    monkeypatch.setattr(verify_mod, "_SUITES", patched)

    code, out, _ = run_cli(capsys, "verify", "zz-fail")
    assert code == 1
    assert "zz-fail: FAIL" in out
    assert "forced failure" in out


def test_verify_suite_success_and_reproducibility(capsys):
    args = ("verify", "caveat-window", "--seed", "0", "--format", "json")
    code, first, _ = run_cli(capsys, *args)
    assert code == 0
    code, second, _ = run_cli(capsys, *args)
    assert code == 0
    assert first == second
    doc = json.loads(first)
    (suite,) = doc["result"]["suites"]
    assert suite["suite"] == "caveat-window"
    assert suite["failed"] == 0
    assert suite["passed"] > 0


def test_verify_text_report(capsys):
    code, out, _ = run_cli(capsys, "verify", "cell-series")
    assert code == 0
    assert out.startswith("cell-series: ok (")


def test_envelopes_match_shipped_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema_path = (
        pathlib.Path(__file__).resolve().parent.parent
        / "docs" / "envelope.schema.json"
    )
    schema = json.loads(schema_path.read_text())

    _, out, _ = run_cli(
        capsys, "poincare", "loop", "--n", "4", "--deg", "6",
        "--format", "json",
    )
    jsonschema.validate(json.loads(out), schema)

    _, out, _ = run_cli(
        capsys, "delta", "--side", "+", "--n", "2", "--d", "1,0;0,0",
        "--format", "json",
    )
    jsonschema.validate(json.loads(out), schema)


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "twinbuild", "codelta", "--n", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "\n"
