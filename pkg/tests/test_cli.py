import json

from binetkit import report, run_identity
from binetkit.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_eq1(capsys):
    code, out, _ = run_cli(capsys, "verify", "eq1", "--param", "n=2")
    assert code == 0
    assert "5/2" in out and "VERIFIED_EXACT" in out


def test_list_shows_registry(capsys):
    code, out, _ = run_cli(capsys, "list")
    assert code == 0
    for ident in ("eq1", "gould_check", "thm3.F", "horadam.w", "thm9.L", "sury"):
        assert ident in out


def test_printed_variant_refutes_with_exit_1(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "hm.L", "--param", "m=2", "--param", "s=0",
        "--variant", "paper-printed",
    )
    assert code == 1
    assert "REFUTED" in out


def test_expect_refuted_flag_downgrades_failure(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "hm.L", "--param", "m=2", "--param", "s=0",
        "--variant", "paper-printed", "--expect-refuted", "hm.L",
    )
    assert code == 0
    assert "REFUTED" in out


def test_json_output_is_harness_report_bytes(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "eq1", "--param", "n=3", "--format", "json"
    )
    assert code == 0
    record = run_identity("eq1", {"n": 3})
    assert out.encode() == report([record], "json")


def test_same_argv_twice_identical_output(capsys):
    argv = ("sweep", "thm5.L", "--grid", "s=-1..1", "--format", "json")
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert len(payload) == 3


def test_sweep_requires_ids_or_all(capsys):
    code, _, err = run_cli(capsys, "sweep")
    assert code == 2
    assert "error" in err or "sweep" in err


def test_usage_error_exit_2(capsys):
    assert main(["no-such-command"]) == 2
    code, _, err = run_cli(capsys, "verify", "eq1", "--param", "n=-1")
    assert code == 2


def test_horadam_rational_params(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "horadam.w", "--param", "n=3", "--param", "r=2",
        "--param", "s=-1", "--param", "a=1/2", "--param", "b=3", "--param", "p=3",
        "--param", "q=1",
    )
    assert code == 0 and "VERIFIED_EXACT" in out


def test_constants_listing(capsys):
    code, out, _ = run_cli(capsys, "constants", "--prec", "128")
    assert code == 0
    assert "pi = 3.14159" in out
    assert "cot(pi/5)" in out


def test_oeis_check_offline(capsys):
    code, out, _ = run_cli(capsys, "oeis-check", "A000045", "--terms", "51")
    assert code == 0 and "VERIFIED_EXACT" in out
    code, _, err = run_cli(capsys, "oeis-check", "A001582")
    assert code == 2 and "data-only" in err


def test_output_to_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "verify", "eq1", "--param", "n=2", "--format", "json",
        "--output", str(target),
    )
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload[0]["lhs"] == "5/2"


def test_env_var_sets_default_precision(capsys, monkeypatch):
    monkeypatch.setenv("BINETKIT_PRECISION", "320")
    code, out, _ = run_cli(
        capsys, "verify", "lehmer.j", "--param", "z=1/2", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)[0]["prec"] == 320
    monkeypatch.setenv("BINETKIT_PRECISION", "abc")
    code, _, err = run_cli(capsys, "verify", "eq1", "--param", "n=1")
    assert code == 2 and "BINETKIT_PRECISION" in err
