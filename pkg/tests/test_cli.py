"""End-to-end CLI tests, run in process through cli.main."""

import json

import pytest

from pbwhit.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, ["--format", "json"] + argv)
    assert out.endswith("\n") and out.count("\n") == 1
    return code, json.loads(out)


def test_output_flags_after_subcommand(capsys):
    code = main(["check-algebra", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_check_algebra_pass(capsys):
    code, env = run_json(capsys, ["check-algebra"])
    assert code == 0
    assert env["status"] == "pass"
    assert env["command"] == "check-algebra"
    assert env["payload"]["algebra"] == "schrodinger"
    assert env["payload"]["jacobi_checked_triples"] == 20
    assert env["payload"]["jacobi_ok"] is True
    assert env["payload"]["central"] == ["z"]


def test_envelope_shape_and_canonical_json(capsys):
    code, out = run(capsys, ["--format", "json", "center-check"])
    assert code == 0
    env = json.loads(out)
    assert set(env) == {
        "tool_version", "command", "timestamp", "status", "payload", "warnings",
    }
    # canonical form: sorted keys, no spaces
    assert out == json.dumps(env, sort_keys=True, separators=(",", ":")) + "\n"


def test_payload_byte_stable(capsys):
    argv = ["--format", "json", "whittaker", "--module", "universal_S",
            "--e", "0", "--p", "1", "--max-degree", "6"]
    _, env1 = run(capsys, argv)
    _, env2 = run(capsys, argv)
    env1, env2 = json.loads(env1), json.loads(env2)
    dump = lambda e: json.dumps(e["payload"], sort_keys=True, separators=(",", ":"))
    assert dump(env1) == dump(env2)
    assert env1["payload"]["dimension"] == 4


def test_exit_code_fail(capsys):
    # verma of highest weight 2 is not simple: f^3 generates a proper submodule
    code, env = run_json(capsys, [
        "probe-simplicity", "--module", "verma_alpha", "--alpha", "2",
        "--max-degree", "4",
    ])
    assert code == 1
    assert env["status"] == "fail"
    assert env["payload"]["extra_vectors"] == [[["f^3", "1/1"]]]


def test_exit_code_error(capsys):
    # M_a requires a nonzero p parameter
    code, env = run_json(capsys, [
        "whittaker", "--module", "M_a", "--a", "1", "--max-degree", "3",
    ])
    assert code == 2
    assert env["status"] == "error"
    assert env["payload"]["error_kind"] == "ModuleParameterError"
    assert env["payload"]["error"]


def test_bad_rational_flag_rejected(capsys):
    with pytest.raises(SystemExit) as err:
        main(["whittaker", "--module", "M_a", "--p", "0.5"])
    assert err.value.code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run(capsys, [
        "--format", "json", "--out", str(target), "phi-check",
    ])
    assert code == 0
    assert out == ""
    env = json.loads(target.read_text())
    assert env["status"] == "pass"
    assert all(ok for _, ok in env["payload"]["entries"])


def test_text_format(capsys):
    code, out = run(capsys, ["verify-identities", "--max-n", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("pbwhit ")
    assert "verify-identities" in lines[0] and "[pass]" in lines[0]
    assert lines[1].startswith("time: ")
    payload = json.loads("\n".join(lines[2:]))
    assert payload["max_n"] == 3
    assert payload["failures"] == []


def test_algebra_file(tmp_path, capsys):
    src = tmp_path / "tiny.alg"
    src.write_text(
        "gen f -2\ngen h 0\ngen e 2\n"
        "bracket f h = 2/1*f\nbracket f e = -1/1*h\nbracket h e = 2/1*e\n"
    )
    code, env = run_json(capsys, ["check-algebra", "--algebra", str(src)])
    assert code == 0
    assert env["payload"]["algebra"] == str(src)
    assert env["payload"]["jacobi_ok"] is True
    code, env = run_json(capsys, ["check-algebra", "--algebra", "no-such"])
    assert code == 2
    assert env["payload"]["error_kind"] == "AlgebraError"


def test_saturate(capsys):
    code, env = run_json(capsys, [
        "saturate", "--module", "universal_sl2", "--e", "0",
        "--generator", "w", "--max-degree", "3",
    ])
    assert code == 0
    assert env["payload"]["subspace_dimension"] == 10
    assert env["payload"]["quotient_dimension"] == 0
    # generator expression must use free generators of the module
    code, env = run_json(capsys, [
        "saturate", "--module", "universal_sl2", "--e", "0",
        "--generator", "q*w", "--max-degree", "3",
    ])
    assert code == 2


def test_filtration(capsys):
    code, env = run_json(capsys, [
        "filtration", "--e", "0", "--p", "1", "--a", "0",
        "--i-max", "1", "--max-degree", "4",
    ])
    assert code == 0
    assert env["payload"]["submodule_dimensions"] == [35, 10]
    assert env["payload"]["layer_dimensions"] == [25]


def test_tensor(capsys):
    code, env = run_json(capsys, [
        "tensor", "--e", "1", "--p", "0", "--z", "1", "--omega", "2",
    ])
    assert code == 0
    assert env["payload"]["certified"] is True
    code, env = run_json(capsys, ["tensor", "--e", "1", "--p", "2", "--z", "0"])
    assert code == 2  # z must be invertible


def test_invariants_module_role(capsys):
    code, env = run_json(capsys, [
        "invariants", "--module", "M_a", "--e", "0", "--p", "1", "--a", "3",
        "--max-degree", "4",
    ])
    assert code == 0
    inv = env["payload"]["invariants"]
    assert inv["c_scalar"] == "3/1"
    assert inv["type_p"] == "1/1"


def test_invariants_suite_role(capsys):
    code, env = run_json(capsys, ["invariants", "--seed", "1", "--cases", "5"])
    assert code == 0
    suites = env["payload"]["suites"]
    assert len(suites) == 5
    assert all(s["failures"] == [] for s in suites)
