import json

import pytest

from libstarprod.command_line import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


@pytest.mark.parametrize(
    ("argv", "expected"),
    [
        (["bracket", "x", "y"], "z"),
        (["star", "x", "y"], "x*y + (1/2)*h*z"),
        (["weyl", "x*y"], "X*Y - (1/2)*h*Z"),
        (["unweyl", "Y*X"], "x*y - (1/2)*h*z"),
        (["normalize", "Y*X"], "X*Y - h*Z"),
        (["reduce", "Z^2"], "-X^2 - Y^2 + r^2"),
    ],
)
def test_single_results(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_json_output(capsys):
    code, out, _ = run(capsys, "star", "--format", "json", "x", "y")
    assert code == 0
    document = json.loads(out)
    assert document["status"] == "ok"
    assert document["result"] == "x*y + (1/2)*h*z"


def test_harmonic_decomposition(capsys):
    code, out, _ = run(capsys, "harm", "x^2")
    assert code == 0
    assert out.splitlines()[0] == "p^1 * (1/3)"


def test_passing_check(capsys):
    argv = ("check", "semiclassical", "--algebra", "heisenberg", "--degree", "3")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.startswith("PASS")


def test_failing_tangential_check(capsys):
    argv = ("tangential", "--degree", "2", "--h-order", "2", "--format", "json")
    code, out, _ = run(capsys, *argv)
    assert code == 1
    document = json.loads(out)
    assert document["status"] == "fail"
    witness = document["witnesses"][0]
    assert witness["h_order"] == "2"
    assert witness["remainder"] == "-(1/3)*x"


def test_fuzzy_spin_half(capsys):
    code, out, _ = run(capsys, "fuzzy", "--spin", "1/2", "--h", "1")
    assert code == 0
    assert out.splitlines()[0] == "rho(X) ="
    assert "level radius: r(r+h) = -c 1/2, -3/2" in out


def test_glue_demo(capsys):
    code, out, _ = run(capsys, "glue-demo", "--instance", "identity", "--degree", "1")
    assert code == 0
    assert "FAIL" not in out


def test_unknown_variable_is_a_usage_error(capsys):
    code, out, err = run(capsys, "star", "x", "w")
    assert code == 2
    assert out == ""
    assert "unknown variable w" in err


def test_json_usage_error(capsys):
    code, out, _ = run(capsys, "fuzzy", "--spin", "1/3", "--format", "json")
    assert code == 2
    assert json.loads(out)["status"] == "error"


def test_unknown_suite_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["check", "nope"])
    assert exit_info.value.code == 2


def test_tangential_defaults_to_the_algebra_invariant(capsys):
    argv = ("tangential", "--algebra", "heisenberg", "--degree", "2", "--h-order", "2")
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.startswith("PASS tangential weyl_S")


def test_tangential_without_invariant_needs_an_ideal(capsys, tmp_path):
    path = tmp_path / "abelian.alg"
    path.write_text("basis A B\n", encoding="UTF-8")
    code, out, err = run(capsys, "tangential", "--algebra", str(path))
    assert code == 2
    assert out == ""
    assert "pass --ideal" in err
