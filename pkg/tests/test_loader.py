import pytest

from libstarprod.glue.gluing import identity_instance, moyal_two_chart
from libstarprod.liealg import InvalidAlgebra, builtin
from libstarprod.loader import LoaderError, load_algebra, load_gluing, resolve_algebra

SU2 = """\
# su(2) with [X,Y]=Z and cyclic permutations
name su2
dim 3
basis X Y Z
coordinates x y z
invariant x^2 + y^2 + z^2
bracket X Y = Z
bracket Y Z = X
bracket Z X = Y
"""

HEISENBERG = """\
name heisenberg
basis Q P E
coordinates q p e
invariant e
bracket Q P = E
"""

TWO_CHART = """\
variables q p
order 3
charts 1 2
product moyal
weight 1 = q^2
weight 2 = 1 - q^2
transition 2 1 = exp(h * (1/2)*d/dq*d/dp)
"""

IDENTITY = TWO_CHART.replace("exp(h * (1/2)*d/dq*d/dp)", "id")


def write(tmp_path, filename, content):
    path = tmp_path / filename
    path.write_text(content, encoding="UTF-8")
    return str(path)


@pytest.mark.parametrize(
    ("name", "content"), [("su2", SU2), ("heisenberg", HEISENBERG)]
)
def test_algebra_files_match_builtins(tmp_path, name, content):
    assert load_algebra(write(tmp_path, "algebra.alg", content)) == builtin(name)


def test_resolve_algebra(tmp_path):
    assert resolve_algebra("sl2").name == "sl2"
    algebra = resolve_algebra(write(tmp_path, "abelian.alg", "basis A B\n# none\n"))
    assert algebra.name == "abelian"
    assert algebra.coordinates == ("a", "b")
    assert algebra.structure == {}


def test_jacobi_violation_is_rejected(tmp_path):
    content = "basis A B C\nbracket A B = B\nbracket B C = A\n"
    path = write(tmp_path, "skew.alg", content)
    with pytest.raises(InvalidAlgebra):
        load_algebra(path)


@pytest.mark.parametrize(
    ("content", "line"),
    [
        ("basis A B\nsize 2\n", 2),
        ("bracket A B = A\n", 1),
        ("basis A B\nbracket A B = A*B\n", 2),
        ("basis A B\nbracket A C = A\n", 2),
        ("dim two\n", 1),
        ("dim 3\nbasis A B\n", 0),
    ],
)
def test_malformed_algebra_files(tmp_path, content, line):
    with pytest.raises(LoaderError) as info:
        load_algebra(write(tmp_path, "bad.alg", content))
    assert info.value.line == line


def test_missing_file():
    with pytest.raises(LoaderError) as info:
        resolve_algebra("does-not-exist.alg")
    assert info.value.line == 0


def test_gluing_file_matches_builtin(tmp_path):
    loaded = load_gluing(write(tmp_path, "two_chart.glue", TWO_CHART))
    built = moyal_two_chart(3)
    assert loaded.charts == built.charts
    assert loaded.weights == built.weights
    assert loaded.transitions["2", "1"] == built.transitions["2", "1"]


def test_gluing_order_override(tmp_path):
    loaded = load_gluing(write(tmp_path, "identity.glue", IDENTITY), order=2)
    assert loaded.order == 2
    assert loaded.transitions["2", "1"] == identity_instance(2).transitions["2", "1"]


def test_malformed_gluing(tmp_path):
    content = "variables q p\ncharts 1 2\nweight 1 = 1\ntransition 2 1 = log(h)\n"
    with pytest.raises(LoaderError) as info:
        load_gluing(write(tmp_path, "bad.glue", content))
    assert info.value.line == 4
