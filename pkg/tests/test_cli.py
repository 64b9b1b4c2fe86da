import json

import pytest

from cnls_symmetry.cli import EXIT_NOT_CLOSED, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "left, right, want",
    [("Z: 1", "Z: t^2", "Z: 2*t"), ("X: t", "X: 1", "W: 1/(2*p)"), ("X: 1", "Y: 1", "0")],
)
def test_bracket(capsys, left, right, want):
    code, out, _ = run(capsys, "bracket", left, right)
    assert code == EXIT_OK and out.splitlines()[0] == want


def test_bracket_with_binding(capsys):
    code, out, _ = run(capsys, "bracket", "X: t", "X: 1", "--bind", "p=2")
    assert out.splitlines()[0] == "W: 1/4"


def test_bracket_tree(capsys):
    code, out, _ = run(capsys, "bracket", "W: t", "Z: 1", "--format", "tree")
    assert json.loads(out)["element"] == "W: -1"


def test_parse_error(capsys):
    code, _, err = run(capsys, "bracket", "Z: t^", "Z: 1")
    assert code == EXIT_PARSE and "^" in err


def test_adjoint_and_flow(capsys):
    assert run(capsys, "adjoint", "W: t", "1", "Z: 1")[1].strip() == "Z: 1; W: 1"
    assert run(capsys, "flow", "translate", "--", "-a/2", "Z: 2*t + a")[1].strip() == "Z: 2*t"


def test_non_nilpotent_exit(capsys):
    assert run(capsys, "adjoint", "Z: 1", "1", "X: exp(t)")[0] == EXIT_PRECONDITION


def test_render(capsys):
    assert run(capsys, "render", "cos(t)*sin(t)")[1].strip() == "1/2*sin(2*t)"


def _write(tmp_path, text):
    path = tmp_path / "basis.txt"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_analyze_sl2(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", _write(tmp_path, "Z: 1\nZ: t\nZ: t^2\n"))
    assert code == EXIT_OK and "verdict: sl2" in out


def test_analyze_nilpotent(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", _write(tmp_path, "Z: 1\nW: 1\nW: t\n"), "--format", "tree")
    (node,) = json.loads(out)
    assert node["verdict"] == "solvable" and node["m_class"] == "M3_nilpotent"


def test_analyze_not_closed(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", _write(tmp_path, "Z: 1\nX: t\n"))
    assert code == EXIT_NOT_CLOSED and "residual: X: 1" in out


def test_analyze_dependent(capsys, tmp_path):
    assert run(capsys, "analyze", _write(tmp_path, "Z: 1\nZ: 2\n"))[0] == EXIT_PRECONDITION


def test_verify_table2(capsys):
    code, out, _ = run(capsys, "verify", "table2")
    assert code == EXIT_OK and out.strip() == "table2: 16/16 checks pass"


def test_verify_thm4(capsys):
    code, out, _ = run(capsys, "verify", "thm4")
    assert code == EXIT_OK and out.strip() == "thm4: 4/4 checks pass"


def test_verify_pde_out_file(capsys, tmp_path):
    out_path = tmp_path / "pde.json"
    code, _, _ = run(capsys, "verify", "pde", "--format", "tree", "--out", str(out_path))
    tree = json.loads(out_path.read_text(encoding="utf-8"))
    assert code == EXIT_OK and tree[0]["passed"]


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "jacobi", "--format", "tree")[1]
    assert run(capsys, "verify", "jacobi", "--format", "tree")[1] == first


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog-list", "--dim", "1")
    assert code == EXIT_OK and len(out.strip().splitlines()) == 4
