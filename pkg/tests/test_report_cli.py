import json
import subprocess
import sys
from pathlib import Path

import pytest

from evoderive.cli import main, parse_matrix, InputError
from evoderive.field import FieldSpec, Matrix
from evoderive.graph import complete_graph, parse_graph
from evoderive.report import Report, build_report
from evoderive.solver import MAX_N_ENV
from evoderive.theory import CHECK_NAMES

from conftest import SEVEN_GF2_ROWS, SEVEN_TEXT

K23_TEXT = "5 6\n1 4\n1 5\n2 4\n2 5\n3 4\n3 5\n"


@pytest.fixture
def files(tmp_path: Path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_report_json_roundtrip(seven):
    rep = build_report(seven, FieldSpec(2))
    again = Report.from_json(rep.to_json())
    assert again == rep
    data = json.loads(rep.to_json())
    assert set(data) == {"graph", "char", "twin_classes", "prediction", "dimension", "basis", "checks"}
    assert list(data["checks"]) == list(CHECK_NAMES)
    assert len(data["basis"]) == data["dimension"]


def test_report_rationals_serialize():
    g = parse_graph("1 0\n")
    rep = build_report(g, FieldSpec(0))
    assert rep.basis == [[[1]]]
    assert Report.from_json(rep.to_json()) == rep


def test_analyze_text_and_json_agree(files, capsys):
    path = files("k23.txt", K23_TEXT)
    code, text, _ = run(["analyze", path, "--char", "3"], capsys)
    assert code == 0
    code, js, _ = run(["analyze", path, "--char", "3", "--json"], capsys)
    data = json.loads(js)
    assert data["dimension"] == 2
    assert "dimension: 2" in text
    for name, verdict in data["checks"].items():
        assert f"{name}: {verdict}" in text


def test_analyze_examples(files, capsys):
    fig = files("seven.txt", SEVEN_TEXT)
    code, js, _ = run(["analyze", fig, "--char", "2", "--json"], capsys)
    data = json.loads(js)
    assert code == 0
    assert data["twin_classes"] == [[1, 2], [3], [4], [5, 6, 7]]
    fld = FieldSpec(2)
    from evoderive.algebra import EvolutionAlgebra
    from evoderive.solver import DerivationSpace, membership

    g = parse_graph(SEVEN_TEXT)
    ds = DerivationSpace(EvolutionAlgebra.of_graph(g, fld), tuple(Matrix(fld, b) for b in data["basis"]))
    assert membership(ds, Matrix(fld, SEVEN_GF2_ROWS))

    code, js, _ = run(["analyze", files("p2.txt", "2 1\n1 2\n"), "--char", "7", "--json"], capsys)
    assert json.loads(js)["dimension"] == 0


def test_analyze_input_errors(files, capsys, monkeypatch):
    p2 = files("p2.txt", "2 1\n1 2\n")
    assert run(["analyze", p2, "--char", "4"], capsys)[0] == 2
    assert run(["analyze", files("bad.txt", "3 1\n1 1\n"), "--char", "3"], capsys)[0] == 2
    assert run(["analyze", str(Path(p2).parent / "missing.txt"), "--char", "3"], capsys)[0] == 2
    k5 = files("k5.txt", "5 10\n" + "".join(f"{i} {j}\n" for i in range(1, 6) for j in range(i + 1, 6)))
    assert run(["analyze", k5, "--char", "3", "--max-n", "4"], capsys)[0] == 2
    monkeypatch.setenv(MAX_N_ENV, "3")
    code, _, err = run(["analyze", k5, "--char", "3"], capsys)
    assert code == 2 and "cap" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1


def test_verify_examples(files, capsys):
    fig = files("seven.txt", SEVEN_TEXT)
    mat = files("d.txt", "\n".join(" ".join(map(str, r)) for r in SEVEN_GF2_ROWS))
    code, out, _ = run(["verify", fig, mat, "--char", "2"], capsys)
    assert code == 0 and "derivation: yes" in out

    p2 = files("p2.txt", "2 1\n1 2\n")
    code, out, _ = run(["verify", p2, files("id.txt", "1 0\n0 1\n"), "--char", "5"], capsys)
    assert code == 0 and "derivation: no" in out
    code, out, _ = run(["verify", p2, files("z.txt", "0 0\n0 0\n"), "--char", "5"], capsys)
    assert "derivation: yes" in out

    assert run(["verify", p2, files("bad.txt", "1 0 0\n0 1 0\n0 0 1\n"), "--char", "5"], capsys)[0] == 2
    assert run(["verify", p2, files("ragged.txt", "1 0\n0\n"), "--char", "5"], capsys)[0] == 2


def test_parse_matrix_fractions():
    q = FieldSpec(0)
    m = parse_matrix("1/2 0\n0 -3\n", q, 2)
    assert m[0, 0] == q("1/2")
    with pytest.raises(InputError):
        parse_matrix("1 a\n0 1\n", q)
    with pytest.raises(InputError):
        parse_matrix("1/3\n", FieldSpec(3))


def test_gen_examples(capsys, tmp_path):
    assert run(["gen", "--n", "1"], capsys)[1] == "1 0\n"
    code, out, _ = run(["gen", "--n", "5", "--edge-prob", "1"], capsys)
    assert parse_graph(out) == complete_graph(5)
    first = run(["gen", "--n", "8", "--seed", "42"], capsys)[1]
    assert first == run(["gen", "--n", "8", "--seed", "42"], capsys)[1]
    code, out, _ = run(["gen", "--n", "6", "--seed", "3", "--connected"], capsys)
    from evoderive.graph import is_connected

    assert is_connected(parse_graph(out))
    assert run(["gen", "--n", "4", "--edge-prob", "0", "--connected"], capsys)[0] == 2
    assert run(["gen", "--n", "3", "--edge-prob", "1.5"], capsys)[0] == 2
    assert run(["gen", "--n", "99"], capsys)[0] == 2
    target = tmp_path / "g.txt"
    assert run(["gen", "--n", "4", "-o", str(target)], capsys)[0] == 0
    assert parse_graph(target.read_text()).n == 4


def test_batch_small(capsys):
    code, out, _ = run(["batch", "--trials", "0"], capsys)
    assert code == 0 and "trials: 0" in out
    code, out, _ = run(["batch", "--trials", "3", "--max-n", "5", "--chars", "0,3", "--matrices", "10"], capsys)
    assert code == 0 and "all checks passed" in out
    with pytest.raises(SystemExit) as exc:
        main(["batch", "--chars", "0,4"])
    assert exc.value.code == 1


def test_module_entry_point(tmp_path):
    path = tmp_path / "p2.txt"
    path.write_text("2 1\n1 2\n")
    proc = subprocess.run([sys.executable, "-m", "evoderive", "analyze", str(path), "--char", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "dimension: 1" in proc.stdout
