import json
import subprocess
import sys

import pytest

from mcgpres.arb import b1r_presentation, b21_presentation
from mcgpres.cli import run
from mcgpres.export import ExportSyntaxError, cas_name, check_gap, check_magma, render, to_text
from mcgpres.mcg import MapoParams, mapo_presentation
from mcgpres.presentations import Presentation
from mcgpres.verify import structural_check
from mcgpres.words import Word, abstract, stable, swap, twist

BUILDS = {
    "mapo23": lambda: mapo_presentation(MapoParams(2, 3)),
    "b1r3": lambda: b1r_presentation(3),
    "b21": lambda: b21_presentation(),
}


def test_cas_names():
    assert cas_name(twist("y", 3, 5)) == "y_3_5"
    assert cas_name(swap(0, 2)) == "b_0_2"
    assert cas_name(stable("e1")) == "st_e1"


@pytest.mark.parametrize("name", list(BUILDS))
def test_json_round_trip(name):
    p = BUILDS[name]()
    text = p.dumps()
    q = Presentation.loads(text)
    assert structural_check(q)["ok"]
    assert q.dumps() == text
    assert [r.deltas for r in q.relations] == [r.deltas for r in p.relations]


@pytest.mark.parametrize("name", list(BUILDS))
def test_cas_dialects_parse(name):
    p = BUILDS[name]()
    n = sum(1 for w in p.relators() if w)
    assert check_gap(render(p, "gap")) == n
    assert check_magma(render(p, "magma")) == n


def test_stable_letters_export():
    from tests_support import bs_presentation

    p = bs_presentation()
    assert check_gap(render(p, "gap")) == 1
    assert "st_y" in render(p, "magma")


def test_grammar_rejects():
    p = mapo_presentation(MapoParams(1, 2))
    gap = render(p, "gap")
    with pytest.raises(ExportSyntaxError):
        check_gap(gap.replace("];;", "]"))
    with pytest.raises(ExportSyntaxError):
        check_gap(gap.replace("x0^", "q^", 1))
    with pytest.raises(ExportSyntaxError):
        check_gap(gap.replace("F.2;;", "F.7;;"))
    magma = render(p, "magma")
    with pytest.raises(ExportSyntaxError):
        check_magma(magma.replace("|", ","))
    with pytest.raises(ExportSyntaxError):
        check_magma(magma + "junk")
    with pytest.raises(ExportSyntaxError):
        check_magma(magma.replace("*", "**", 1))


def test_empty_relator_list():
    a = abstract("a")
    p = Presentation((a,), ())
    assert check_gap(render(p, "gap")) == 0
    assert check_magma(render(p, "magma")) == 0


def test_text_format():
    text = to_text(mapo_presentation(MapoParams(1, 2)))
    assert "R5b: x0^2 = x1 b.1 x1 b.1" in text.splitlines()
    assert text.startswith("# ")


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_b1r(capsys):
    code, out, _ = cli(capsys, "generate", "b1r", "--r", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["generators"]) == 47
    assert sum(1 for g in data["generators"] if g.startswith("b.")) == 8


def test_generate_is_deterministic(capsys):
    first = cli(capsys, "generate", "mapo", "--g", "2", "--n", "3", "--format", "gap")[1]
    second = cli(capsys, "generate", "mapo", "--g", "2", "--n", "3", "--format", "gap")[1]
    assert first == second


def test_nf(capsys):
    code, out, _ = cli(capsys, "nf", "--type", "A2", "--word", "x1 x2 x1")
    assert code == 0
    assert json.loads(out) == {"type": "A2", "delta_power": 1, "factors": []}
    code, out, _ = cli(capsys, "nf", "--type", "E7", "--word", "(x1 x2 x3 x4 x5 x6 x7)^9")
    assert json.loads(out)["delta_power"] == 1


def test_verify_counts(tmp_path, capsys):
    path = tmp_path / "b21.json"
    assert run(["generate", "b21", "--out", str(path)]) == 0
    code, out, _ = cli(capsys, "verify", "counts", "--input", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["counts"]["twist"] == 93 and report["counts"]["swap"] == 21


def test_verify_suite(tmp_path, capsys):
    path = tmp_path / "b1r.json"
    run(["generate", "b1r", "--r", "3", "--out", str(path)])
    for check in ("counts", "perm", "abelian", "structure"):
        assert cli(capsys, "verify", check, "--input", str(path))[0] == 0, check
    code, out, _ = cli(capsys, "verify", "homogeneity", "--input", str(path))
    assert code == 1
    assert {e["tag"] for e in json.loads(out)["violations"]} == {"V0.R5c", "V2.R2", "V3.R2"}
    corrected = tmp_path / "b1r-c.json"
    run(["generate", "b1r", "--r", "3", "--mode", "corrected", "--out", str(corrected)])
    assert cli(capsys, "verify", "homogeneity", "--input", str(corrected))[0] == 0


def test_verify_enumerate(tmp_path, capsys):
    from mcgpres.artin import builtin_graph, coxeter_presentation

    path = tmp_path / "b3.json"
    path.write_text(coxeter_presentation(builtin_graph("B3")).dumps())
    code, out, _ = cli(capsys, "verify", "enumerate", "--input", str(path))
    assert code == 0 and json.loads(out)["order"] == 48
    code, out, _ = cli(capsys, "verify", "enumerate", "--input", str(path), "--max-cosets", "10")
    assert code == 1 and json.loads(out)["exhausted"] == 10


def test_enumerate(capsys):
    code, out, _ = cli(capsys, "enumerate", "--coxeter", "D4")
    assert code == 0 and json.loads(out)["order"] == 192
    assert cli(capsys, "enumerate", "--coxeter", "A4", "--max-cosets", "20")[0] == 1


@pytest.mark.parametrize("argv", [
    ["generate", "b1r", "--r", "2"],
    ["generate", "mapo", "--g", "0", "--n", "2"],
    ["generate", "mapo", "--g", "1", "--n", "1"],
    ["generate", "mapo", "--g", "1"],
    ["enumerate", "--coxeter", "A3", "--max-cosets", "0"],
    ["nf", "--type", "F4", "--word", "x1"],
    ["nf", "--type", "A2", "--word", "x3"],
    ["verify", "counts", "--input", "/nonexistent/file.json"],
    ["bogus"],
])
def test_argument_errors(argv, capsys):
    code, _, err = cli(capsys, *argv)
    assert code == 2
    assert "usage" in err


def test_bad_input_file(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert cli(capsys, "verify", "structure", "--input", str(path))[0] == 2
    a = abstract("a")
    path.write_text(Presentation((a,), ()).dumps())
    assert cli(capsys, "verify", "homogeneity", "--input", str(path))[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mcgpres", "nf", "--type", "A2", "--word", "x1^-1"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout) == {"type": "A2", "delta_power": -1, "factors": ["x1 x2"]}
