import contextlib
import io
import json
from fractions import Fraction
from xml.dom import minidom

import pytest

import reference_values as ref
from alcovewalk import cli
from alcovewalk.macdonald import (
    Expansion,
    expand_E_monomial,
    hall_littlewood_product,
    pieri,
    product_P_P,
    product_X_E,
    specialize_expansion,
    tableau_pieri,
)
from alcovewalk.rootdata import datum_from_type


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = cli.main(list(argv))
    return status, out.getvalue(), err.getvalue()


def run_json(*argv):
    status, out, err = run(*argv, "--format", "json")
    assert status == 0, err
    return json.loads(out)


def test_product_pp_latex(A1):
    status, out, _ = run("product-pp", "--type", "A1", "--mu", "3", "--lambda", "5", "--format", "latex")
    assert status == 0
    assert out == product_P_P(A1, (3,), (5,)).to_text(latex=True) + "\n"
    assert out.count("P_{") == 4


def test_expand_e_sl3(A2):
    obj = run_json("expand-e", "--type", "A2", "--mu", "1,-2")
    exp = Expansion.from_json(A2.field, obj)
    assert exp == expand_E_monomial(A2, ref.NEG_ALPHA2)
    assert exp.scale(A2.field.t(Fraction(-1, 2))) == ref.sl3_E_neg_alpha2_monomials(A2)


def test_walk_count():
    assert run("walks", "--type", "A1", "--of", "x:-8", "--start", "1", "--count-only") == (0, "256\n", "")


@pytest.mark.parametrize(
    "argv",
    [
        ["product-pp", "--type", "A2", "--mu", "1,1", "--lambda", "2,0"],
        ["product-ep", "--type", "A2", "--mu", "1,-2", "--lambda", "1,0"],
        ["x-to-e", "--type", "A2", "--mu", "1,-2", "--lambda", "1,1"],
        ["p-to-e", "--type", "A2", "--lambda", "1,1"],
        ["pieri", "--type", "A2", "--j", "2", "--lambda", "1,1"],
    ],
)
def test_json_round_trip(argv):
    D = datum_from_type("A2")
    status, out, _ = run(*argv, "--format", "json")
    assert status == 0
    obj = json.loads(out)
    exp = Expansion.from_json(D.field, obj)
    again = json.dumps(exp.to_json(), sort_keys=True, indent=2, ensure_ascii=False)
    assert again + "\n" == out


def test_x_to_e_with_lambda(A2):
    obj = run_json("x-to-e", "--type", "A2", "--mu", "1,-2", "--lambda", "1,1")
    assert Expansion.from_json(A2.field, obj) == product_X_E(A2, (1, -2), (1, 1))


def test_pieri_variants(A2):
    for variant in ("PP", "PP-compressed", "EP"):
        obj = run_json("pieri", "--type", "A2", "--j", "1", "--lambda", "2,1", "--variant", variant)
        assert Expansion.from_json(A2.field, obj) == pieri(A2, 1, (2, 1), variant)
    obj = run_json("pieri", "--type", "A2", "--j", "1", "--lambda", "2,1", "--variant", "tableau")
    assert Expansion.from_json(A2.field, obj) == tableau_pieri(A2, 1, [3, 1, 0])


def test_hl_and_specialize(A2):
    obj = run_json("hl", "--type", "A2", "--mu", "1,1", "--lambda", "1,1")
    assert obj["walks"] == 7
    exp, _ = hall_littlewood_product(A2, (1, 1), (1, 1))
    assert Expansion.from_json(A2.field, obj) == exp
    obj = run_json("product-pp", "--type", "A2", "--mu", "1,1", "--lambda", "1,1", "--specialize", "q=0")
    assert Expansion.from_json(A2.field, obj) == specialize_expansion(product_P_P(A2, (1, 1), (1, 1)), "q=0")
    status, out, _ = run("hl", "--type", "A2", "--mu", "1,1", "--lambda", "1,1")
    assert status == 0 and out.rstrip().endswith("# walks: 7")


def test_trace(A1):
    obj = run_json("product-ep", "--type", "A1", "--mu", "3", "--lambda", "5", "--trace")
    assert len(obj["trace"]) == 18
    status, out, _ = run("product-ep", "--type", "A1", "--mu", "3", "--lambda", "5", "--trace")
    assert status == 0 and sum(line.startswith("# {") for line in out.splitlines()) == 18


def test_expanded_differs_from_factored():
    _, fact, _ = run("p-to-e", "--type", "A1", "--lambda", "2")
    _, expd, _ = run("p-to-e", "--type", "A1", "--lambda", "2", "--expanded")
    assert fact != expd
    assert "(1 - q^2)" in fact or "1 - q^2" in fact


def test_datum_file(tmp_path, A2):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(datum_from_type("A2").to_json()), encoding="utf-8")
    a = run_json("product-pp", "--datum", str(path), "--mu", "1,0", "--lambda", "1,0")
    b = run_json("product-pp", "--type", "A2", "--mu", "1,0", "--lambda", "1,0")
    assert a == b
    path.write_text('{"type": "A", "n": 2}', encoding="utf-8")
    assert run_json("p-to-e", "--datum", str(path), "--lambda", "1,1") == run_json("p-to-e", "--type", "A2", "--lambda", "1,1")


def test_walks_listing():
    status, out, _ = run("walks", "--type", "A2", "--of", "word:0,1,2", "--constraint", "dominant-closure")
    assert status == 0 and len(out.splitlines()) == 5
    rows = run_json("walks", "--type", "A2", "--of", "word:0,1,2")
    assert len(rows) == 8
    assert {r["mask"] for r in rows} == set(range(8))
    assert all({"type", "start", "steps", "stats"} <= set(r) for r in rows)
    two = run_json("walks", "--type", "A1", "--mu", "3", "--lambda", "4")
    assert len(two) == 18 and all("v" in r for r in two)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["product-pp", "--type", "A1", "--mu", "3"], 1),  # missing --lambda
        (["product-pp", "--type", "A2", "--mu", "1", "--lambda", "1,1"], 1),  # wrong rank
        (["product-pp", "--type", "A2", "--mu", "1,x", "--lambda", "1,1"], 1),
        (["bogus"], 1),
        (["p-to-e", "--datum", "/nonexistent.json", "--lambda", "1"], 1),
        (["product-ep", "--type", "A1", "--mu", "-8", "--lambda", "2", "--budget", "4"], 2),
        (["product-pp", "--type", "A2", "--mu", "1,-1", "--lambda", "1,1"], 3),
        (["pieri", "--type", "G2", "--j", "1", "--lambda", "1,0"], 3),
        (["render", "--type", "A3", "--of", "m:1,0,0"], 3),
    ],
)
def test_exit_codes(argv, code):
    status, _, err = run(*argv)
    assert status == code
    assert err


def test_budget_env(monkeypatch):
    monkeypatch.setenv("ALCOVE_WALK_BUDGET", "3")
    assert run("walks", "--type", "A1", "--of", "x:-8", "--count-only")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["render", "--type", "A1", "--of", "x:-3"],
        ["render", "--type", "A2", "--of", "word:0,1,2", "--all"],
        ["render", "--type", "A2", "--of", "word:pi1;2,0", "--all"],
        ["render", "--type", "A2", "--mu", "1,-2", "--lambda", "1,1", "--all"],
    ],
)
def test_render_svg_parses(argv):
    status, out, _ = run(*argv)
    assert status == 0
    doc = minidom.parseString(out)
    assert doc.documentElement.tagName == "svg"
    texts = "".join(n.firstChild.data for n in doc.getElementsByTagName("text") if n.firstChild)
    assert "H[" in texts and "+" in texts


def test_render_to_file(tmp_path):
    out = tmp_path / "w.svg"
    status, stdout, _ = run("render", "--type", "A2", "--of", "word:0,1,2", "--mask", "5", "--out", str(out))
    assert status == 0 and stdout == ""
    minidom.parse(str(out))
    assert run("render", "--type", "A2", "--of", "word:0,1,2", "--mask", "99")[0] == 3
