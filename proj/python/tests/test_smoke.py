import json
import pathlib

import pytest

import confdec

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"


def read(name):
    return (DATA / name).read_text()


def test_huet_is_not_confluent():
    result = confdec.check(read("huet.trs"))
    assert result["answer"] == "NO"
    assert result["verified"]
    report = json.loads(result["report"])
    assert report["schema"] == "confdec-report/1"
    assert report["trace"]["certificate"]["seed"] == "f(c,c)"


def test_disjoint_union_splits():
    assert confdec.modular_components(read("disjoint_union.trs")) == [[1], [2, 3, 4, 5, 6]]
    result = confdec.check(read("disjoint_union.trs"), method="modular")
    assert result["answer"] == "YES"
    assert result["verified"]


def test_currying():
    text = read("curry.trs")
    assert "@(@(f^0,x),x) -> @(@(f^0,a),b)" in confdec.curry(text)
    assert "@(f^1(x1),x2) -> f(x1,x2)" in confdec.uncurry_rules(text)
    assert confdec.u_normal_form(text, "@(@(@(f^0,x),x),x)") == "@(f(x,x),x)"


def test_round_trip():
    text = confdec.normalize(read("four_rules.trs"))
    assert confdec.normalize(text) == text


def test_parse_error():
    with pytest.raises(confdec.ConfdecError):
        confdec.normalize("(VAR x)(RULES x -> a)")


def test_sorts():
    assert confdec.infer_sorts(read("four_rules.trs")).startswith("SORTS")
