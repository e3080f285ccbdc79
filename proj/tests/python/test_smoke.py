import json
import os
import random
import subprocess
from fractions import Fraction

import pytest

import twolc

CLI = os.environ.get("TWOLC_CLI")
needs_cli = pytest.mark.skipif(not CLI, reason="TWOLC_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)


def test_expand_and_images():
    alpha = "(3 + sqrt(17))/2"
    assert str(twolc.expand(alpha)) == "[(3; 1, 1)]"
    assert str(twolc.double(alpha)) == "[7; (8)]"
    assert str(twolc.halve(alpha)) == "[(1; 1, 3)]"
    assert str(twolc.halve_plus1(alpha)) == "[2; (3, 1, 1)]"
    assert str(twolc.double("[0; 1, (2)]")) == "[1; (2)]"


def test_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        cf = twolc.ContinuedFraction.periodic(
            rng.randint(-9, 9),
            [rng.randint(1, 50) for _ in range(rng.randint(0, 4))],
            [rng.randint(1, 50) for _ in range(rng.randint(1, 5))],
        )
        assert twolc.ContinuedFraction.parse(str(cf)) == cf
        s = twolc.surd(cf)
        assert twolc.QuadraticSurd.parse(str(s)) == s
        assert twolc.expand(s) == cf


def test_big_digits_are_python_ints():
    cf = twolc.ContinuedFraction.parse("[1; (123456789012345678901234567890)]")
    assert cf.period == [123456789012345678901234567890]


def test_parse_error():
    with pytest.raises(twolc.ParseError):
        twolc.ContinuedFraction.parse("[1; 2, x]")
    with pytest.raises(ValueError):
        twolc.QuadraticSurd.parse("(3 + sqrt(16))/2")


def test_classes_and_stats():
    assert twolc.class_key("(3 + sqrt(17))/4") == [1, 1, 3]
    assert twolc.equivalent("(3 + sqrt(17))/4", "(3 + sqrt(17))/2")
    assert twolc.self_similar("(3 + sqrt(17))/2")
    assert not twolc.self_similar("(3 + sqrt(17))/4")
    assert twolc.stats("[0; 9, (1, 2)]") == (9, 2)


def test_search_witness_chain():
    assert twolc.search(3)["K"] == 4
    w = twolc.witness("sqrt(226)")
    assert w["q"] == 1 and float(w["value"]) < 1 / 15
    assert w["bound"] == Fraction(1, 30)
    with pytest.raises(twolc.WitnessSearchExhausted):
        twolc.witness("(3 + sqrt(17))/2", k_cap=1)
    c = twolc.chain(5, 4)
    assert c["verified"] and len(c["checks"]) == 5


def test_scan_falsify_b2():
    hits = twolc.scan(2089, 2089, 6)
    assert any(h["Q"] == 6 and max(h["class_key"]) == 14 for h in hits)
    assert twolc.falsify(2, 5, 1)["ok"]
    assert twolc.verify_b2(5, 2)["ok"]


@needs_cli
def test_cli_search_json():
    r = run("search", "--C", "3")
    assert r.returncode == 0
    assert json.loads(r.stdout)["K"] == 4


@needs_cli
def test_cli_double_and_errors():
    r = run("double", "[(3; 1, 1)]")
    assert r.returncode == 0 and r.stdout.strip() == "[7; (8)]"
    r = run("double", "[1; 2, x]")
    assert r.returncode == 2
    assert "column 7" in r.stderr and "^" in r.stderr
    assert run("chain", "--m", "4", "--K", "2").returncode == 2
    assert run("search", "--C", "3", "--max-depth", "3").returncode == 1
    assert run("witness", "(3 + sqrt(17))/2", "--k-cap", "1").returncode == 1


@needs_cli
def test_cli_scan_csv():
    r = run("scan", "--d-min", "17", "--d-max", "17", "--q-max", "4", "--csv")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "D,Q,P,period_len,period_max,class_key"
    assert '"(1, 1, 3)"' in lines[1]
