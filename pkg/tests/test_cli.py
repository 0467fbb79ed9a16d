import io
import json
import random
import subprocess
import sys
from pathlib import Path

import pytest

from zmfn.cli import main
from zmfn.endo import dumps, TypeI
from zmfn.words import Element, Word, format_element, parse_element

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def load_golden(path):
    lines = path.read_text().splitlines(keepends=True)
    argv = json.loads(lines[0].removeprefix("# args: "))
    code = int(lines[1].removeprefix("# exit: "))
    return argv, code, "".join(lines[2:])


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.txt")), ids=lambda p: p.stem)
def test_golden(path):
    argv, code, expected = load_golden(path)
    got_code, out, _ = run(*argv)
    assert got_code == code
    assert out == expected


def test_golden_exit_codes_cover_all_verdicts():
    codes = {load_golden(p)[1] for p in GOLDEN.glob("*.txt")}
    assert {0, 10, 20} <= codes


@pytest.mark.parametrize("family, src, tgt", [
    ("aut", "(0; x1)", "(0; x2)"),
    ("end", "(1; 1)", "(0; x1^5)"),
    ("mon", "(2; x1)", "(2; x1 x2)"),
    ("aut", "(1, 2; x1 x2 X1)", "(2, 1; x2)"),
])
def test_json_witness_reapplies(family, src, tgt):
    m = src.split(";")[0].count(",") + 1
    code, out, _ = run("decide", family, "--m", str(m), "--n", "2", src, tgt, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["decision"] == "yes" and doc["verified"] is True
    code, out, _ = run("endo", "apply", json.dumps(doc["witness"]), src)
    assert code == 0
    assert parse_element(out.strip(), m, 2) == parse_element(tgt, m, 2)


def test_usage_errors():
    assert run("decide", "aut", "--m", "1", "--n", "2", "(1; x3)", "(0; x1)")[0] == 2
    assert run("decide", "aut", "--m", "1", "--n", "2", "(1; x1)", "(0; x1)", "--bound", "0")[0] == 2
    assert run("decide", "aut", "--m", "-1", "--n", "2", "(; x1)", "(; x1)")[0] == 2
    assert run("bogus")[0] == 2
    code, _, err = run("endo", "apply", "{not json", "(0; x1)")
    assert code == 2 and err.startswith("zmfn:")


def test_endo_commands(tmp_path):
    swap = dumps(TypeI((Word((2,), 2), Word((1,), 2)), [[1]], [[1], [0]]))
    f = tmp_path / "swap.json"
    f.write_text(swap)
    assert run("endo", "apply", str(f), "(0; x1 x1)") == (0, "(2; x2^2)\n", "")
    code, out, _ = run("endo", "compose", swap, swap, "--json")
    doc = json.loads(out)
    assert doc["phi"] == ["x1", "x2"] and doc["P"] == [[1], [1]]
    code, out, _ = run("endo", "classify", swap)
    assert out == "type: I mono: true epi: true auto: true\n"
    code, out, _ = run("endo", "classify", swap, "--json")
    assert json.loads(out)["auto"] is True


def test_free_commands():
    code, out, _ = run("free", "min", "--n", "2", "x1 x2 x1")
    assert code == 0 and out.startswith("minimal cyclic word: ") and "(length 1)" in out
    assert run("free", "equiv", "--n", "2", "x1", "x1^2")[0] == 10
    code, out, _ = run("free", "equiv", "--n", "2", "x1", "x2")
    assert code == 0 and "x1 -> x2" in out
    assert run("free", "primitive", "--n", "2", "x1 x2")[0] == 0
    assert run("free", "primitive", "--n", "2", "x1 x2 X1 X2")[0] == 10
    assert run("free", "primitive", "--n", "2", "1")[0] == 2


def test_el_commands():
    assert run("el", "mul", "--m", "1", "--n", "2", "(1; x1)", "(2; X1 x2)") == (0, "(3; x2)\n", "")
    assert run("el", "inv", "--m", "1", "--n", "2", "(1; x1 x2)") == (0, "(-1; X2 X1)\n", "")
    assert run("el", "parse", "--m", "2", "--n", "2", " ( 1 ,2; x1 x1 ) ") == (0, "(1,2; x1^2)\n", "")


def _random_element(rnd):
    m, n = rnd.randint(0, 3), rnd.randint(0, 3)
    a = tuple(rnd.randint(-20, 20) for _ in range(m))
    letters = [s * i for i in range(1, n + 1) for s in (1, -1)]
    u = Word([rnd.choice(letters) for _ in range(rnd.randint(0, 10))] if n else [], n)
    return Element(a, u)


def test_parser_round_trip_200():
    rnd = random.Random(2024)
    for _ in range(200):
        g = _random_element(rnd)
        text = format_element(g)
        assert parse_element(text, g.m, g.n) == g
        code, out, _ = run("el", "parse", "--m", str(g.m), "--n", str(g.n), text)
        assert code == 0 and out == text + "\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zmfn", "decide", "aut", "--m", "1", "--n", "2", "(2; 1)", "(3; 1)"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 10
    assert proc.stdout == "no (abelian-unsolvable)\n"
