import io
import json
import subprocess
import sys

import pytest

from pointfree.cli import run


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_spec_examples(data_dir):
    assert cli("fan", "depth", "--set", "level:3", "--max", "10")[:2] == (0, "3\n")
    code, out, _ = cli("reals", "decide", "--mode", "r", "--target", "0/1..2/1",
                       "--cover", data_dir / "reals" / "two-halves.txt")
    assert code == 1 and "witness 1/1" in out
    assert cli("spread", "retract", "--spread", "binary", "--input", "[5,7]")[:2] == (0, "[0,0]\n")


def test_finite_verify_bundled_examples(data_dir):
    code, out, _ = cli("finite", "verify", data_dir / "finite", "--check", "no-point-example",
                       "--check", "cover-laws")
    assert code == 1
    assert "FAIL relation {} maps points to points but violates FM1 at '*'" in out
    assert out.count("FAIL") == 1
    assert "no-point-example                   PASS" in out
    assert out.count("bi-spatial           PASS") == 2


def test_finite_verify_json(data_dir):
    code, out, _ = cli("finite", "verify", data_dir / "finite" / "sierpinski.txt", "--no-suite", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["exit"] == 0 and payload["command"] == "finite verify"
    docs = payload["result"]["documents"]
    assert [d["name"] for d in docs] == ["sierpinski", "split"]
    assert docs[0]["ideal_points"] == [["b"], ["a", "b"]]


def test_finite_verify_malformed(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("topology: t\nbase: a\naxioms:\n  a -> b\n")
    code, _, err = cli("finite", "verify", f, "--no-suite")
    assert code == 3 and "bad.txt:4:" in err


def test_baire_commands(data_dir):
    d, s = data_dir / "baire" / "binary-bar.json", f"file:{data_dir / 'baire' / 'binary-bar.set'}"
    assert cli("baire", "split", "--derivation", d, "--set", s, "--stream", "periodic:[1,0]")[:2] == (0, "[1,0]\n")
    assert cli("baire", "check", "--derivation", d, "--set", s, "--binary-depth", "4")[:2] == \
        (0, "valid (exhaustive)\n")
    code, out, _ = cli("baire", "check", "--derivation", d, "--set", "finite:[0]", "--binary-depth", "4")
    assert code == 1 and out.startswith("violation at [1,0]")
    lvl = data_dir / "baire" / "level2.json"
    assert cli("baire", "split", "--derivation", lvl, "--set", "level:2", "--stream", "periodic:[7]")[:2] == \
        (0, "[7,7]\n")
    code, _, err = cli("baire", "split", "--derivation", lvl, "--set", "level:2", "--stream", "periodic:[7]",
                       "--fuel", "1")
    assert code == 2 and "FuelExhausted" in err


def test_baire_malformed_derivation(tmp_path):
    f = tmp_path / "d.json"
    f.write_text('["fan", []]')
    code, _, err = cli("baire", "split", "--derivation", f, "--set", "all", "--stream", "random")
    assert code == 3 and "MalformedTree" in err


def test_maps_commands(data_dir):
    assert cli("maps", "eval", "--relation", "first-entry", "--stream", "periodic:[3,1]", "--modulus")[:2] == \
        (0, "modulus [3]\nvalue 3\n")
    code, out, _ = cli("maps", "eval", "--relation", f"table:{data_dir / 'maps' / 'fibers.txt'}",
                       "--stream", "table:[1,1]+const:0", "--json")
    assert code == 0 and json.loads(out)["result"] == {"modulus": [1, 1], "value": 2}
    assert cli("maps", "eval", "--relation", "empty", "--stream", "random", "--fuel", "5")[0] == 2
    assert cli("maps", "sigma2dec", "--d", "length-at-least:1", "--probe", "[4,4,4]")[:2] == \
        (0, "V([4,4,4]) = true: D([4,4], 0)\n")
    assert cli("maps", "sigma2dec", "--d", "never", "--probe", "[]")[0] == 1


def test_multivalued_relation_exits_1(tmp_path):
    f = tmp_path / "r.txt"
    f.write_text("[] -> 1\n[] -> 2\n")
    code, _, err = cli("maps", "eval", "--relation", f"table:{f}", "--stream", "random")
    assert code == 1 and "NotSingleValued" in err


def test_spread_commands(data_dir):
    assert cli("spread", "retract", "--spread", "min-entry:3", "--stream", "zeros-after:[]",
               "--levels", "3")[:2] == (0, "[3,3,3]\n")
    assert cli("spread", "retract", "--spread", f"table:{data_dir / 'spreads' / 'table.txt'}",
               "--input", "[1,1,0]")[:2] == (0, "[1,3,0]\n")
    assert cli("spread", "retract", "--spread", "binary")[0] == 3
    assert cli("spread", "retract", "--spread", "binary", "--stream", "random")[0] == 3


def test_fan_exhaustion():
    code, _, err = cli("fan", "depth", "--set", "finite:[0]", "--max", "40")
    assert code == 2 and "DepthExhausted" in err and "escapes" in err


def test_reals_commands(data_dir):
    cover = data_dir / "reals" / "overlapping.txt"
    assert cli("reals", "decide", "--mode", "r", "--target", "0/1..2/1", "--cover", cover)[:2] == (0, "covered\n")
    code, out, _ = cli("reals", "certify", "--mode", "i01", "--target", "-1/1..3/1", "--cover", cover)
    assert code == 0 and out.startswith("split (-1/1,3/1)") and "below-zero" in out and "above-one" in out
    code, out, _ = cli("reals", "certify", "--mode", "r", "--target", "0/1..2/1",
                       "--cover", data_dir / "reals" / "gap.txt", "--json")
    assert code == 1 and json.loads(out)["result"] == {"covered": False, "witness": "1/2"}
    code, out, _ = cli("reals", "heine-borel", "--mode", "i01", "--target", "0/1..1/1",
                       "--enum", f"file:{data_dir / 'reals' / 'unit-enumerated.txt'}")
    assert code == 0 and out.splitlines() == ["1/2,3/2", "1/3,2/3", "-1/2,1/4", "1/5,3/5"]
    assert cli("reals", "heine-borel", "--mode", "r", "--target", "0/1..1/1", "--enum", "inner",
               "--fuel", "20")[0] == 2


@pytest.mark.parametrize("argv", [
    ["fan", "dept"],
    ["fan", "depth", "--set", "level:3"],
    ["fan", "depth", "--set", "level:3", "--max", "3", "--bogus"],
    ["fan", "depth", "--set", "bogus", "--max", "3"],
    ["reals", "decide", "--mode", "q", "--target", "0/1..1/1", "--cover", "x"],
    ["reals", "decide", "--mode", "r", "--target", "1/1..0/1", "--cover", "/nonexistent"],
    ["maps", "eval", "--relation", "first-entry", "--stream", "walk:1"],
    [],
])
def test_malformed_input_exits_3(argv):
    code, _, err = cli(*argv)
    assert code == 3 and err.startswith("error (")


def test_json_error_payload():
    code, out, _ = cli("fan", "depth", "--set", "finite:[0]", "--max", "5", "--json")
    payload = json.loads(out)
    assert code == 2 and payload["error"]["kind"] == "DepthExhausted" and payload["result"] is None


def test_seeded_output_is_byte_identical():
    argv = [sys.executable, "-m", "pointfree", "spread", "retract", "--spread", "pseudorandom",
            "--stream", "random", "--levels", "12", "--seed", "7"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    other = subprocess.run(argv[:-1] + ["8"], capture_output=True, check=True).stdout
    assert first == second and first != other
