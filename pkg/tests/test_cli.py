"""End-to-end CLI behavior through main(): parsing, output formats, config
pickup, and exit codes."""

import io
import json

import pytest

from berklocus.cli import SCHEMA, main, parse_map_file
from berklocus.errors import ParseError


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def square_map(tmp_path):
    return write(tmp_path, "square.map",
                 "# the squaring map over Q_5\n"
                 "p = 5\n"
                 "num = 0, 0, 1\n"
                 "den = 1\n")


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_parse_map_file_roundtrip(square_map):
    ctx, f = parse_map_file(square_map)
    assert ctx.p == 5 and ctx.n == 1 and ctx.k == 1
    assert f.degree == 2


def test_parse_errors_carry_location(tmp_path):
    bad = write(tmp_path, "bad.map", "p = 5\nnum = 0, x, 1\nden = 1\n")
    with pytest.raises(ParseError) as exc:
        parse_map_file(bad)
    assert exc.value.line == 2
    assert exc.value.field == "num"
    with pytest.raises(ParseError):
        parse_map_file(write(tmp_path, "nokey.map", "p = 5\nnum = 0, 1\n"))
    with pytest.raises(ParseError):
        parse_map_file(write(tmp_path, "dup.map",
                             "p = 5\np = 7\nnum = 0, 1\nden = 1\n"))


def test_analyze_text(square_map):
    code, text = run(["analyze", "--input", square_map])
    assert code == 0
    assert "weight total: 1" in text
    assert "complete: yes" in text
    assert "peaked" in text


def test_analyze_json_schema(square_map):
    code, text = run(["analyze", "--input", square_map, "--format", "json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA
    assert doc["degree"] == 2
    assert doc["weight_total"] == 1
    assert doc["complete_rigorous"] is True
    assert sum(cp["multiplicity"] for cp in doc["classical_points"]) == 3
    kinds = sorted(c["kind"] for c in doc["components"])
    assert kinds == ["classical", "classical", "peaked"]


def test_reduce_at_gauss(square_map):
    code, text = run(["reduce-at", "--input", square_map,
                      "--center", "0", "--s", "0", "--format", "json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["local"]["is_fixed"] is True
    assert doc["local"]["local_degree"] == 2


def test_reduce_at_fractional_radius_exit_2(square_map):
    code, _ = run(["reduce-at", "--input", square_map,
                   "--center", "0", "--s", "1/2"])
    assert code == 2


def test_tangent(square_map):
    code, text = run(["tangent", "--input", square_map,
                      "--center", "0", "--s", "0"])
    assert code == 0
    assert "fixed directions" in text
    code2, text2 = run(["tangent", "--input", square_map,
                        "--center", "2", "--s", "1"])
    assert code2 == 0
    assert "not fixed" in text2


def test_tree_formats(square_map):
    code, text = run(["tree", "--input", square_map])
    assert code == 0
    assert "classical leaves" in text
    code, text = run(["tree", "--input", square_map, "--format", "dot"])
    assert code == 0
    assert text.startswith("graph fixlocus {")
    assert text.rstrip().endswith("}")
    code, doc = run(["tree", "--input", square_map, "--format", "json"])
    assert code == 0
    parsed = json.loads(doc)
    assert parsed["schema"] == SCHEMA
    assert parsed["nodes"] and parsed["edges"]


def test_weights_json(square_map):
    code, text = run(["weights", "--input", square_map, "--format", "json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["total"] == 1 and doc["degree"] == 2
    assert sum(w["weight"] for w in doc["weights"]) == doc["total"]


def test_verify_passes(square_map):
    code, text = run(["verify", "--input", square_map])
    assert code == 0
    assert "[ok]" in text
    assert "FAIL" not in text


def test_exit_code_1_on_bad_input(tmp_path):
    bad = write(tmp_path, "bad.map", "p = 4\nnum = 0, 1\nden = 1\n")
    code, _ = run(["analyze", "--input", bad])
    assert code == 1
    code, _ = run(["analyze", "--input", str(tmp_path / "missing.map")])
    assert code == 1


def test_exit_code_1_on_identity_map(tmp_path):
    ident = write(tmp_path, "id.map", "p = 5\nnum = 0, 1\nden = 1\n")
    code, _ = run(["analyze", "--input", ident])
    assert code == 1


def test_env_config_pickup(tmp_path, square_map, monkeypatch):
    cfg = write(tmp_path, "berklocus.cfg", "n_max = 8\nk_max = 3\nseed = 1\n")
    monkeypatch.setenv("BERKLOCUS_CONFIG", cfg)
    code, text = run(["analyze", "--input", square_map])
    assert code == 0
    assert "weight total: 1" in text
    bad = write(tmp_path, "bad.cfg", "nonsense = 1\n")
    monkeypatch.setenv("BERKLOCUS_CONFIG", bad)
    code, _ = run(["analyze", "--input", square_map])
    assert code == 1


def test_tower_parameters_from_file(tmp_path):
    # fixed points at valuation 1/2 are representable once n = 2 in the file
    path = write(tmp_path, "ramified.map",
                 "p = 5\nn = 2\nnum = -5, 0, 2\nden = 0, 1\n")
    code, text = run(["analyze", "--input", path, "--format", "json"])
    assert code == 0
    doc = json.loads(text)
    assert doc["field"]["n"] == 2
    assert doc["weight_total"] == 1
