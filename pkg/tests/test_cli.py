import json

import pytest

from semitile import fixture_pinwheel, save_tiling
from semitile.cli import main
from semitile.tiling import Tiling

from conftest import R


@pytest.fixture
def pinwheel_file(tmp_path):
    path = tmp_path / "pinwheel.tiling"
    save_tiling(fixture_pinwheel(1), path)
    return path


def test_prove_pinwheel(pinwheel_file, tmp_path, capsys):
    trace = tmp_path / "trace.json"
    assert main(["prove", str(pinwheel_file), "--check-oracle", "--trace", str(trace)]) == 0
    out = capsys.readouterr().out
    assert "final (0,0,3,3)" in out and "steps 4" in out and "agree=true" in out
    doc = json.loads(trace.read_text())
    assert doc["steps"][0]["branch"] == "IntegerHeight"
    first = trace.read_bytes()
    assert main(["prove", str(pinwheel_file), "--trace", str(trace)]) == 0
    assert trace.read_bytes() == first


def test_prove_explain(pinwheel_file, capsys):
    assert main(["prove", str(pinwheel_file), "--explain"]) == 0
    out = capsys.readouterr().out
    assert "step 1: BlockSurgery 5 -> 4 roof 2 floors [4, 1]" in out
    assert "descent [3, 2]" in out


def test_validate(tmp_path, pinwheel_file, capsys):
    assert main(["validate", str(pinwheel_file)]) == 0
    path = tmp_path / "overlap.tiling"
    save_tiling(Tiling(R(0, 0, 1, 1), (R(0, 0, 1, 1), R(0, 0, 1, 1))), path)
    assert main(["validate", str(path)]) == 1
    assert "Overlap(0,1)" in capsys.readouterr().out


def test_validate_predicate(tmp_path, capsys):
    path = tmp_path / "quarters.tiling"
    h = "1/2"
    doc = {"width": "1", "height": "1", "tiles": [
        {"x0": "0", "y0": "0", "x1": h, "y1": h}, {"x0": h, "y0": "0", "x1": "1", "y1": h},
        {"x0": "0", "y0": h, "x1": "1", "y1": "1"}]}
    path.write_text(json.dumps(doc))
    assert main(["validate", str(path)]) == 1
    assert "NonSemiInteger(0)" in capsys.readouterr().out
    assert main(["--predicate", "multiple:1/2", "validate", str(path)]) == 0
    assert main(["validate", str(path), "--predicate", "multiple:1/2"]) == 0
    assert main(["prove", str(path), "--predicate", "multiple:1/2", "--check-oracle"]) == 0
    assert main(["prove", str(path)]) == 1


def test_generate_then_prove(tmp_path):
    out = tmp_path / "t.tiling"
    assert main(["generate", "--seed", "7", "--tiles", "20", "--out", str(out)]) == 0
    first = out.read_bytes()
    assert main(["prove", str(out), "--check-oracle"]) == 0
    assert main(["generate", "--seed", "7", "--tiles", "20", "--out", str(out)]) == 0
    assert out.read_bytes() == first


def test_reduce_steps(pinwheel_file, tmp_path, capsys):
    out = tmp_path / "r.tiling"
    trace = tmp_path / "r.json"
    assert main(["reduce", str(pinwheel_file), "--steps", "2", "--explain",
                 "--out", str(out), "--trace", str(trace)]) == 0
    text = capsys.readouterr().out
    assert "applied 2 step(s); 3 tile(s) remain" in text
    assert len(json.loads(out.read_text())["tiles"]) == 3
    assert [s["kind"] for s in json.loads(trace.read_text())["steps"]] == ["BlockSurgery", "Coalesce"]


def test_render(pinwheel_file, tmp_path):
    svg = tmp_path / "p.svg"
    assert main(["render", str(pinwheel_file), "--out", str(svg), "--scale", "40", "--highlight"]) == 0
    text = svg.read_text()
    assert text.count("<rect") == 6 and 'class="roof"' in text


def test_oracle_command(pinwheel_file, tmp_path, capsys):
    assert main(["oracle", str(pinwheel_file)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["oracle"] == {"width_integer": True, "height_integer": True,
                             "tile_imbalance_sum": "0", "frame_imbalance": "0"}
    bad = tmp_path / "b.tiling"
    save_tiling(Tiling(R(0, 0, 1, 1), (R(0, 0, 1, 1), R(0, 0, 1, 1))), bad)
    assert main(["oracle", str(bad)]) == 1


def test_usage_errors(pinwheel_file, tmp_path):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["reduce", str(pinwheel_file), "--steps", "x"]) == 2
    assert main(["--predicate", "bogus", "validate", str(pinwheel_file)]) == 2
    assert main(["validate", str(tmp_path / "missing")]) == 2
    broken = tmp_path / "broken.tiling"
    broken.write_text('{"width": "1/0", "height": "1", "tiles": []}')
    assert main(["validate", str(broken)]) == 1


def test_internal_breach_exit_code(pinwheel_file, monkeypatch):
    from semitile import cli
    from semitile.errors import InternalPartitionBroken

    def boom(*a, **k):
        raise InternalPartitionBroken("forced")
    monkeypatch.setattr(cli, "reduce_to_one", boom)
    assert main(["prove", str(pinwheel_file)]) == 3
