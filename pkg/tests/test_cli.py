import json
import subprocess
import sys

import pytest

import eulerbrick.records as records_mod
import eulerbrick.search as search_mod
from eulerbrick.cli import main
from eulerbrick.cuboids import CuboidVerdict, CuboidWitness
from eulerbrick.pythag import DiffSquareRep as Rep


def test_verify_brick_pass(capsys):
    assert main(["verify", "--brick", "44,117,240,125,267,244"]) == 0
    assert capsys.readouterr().out.strip() == "PASS"


def test_verify_brick_fail(capsys):
    assert main(["verify", "--brick", "85,132,720,157,725,733"]) == 2
    assert "b^2+c^2" in capsys.readouterr().out


def test_verify_cuboid_fail(capsys):
    assert main(["verify", "--cuboid", "44,117,240,125,244,267,275"]) == 2
    assert "a^2+b^2+c^2" in capsys.readouterr().out


def test_triples(capsys):
    assert main(["triples", "--n", "15"]) == 0
    out = capsys.readouterr().out
    assert "15\t8\t17\t1\t4\t1\t1" in out and "# 4 triples; count formula gives 4" in out
    assert main(["triples", "--n", "117", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "7"


def test_triples_bad_n(capsys):
    assert main(["triples", "--n", "10"]) == 1


@pytest.mark.parametrize(
    "argv",
    [[], ["search-bricks", "--min", "3"], ["verify"], ["search-biquad", "--conjecture", "4", "--bound", "9"],
     ["search-bricks", "--min", "3", "--max", "9", "--shard", "x"]],
)
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_search_bricks_and_resume(tmp_path, capsys):
    out, ck = str(tmp_path / "b.jsonl"), str(tmp_path / "ck.json")
    args = ["search-bricks", "--min", "3", "--max", "999", "--out", out, "--checkpoint", ck, "--block-size", "40"]
    assert main(args + ["--stop-after", "400"]) == 0
    assert "complete: False" in capsys.readouterr().out
    assert main(args + ["--resume"]) == 0
    text = capsys.readouterr().out
    assert "primitive: 11" in text and "complete: True" in text
    assert main(args + ["--strict", "--resume"]) == 1
    assert "fingerprint" in capsys.readouterr().err
    assert main(args) == 1  # output exists


def test_search_cuboids_exit_codes(tmp_path, capsys, monkeypatch):
    out = str(tmp_path / "c.jsonl")
    assert main(["search-cuboids", "--min", "3", "--max", "999", "--conjectures", "1,2,3", "--out", out]) == 0
    w = CuboidWitness(85, Rep(1, 43, 42), Rep(1, 11, 6), Rep(5, 9, 8))
    monkeypatch.setattr(search_mod, "search_cuboid_witnesses", lambda n, c, s, r: [w] if n == 85 else [])
    argv = ["search-cuboids", "--min", "3", "--max", "99", "--out", out, "--overwrite"]
    assert main(argv) == 2  # forged witness rejected
    monkeypatch.setattr(records_mod, "verify_perfect_cuboid", lambda c: CuboidVerdict(True))
    monkeypatch.setattr(records_mod, "independent_recheck", lambda w: True)
    assert main(argv) == 3
    assert "ANOMALY" in capsys.readouterr().err


def test_search_biquad(tmp_path, capsys):
    out = tmp_path / "bq.jsonl"
    assert main(["search-biquad", "--conjecture", "1", "--bound", "30", "--out", str(out)]) == 0
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert all(r["task"] == "biquad" and not r["anomaly"] for r in recs)
    assert f"records: {len(recs)}" in capsys.readouterr().out


def test_classify(tmp_path, capsys):
    src = tmp_path / "bricks.txt"
    src.write_text("# a b c\n117 44 240\n\n187 1584 1020\n3 4 5\n")
    assert main(["classify", "--in", str(src)]) == 2  # 3 4 5 is not a brick
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [r.get("brick_type") for r in rows] == [2, 3, None]
    assert rows[0]["rep1"] == [1, 11, 2] and rows[0]["d"] == 122
    assert rows[2]["error"] == "NotEulerBrick"
    src.write_text("240 117 44\n")
    assert main(["classify", "--in", str(src)]) == 0


def test_report_paper_output(capsys):
    code = main(["report-paper"])
    out = capsys.readouterr().out
    assert out.count("PASS") == 10
    assert "429" in out and "expected 2550, found 2500" in out
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eulerbrick", "triples", "--n", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and "3\t4\t5" in proc.stdout
