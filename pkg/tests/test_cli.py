"""Command-line entry points, end to end through main()."""
from __future__ import annotations

import json

import pytest

from goalsift.catalog import load_catalog
from goalsift.cli import main, read_keyvalue, synthetic_spec_from_config


def test_read_keyvalue(tmp_path):
    path = tmp_path / "c.kv"
    path.write_text("a = 1\n# comment\n b=two words \n\nkey = x # trailing\n")
    assert read_keyvalue(path) == {"a": "1", "b": "two words", "key": "x"}
    path.write_text("not a pair\n")
    with pytest.raises(ValueError, match="key = value"):
        read_keyvalue(path)


def test_synthetic_spec_from_config():
    spec = synthetic_spec_from_config({
        "num_goals": "30",
        "cardinalities": "2,5",
        "missing_rates": "0.0,0.2",
        "skew": "1.0,0.5",
        "attribute_names": "a,b",
    })
    assert spec.num_goals == 30
    assert spec.cardinalities == (2, 5)
    assert spec.skew == (1.0, 0.5)
    assert spec.attribute_names == ("a", "b")


def test_catalog_gen(tmp_path, capsys):
    spec = tmp_path / "spec.kv"
    spec.write_text("num_goals = 25\ncardinalities = 3,4\nmissing_rates = 0.0,0.1\n")
    out = tmp_path / "cat.csv"
    assert main(["catalog", "gen", "--spec", str(spec), "--seed", "3",
                 "--out", str(out)]) == 0
    cat = load_catalog(out)
    assert cat.num_goals == 25 and cat.num_attributes == 2
    assert "25 goals" in capsys.readouterr().out


def test_bench_run_and_compare(tmp_path, capsys):
    spec = tmp_path / "spec.kv"
    spec.write_text("num_goals = 40\ncardinalities = 2,4,12\nmissing_rates = 0,0,0\n")
    cat_path = tmp_path / "cat.csv"
    main(["catalog", "gen", "--spec", str(spec), "--seed", "1", "--out", str(cat_path)])

    config = tmp_path / "bench.kv"
    config.write_text(
        f"catalog = {cat_path}\n"
        "strategies = emdm,sequential\n"
        "mode = ideal\nplan = exhaustive\nmaster_seed = 0\nformat = table\n"
    )
    out_dir = tmp_path / "out"
    assert main(["bench", "run", "--config", str(config), "--out", str(out_dir)]) == 0
    captured = capsys.readouterr().out
    assert "emdm" in captured and "sequential" in captured
    report = json.loads((out_dir / "report.json").read_text())
    assert {a["label"] for a in report["arms"]} == {"emdm", "sequential"}
    assert (out_dir / "report.txt").exists()

    assert main(["bench", "compare", "--report", str(out_dir / "report.json"),
                 "--pair", "emdm,sequential"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and lines[0].startswith("emdm < sequential:")


def test_bench_run_is_deterministic(tmp_path):
    spec = tmp_path / "spec.kv"
    spec.write_text("num_goals = 30\ncardinalities = 3,9\nmissing_rates = 0,0\n")
    cat_path = tmp_path / "cat.csv"
    main(["catalog", "gen", "--spec", str(spec), "--seed", "2", "--out", str(cat_path)])
    config = tmp_path / "bench.kv"
    config.write_text(
        f"catalog = {cat_path}\nstrategies = emdm,random:4\n"
        "mode = noisy\nplan = sampled\nsample_size = 20\nmaster_seed = 6\n"
    )
    outs = []
    for d in ("o1", "o2"):
        main(["bench", "run", "--config", str(config), "--out", str(tmp_path / d)])
        outs.append((tmp_path / d / "report.json").read_bytes())
    assert outs[0] == outs[1]


def test_dialog_play_scripted(tmp_path, capsys, monkeypatch):
    spec = tmp_path / "spec.kv"
    spec.write_text(
        "num_goals = 6\ncardinalities = 2,6\nmissing_rates = 0,0\n"
        "attribute_names = coarse,fine\n"
    )
    cat_path = tmp_path / "cat.csv"
    main(["catalog", "gen", "--spec", str(spec), "--seed", "1", "--out", str(cat_path)])
    cat = load_catalog(cat_path)
    answers = iter([cat.schema.value_text(1, int(cat.matrix[0, 1]))])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(answers, "?"))
    assert main(["dialog", "play", "--catalog", str(cat_path),
                 "--strategy", "emdm"]) == 0
    out = capsys.readouterr().out
    assert "What is the" in out
    assert "candidates:" in out
