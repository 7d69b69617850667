import logging

import pytest

from conftest import HALL_TEXT
from text2plan.cli import main
from text2plan.config import PipelineConfig, load_config, parse_config_text

ARTIFACTS = ["dcg.json", "labels.tsv", "plan.json", "plan.svg", "rooms.json", "scores.tsv", "summary.txt"]

HOUSE = (
    "The entrance of the house is through the hall. The hall measures 300 by 200. "
    "The hall has a sofa and a chair. The kitchen measures 200 by 150. "
    "The kitchen has a sink and a stove. The hall leads to the kitchen. "
    "The bedroom is 250 by 200 and has a bed. The bedroom is adjacent to the hall."
)


@pytest.fixture(autouse=True)
def _isolate(monkeypatch):
    monkeypatch.delenv("T2P_CONFIG", raising=False)
    yield
    logging.getLogger("text2plan").handlers.clear()


@pytest.fixture
def house(tmp_path):
    p = tmp_path / "house.txt"
    p.write_text(HOUSE, encoding="utf-8")
    return p


def test_render_writes_all_artifacts(house, tmp_path):
    out = tmp_path / "out"
    assert main(["render", str(house), "--out", str(out), "--ratio", "1.0"]) == 0
    assert sorted(p.name for p in out.iterdir()) == ARTIFACTS
    assert (out / "plan.svg").read_text().startswith("<?xml")
    assert len((out / "summary.txt").read_text().splitlines()) == 8


def test_render_twice_is_byte_identical(house, tmp_path):
    for name in ("a", "b"):
        assert main(["render", str(house), "--out", str(tmp_path / name), "--seed", "3"]) == 0
    for art in ARTIFACTS:
        assert (tmp_path / "a" / art).read_bytes() == (tmp_path / "b" / art).read_bytes()


def test_chained_stages_match_composite(house, tmp_path):
    flags = ["--ratio", "0.8", "--seed", "5"]
    whole, step = tmp_path / "whole", tmp_path / "step"
    assert main(["render", str(house), "--out", str(whole), *flags]) == 0
    s = str(step)
    assert main(["stage", "summarize", str(house), "--out", s, *flags]) == 0
    assert main(["stage", "classify", f"{s}/summary.txt", "--out", s, *flags]) == 0
    assert main(["stage", "extract", f"{s}/summary.txt+{s}/labels.tsv", "--out", s, *flags]) == 0
    assert main(["stage", "layout", f"{s}/rooms.json", f"{s}/dcg.json", "--out", s, *flags]) == 0
    assert main(["stage", "render", f"{s}/plan.json", "--out", s, *flags]) == 0
    for art in ARTIFACTS:
        assert (whole / art).read_bytes() == (step / art).read_bytes(), art


def test_stage_inputs_in_either_order(house, tmp_path):
    out = tmp_path / "o"
    assert main(["render", str(house), "--out", str(out)]) == 0
    again = tmp_path / "again"
    assert main(["stage", "layout", str(out / "dcg.json"), str(out / "rooms.json"), "--out", str(again)]) == 0
    assert (again / "plan.json").read_bytes() == (out / "plan.json").read_bytes()


def test_stage_format_mismatch(house, tmp_path, capsys):
    out = tmp_path / "o"
    main(["render", str(house), "--out", str(out)])
    capsys.readouterr()
    assert main(["stage", "layout", str(out / "plan.svg"), "--out", str(tmp_path / "x")]) == 1
    err = capsys.readouterr().err
    assert "layout:error:FormatMismatch: stage layout expects rooms.json+dcg.json, got svg" in err
    assert main(["stage", "render", str(out / "rooms.json"), "--out", str(tmp_path / "x")]) == 1
    assert "render:error:FormatMismatch" in capsys.readouterr().err
    assert not (tmp_path / "x").exists()


def test_empty_document(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("  \n")
    assert main(["render", str(empty), "--out", str(tmp_path / "o")]) == 1
    assert "summarize:error:EmptyDocument" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_gen_corpus_needs_positive_count(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["gen-corpus", "-n", "0", "--out", str(tmp_path)])
    assert info.value.code == 2


def test_gen_corpus_writes_labelled_files(tmp_path, capsys):
    assert main(["gen-corpus", "-n", "3", "--out", str(tmp_path / "c"), "--seed", "9"]) == 0
    names = sorted(p.name for p in (tmp_path / "c").iterdir())
    assert names[:3] == ["desc_00000.labels.tsv", "desc_00000.truth.json", "desc_00000.txt"]
    assert len(names) == 9


def test_cnn_without_model(house, tmp_path, capsys):
    assert main(["render", str(house), "--classifier", "cnn", "--out", str(tmp_path / "o")]) == 1
    assert "classify:error" in capsys.readouterr().err


def test_unknown_flag_value_is_usage_error(house):
    with pytest.raises(SystemExit) as info:
        main(["render", str(house), "--centrality", "eigen"])
    assert info.value.code == 2


def test_bad_ratio_is_usage_error(house, capsys):
    assert main(["render", str(house), "--ratio", "1.5"]) == 2
    assert "config:error" in capsys.readouterr().err


def test_keep_partial(tmp_path, capsys):
    text = tmp_path / "tight.txt"
    text.write_text("The hall measures 100 by 100. There are three doors on the north wall of the hall.")
    plain, partial = tmp_path / "plain", tmp_path / "partial"
    assert main(["render", str(text), "--ratio", "1", "--out", str(plain)]) == 1
    assert "layout:error:WallOverflow" in capsys.readouterr().err
    assert not plain.exists()
    assert main(["render", str(text), "--ratio", "1", "--out", str(partial), "--keep-partial"]) == 1
    assert sorted(p.name for p in partial.iterdir()) == ["dcg.json", "labels.tsv", "rooms.json", "scores.tsv", "summary.txt"]


def test_keep_partial_placement_failure(tmp_path, capsys):
    text = tmp_path / "star.txt"
    rooms = ["first bedroom", "second bedroom", "first bathroom", "second bathroom", "kitchen"]
    parts = ["The hall measures 40 by 40."]
    parts += [f"The {r} measures 1000 by 1000." for r in rooms]
    parts += [f"The hall leads to the {r}." for r in rooms]
    text.write_text(" ".join(parts))
    out = tmp_path / "o"
    assert main(["render", str(text), "--ratio", "1", "--out", str(out), "--keep-partial"]) == 1
    assert "layout:error:PlacementFailure" in capsys.readouterr().err
    assert (out / "plan.json").exists() and not (out / "plan.svg").exists()


def test_verbose_diagnostics_use_stage_prefix(house, tmp_path, capsys):
    assert main(["render", str(house), "--out", str(tmp_path / "o"), "-v"]) == 0
    lines = [ln for ln in capsys.readouterr().err.splitlines() if ln]
    assert lines
    for ln in lines:
        stage, severity, _ = ln.split(":", 2)
        assert stage in ("summarize", "classify", "extract", "layout", "render", "pipeline")
        assert severity in ("info", "warning", "error")


# -- configuration -----------------------------------------------------------


def test_config_file_parsing():
    values = parse_config_text("ratio = 0.5  # half\n\n# comment\nclassifier = rule-based\nstyle.wall_stroke = 3\n")
    assert values == {"ratio": "0.5", "classifier": "rule-based", "style.wall_stroke": "3"}
    with pytest.raises(ValueError):
        parse_config_text("just words")


def test_config_precedence(tmp_path, monkeypatch):
    cfg_file = tmp_path / "t2p.conf"
    cfg_file.write_text("ratio = 0.5\nseed = 4\ncentrality = power-iteration\nstyle.margin = 5\n")
    assert load_config() == PipelineConfig()
    cfg = load_config(cfg_file)
    assert (cfg.reduction_ratio, cfg.seed, cfg.centrality_mode, cfg.style.margin) == (0.5, 4, "pagerank", 5.0)
    cfg = load_config(cfg_file, {"ratio": 0.9, "seed": None})
    assert (cfg.reduction_ratio, cfg.seed) == (0.9, 4)
    monkeypatch.setenv("T2P_CONFIG", str(cfg_file))
    assert load_config().seed == 4
    other = tmp_path / "other.conf"
    other.write_text("seed = 8\n")
    assert load_config(other).seed == 8


def test_config_rejects_unknown_keys(tmp_path):
    p = tmp_path / "bad.conf"
    p.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        load_config(p)
    p.write_text("style.colour = blue\n")
    with pytest.raises(ValueError):
        load_config(p)


def test_config_file_drives_render(house, tmp_path, monkeypatch):
    conf = tmp_path / "c.conf"
    conf.write_text("ratio = 0.25\n")
    monkeypatch.setenv("T2P_CONFIG", str(conf))
    out = tmp_path / "o"
    assert main(["render", str(house), "--out", str(out)]) == 0
    assert len((out / "summary.txt").read_text().splitlines()) == 2
    out2 = tmp_path / "o2"
    assert main(["render", str(house), "--out", str(out2), "--ratio", "0.5"]) == 0
    assert len((out2 / "summary.txt").read_text().splitlines()) == 4


# -- training ----------------------------------------------------------------


@pytest.mark.slow
def test_train_is_deterministic_and_usable(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    assert main(["gen-corpus", "-n", "20", "--out", str(corpus)]) == 0
    m1, m2 = tmp_path / "m1.t2p", tmp_path / "m2.t2p"
    assert main(["train", str(corpus), "--model", str(m1), "--seed", "1"]) == 0
    assert main(["train", str(corpus), "--model", str(m2), "--seed", "1"]) == 0
    assert m1.read_bytes() == m2.read_bytes()
    out = capsys.readouterr().out
    assert "relation\t" in out
    text = tmp_path / "hall.txt"
    text.write_text(HALL_TEXT)
    assert main(["render", str(text), "--classifier", "cnn", "--model", str(m1), "--out", str(tmp_path / "o")]) == 0
    assert (tmp_path / "o" / "plan.svg").exists()


def test_train_needs_labels(tmp_path, capsys):
    (tmp_path / "a.txt").write_text("The hall is big.")
    assert main(["train", str(tmp_path), "--model", str(tmp_path / "m.t2p")]) == 1
    assert "no labelled descriptions" in capsys.readouterr().err
