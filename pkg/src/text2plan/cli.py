"""``t2p`` command line: render, train, gen-corpus and stage."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import pipeline
from .classifier import save_model, train_classifier
from .config import load_config
from .errors import FormatMismatch, T2PError
from .generator import write_corpus
from .text_corpus import build_corpus_stats, read_corpus_dir, split_sentences

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# module loggers are named text2plan.<stage>
_STAGE_OF = {"summarizer": "summarize", "classifier": "classify", "extractor": "extract", "render": "render"}


class StageFormatter(logging.Formatter):
    def format(self, record):
        parts = record.name.split(".")
        stage = parts[1] if len(parts) > 1 else "t2p"
        stage = _STAGE_OF.get(stage, stage)
        return f"{stage}:{record.levelname.lower()}:{record.getMessage()}"


def _setup_logging(verbose: bool) -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(StageFormatter())
    root = logging.getLogger("text2plan")
    for h in list(root.handlers):
        if isinstance(h.formatter, StageFormatter):
            root.removeHandler(h)
    root.addHandler(handler)
    root.setLevel(logging.INFO if verbose else logging.WARNING)
    root.propagate = False
    return handler


def _diag(stage: str, severity: str, message) -> None:
    print(f"{stage}:{severity}:{message}", file=sys.stderr)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("pipeline options")
    g.add_argument("--ratio", type=float, help="summary reduction ratio in (0, 1] (default 0.6)")
    g.add_argument("--seed", type=int, help="seed for layout and training (default 0)")
    g.add_argument("--model", help="trained model file")
    g.add_argument("--classifier", choices=["rule", "cnn"], help="sentence classifier (default rule)")
    g.add_argument("--centrality", choices=["degree", "pagerank"], help="sentence ranking (default degree)")
    g.add_argument("--strict", action="store_true", default=None, help="turn recoverable problems into errors")
    g.add_argument("--out", help="output directory (default ./out)")
    g.add_argument("--keep-partial", action="store_true", default=None, help="write finished artifacts on failure")
    g.add_argument("--config", help="key=value config file (default $T2P_CONFIG)")
    g.add_argument("-v", "--verbose", action="store_true", help="also print informational diagnostics")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="t2p", description="Turn a house description into a floor plan SVG.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", parents=[common], help="run the whole pipeline on a description")
    p.add_argument("input", help="plain-text description")

    p = sub.add_parser("train", parents=[common], help="train the sentence classifier")
    p.add_argument("corpus", help="directory of *.txt descriptions with .labels.tsv files")

    p = sub.add_parser("gen-corpus", parents=[common], help="write synthetic descriptions")
    p.add_argument("-n", type=int, required=True, help="number of descriptions (>= 1)")

    p = sub.add_parser("stage", parents=[common], help="run a single stage")
    p.add_argument("name", choices=pipeline.STAGES)
    p.add_argument("inputs", nargs="+", help="input artifact(s); a+b is accepted for two inputs")
    return parser


def _overrides(args) -> dict:
    return {
        "ratio": args.ratio,
        "seed": args.seed,
        "model": args.model,
        "classifier": args.classifier,
        "centrality": args.centrality,
        "strict": args.strict,
        "out": args.out,
        "keep_partial": args.keep_partial,
    }


def _write(out_dir: Path, artifacts: dict[str, str]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(artifacts):
        (out_dir / name).write_text(artifacts[name], encoding="utf-8")


def cmd_render(args, cfg) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    try:
        artifacts = pipeline.run_pipeline(text, cfg)
    except pipeline.StageError as e:
        _diag(e.stage, "error", f"{type(e.error).__name__}: {e.error}")
        if cfg.keep_partial and e.artifacts:
            _write(cfg.output_dir, e.artifacts)
        return EXIT_FAIL
    _write(cfg.output_dir, artifacts)
    return EXIT_OK


def cmd_train(args, cfg) -> int:
    root = Path(args.corpus)
    if not root.is_dir():
        _diag("train", "error", f"{root} is not a directory")
        return EXIT_FAIL
    docs = read_corpus_dir(root)
    labelled = [d for d in docs if d.labels is not None]
    if not labelled:
        _diag("train", "error", f"no labelled descriptions (*.txt with .labels.tsv) in {root}")
        return EXIT_FAIL
    pairs = [(split_sentences(d.text), d.labels) for d in labelled]
    stats = build_corpus_stats([s for s, _ in pairs])
    model, report = train_classifier(pairs, seed=cfg.seed, stats=stats)
    path = cfg.model or cfg.output_dir / "model.t2p"
    path.parent.mkdir(parents=True, exist_ok=True)
    save_model(model, path)
    print(f"trained on {report.train_size} sentences, held out {report.test_size}")
    for label, acc in report.accuracy.items():
        print(f"{label}\t{acc:.4f}")
    print(f"model written to {path}")
    return EXIT_OK


def cmd_gen_corpus(args, cfg, parser) -> int:
    if args.n < 1:
        parser.error("-n must be at least 1")
    paths = write_corpus(cfg.output_dir, args.n, cfg.seed)
    print(f"wrote {len(paths)} descriptions to {cfg.output_dir}")
    return EXIT_OK


STAGE_INPUTS = {
    "summarize": "description text",
    "classify": "summary.txt",
    "extract": "summary.txt+labels.tsv",
    "layout": "rooms.json+dcg.json",
    "render": "plan.json",
}


def _stage_inputs(args) -> list[str]:
    names = [part for item in args.inputs for part in item.split("+") if part]
    return [Path(n).read_text(encoding="utf-8") for n in names]


def cmd_stage(args, cfg) -> int:
    texts = _stage_inputs(args)
    name = args.name
    expected = STAGE_INPUTS[name]
    if len(texts) != len(expected.split("+")):
        got = "+".join(pipeline.sniff(t) for t in texts)
        _diag(name, "error", f"FormatMismatch: stage {name} expects {expected}, got {got}")
        return EXIT_FAIL
    wanted = len(texts)
    if wanted == 2:
        # accept the two inputs in either order
        order = ("text", "labels") if name == "extract" else ("rooms", "dcg")
        kinds = [pipeline.sniff(t) for t in texts]
        if kinds == list(reversed(order)):
            texts.reverse()
    try:
        if name == "summarize":
            classifier = pipeline.make_classifier(cfg) if cfg.model else None
            stats = pipeline.scoring_stats(classifier)
            out = pipeline.stage_summarize(texts[0], cfg, stats)
        elif name == "classify":
            out = pipeline.stage_classify(texts[0], pipeline.make_classifier(cfg))
        elif name == "extract":
            out = pipeline.stage_extract(texts[0], texts[1], cfg.strict)
        elif name == "layout":
            out = pipeline.stage_layout(texts[0], texts[1], cfg.seed, cfg.strict)
        else:
            out = pipeline.stage_render(texts[0], cfg.style)
    except FormatMismatch as e:
        _diag(name, "error", f"FormatMismatch: {e}")
        return EXIT_FAIL
    except T2PError as e:
        _diag(name, "error", f"{type(e).__name__}: {e}")
        if cfg.keep_partial and getattr(e, "partial_plan", None) is not None:
            _write(cfg.output_dir, {"plan.json": pipeline.dump_plan(e.partial_plan)})
        return EXIT_FAIL
    except ValueError as e:
        _diag(name, "error", e)
        return EXIT_FAIL
    _write(cfg.output_dir, out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        cfg = load_config(args.config, _overrides(args))
    except (ValueError, OSError) as e:
        _diag("config", "error", e)
        return EXIT_USAGE
    try:
        if args.command == "render":
            return cmd_render(args, cfg)
        if args.command == "train":
            return cmd_train(args, cfg)
        if args.command == "gen-corpus":
            return cmd_gen_corpus(args, cfg, parser)
        return cmd_stage(args, cfg)
    except OSError as e:
        _diag("io", "error", e)
        return EXIT_FAIL
    except T2PError as e:
        _diag(e.stage, "error", f"{type(e).__name__}: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
