"""Command-line orchestration: corpus, seeds, pairs, train, run, report, serve.

Every artifact the CLI writes is line-delimited JSON, plain text, or a
JSON document, and every one of them is re-loadable by the CLI itself.
Run configs are single JSON documents; `run --print-config` shows every
default explicitly.
"""

import argparse
import json
import sys
from pathlib import Path

from .chem.graph import decode
from .chem.properties import ORACLE_NAMES, PENALIZED_LOGP, PropertyOracle
from .chem.tokens import tokenize
from .corpus import DEFAULT_SEED, DEFAULT_SIZE, synthetic_corpus
from .engine.run import RunConfig, run_recursive, series_csv
from .engine.seeds import maxmin_select
from .errors import ItermolError
from .runstore import load_run, write_run
from .translate.pairs import PairConstraint, build_pairs, load_pairs, save_pairs
from .translate.reference import (
    DEFAULT_ALPHA,
    DEFAULT_BUCKETS,
    DEFAULT_POSITION_CAP,
    ReferenceTranslator,
    train_reference,
)

# Property bands for stratified seed selection (low / medium / high).
STRATA_BANDS = {
    "low": (float("-inf"), -1.0),
    "medium": (-1.0, 1.0),
    "high": (1.0, float("inf")),
}

# Heavy mixed-decoder preset: two samplers at 100 sequences each plus a
# 20-beam search, aggregated before ranking (220 generations/iteration).
PRESETS = {
    "benchmark-budget": {
        "iterations": 25,
        "decode": [
            {"strategy": "top-k", "k": 2, "num_samples": 100, "max_length": 60},
            {"strategy": "top-k", "k": 5, "num_samples": 100, "max_length": 60},
            {"strategy": "beam", "width": 20, "num_returned": 20, "max_length": 60},
        ],
    },
}

DEFAULT_RUN_CONFIG = {
    "model": "model.json",
    "iterations": 10,
    "decode": [{"strategy": "top-k", "k": 5, "num_samples": 20, "max_length": 60}],
    "scoring": "penalized-logp",
    "objective": {"name": PENALIZED_LOGP, "normalization": None},
    "seeds": {"corpus": "corpus.txt", "count": 10, "start": 0},
    "rng_seed": 0,
    "fingerprint_radius": 2,
    "top_m": 3,
}


def _fail(message: str) -> "NoReturn":  # noqa: F821
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(2)


def _read_corpus(path: str) -> list[str]:
    p = Path(path)
    if not p.is_file():
        _fail(f"corpus file not found: {p}")
    return [line.strip() for line in p.read_text(encoding="utf-8").splitlines() if line.strip()]


def cmd_corpus(args) -> int:
    molecules = synthetic_corpus(args.size, args.seed)
    Path(args.out).write_text("\n".join(molecules) + "\n", encoding="utf-8")
    print(f"wrote {len(molecules)} molecules to {args.out}")
    return 0


def cmd_seeds(args) -> int:
    corpus = _read_corpus(args.corpus)
    oracle = PropertyOracle(args.property)
    graphs = [decode(tokenize(text)) for text in corpus]
    pool = list(range(len(corpus)))
    if args.strata:
        lo, hi = STRATA_BANDS[args.strata]
        pool = [i for i in pool if lo <= oracle.raw(graphs[i]) <= hi]
        if len(pool) < args.count:
            _fail(f"stratum {args.strata!r} holds only {len(pool)} molecules")
    start = args.start
    if start >= len(pool):
        _fail(f"--start {start} out of range for pool of {len(pool)}")
    picked = maxmin_select([graphs[i] for i in pool], args.count, start, args.radius)
    chosen = [corpus[pool[i]] for i in picked]
    if args.out:
        Path(args.out).write_text("\n".join(chosen) + "\n", encoding="utf-8")
    for text in chosen:
        print(text)
    return 0


def cmd_pairs(args) -> int:
    corpus = [tokenize(text) for text in _read_corpus(args.corpus)]
    if args.budget < 1:
        _fail("--budget must be >= 1")
    constraint = PairConstraint(
        oracle=PropertyOracle(args.property),
        tau=args.tau,
        radius=args.radius,
        source_band=tuple(args.source_band) if args.source_band else None,
        target_band=tuple(args.target_band) if args.target_band else None,
    )
    pairs = build_pairs(corpus, constraint, args.budget, args.seed)
    save_pairs(args.out, pairs)
    total = len(corpus) * (len(corpus) - 1)
    print(
        f"accepted {len(pairs)} pairs (budget {args.budget}, "
        f"{total} candidates, acceptance rate {len(pairs) / total:.4f})"
    )
    return 0


def cmd_train(args) -> int:
    pairs_path = Path(args.pairs)
    if not pairs_path.is_file():
        _fail(f"pairs file not found: {pairs_path}")
    pairs = load_pairs(pairs_path)
    model = train_reference(
        pairs,
        PropertyOracle(args.property),
        alpha=args.alpha,
        buckets=args.buckets,
        position_cap=args.position_cap,
    )
    model.save(args.out)
    print(
        f"trained on {len(pairs)} pairs: {len(model.counts)} contexts, "
        f"{args.buckets} buckets, alpha {args.alpha}; saved to {args.out}"
    )
    return 0


def resolve_config(document: dict) -> tuple[RunConfig, dict]:
    """Split a config document into an engine RunConfig and input paths."""
    document = dict(document)
    inputs = {}
    model_path = document.pop("model", None)
    if model_path:
        inputs["model"] = model_path
    seeds = document.get("seeds")
    if isinstance(seeds, dict):
        corpus_path = seeds["corpus"]
        inputs["corpus"] = corpus_path
        corpus = _read_corpus(corpus_path)
        graphs = [decode(tokenize(text)) for text in corpus]
        picked = maxmin_select(
            graphs,
            seeds.get("count", 10),
            seeds.get("start", 0),
            document.get("fingerprint_radius", 2),
        )
        document["seeds"] = [corpus[i] for i in picked]
    return RunConfig.from_dict(document), inputs


def _print_report(report: dict) -> None:
    if report.get("non_recursive_baseline"):
        print("mode: non-recursive baseline (single pass)")
    print(f"generations: {report['total_generations']} total, "
          f"{report['generations_per_seed']} per seed")
    print("top compounds by objective:")
    print(f"{'rank':>4}  {'objective':>12}  sequence")
    for rank, entry in enumerate(report["top"], start=1):
        print(f"{rank:>4}  {entry['objective']:>12.4f}  {entry['tokens']}")


def cmd_run(args) -> int:
    if args.print_config:
        print(json.dumps(DEFAULT_RUN_CONFIG, indent=2, sort_keys=True))
        return 0
    if not args.config:
        _fail("--config is required (or use --print-config)")
    config_path = Path(args.config)
    if not config_path.is_file():
        _fail(f"config file not found: {config_path}")
    document = json.loads(config_path.read_text(encoding="utf-8"))
    if args.preset:
        document.update(PRESETS[args.preset])
    model_path = document.get("model")
    if not model_path or not Path(model_path).is_file():
        _fail(f"model file not found: {model_path}")
    model = ReferenceTranslator.load(model_path)
    config, inputs = resolve_config(document)
    result = run_recursive(config, model)
    manifest = write_run(args.out_dir, result, inputs)
    report = result.report.to_dict()
    print(f"run {manifest.run_id} written to {Path(args.out_dir) / manifest.run_id}")
    _print_report(report)
    print()
    print(series_csv(result.report), end="")
    return 0


def cmd_report(args) -> int:
    run_dir = Path(args.run)
    artifacts = load_run(run_dir.parent, run_dir.name)
    _print_report(artifacts["report"])
    print()
    print(artifacts["series"], end="")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    host, _, port = args.bind.rpartition(":")
    serve(host or "127.0.0.1", int(port), args.store, ui_dir=args.ui)
    return 0


def cmd_model_server(args) -> int:
    from .translate import wire

    argv = ["--echo"] if args.echo else ["--model", args.model]
    return wire.main(argv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itermol",
        description="Recursive translation engine for molecular sequence optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corpus", help="write the bundled synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("seeds", help="select diverse seed compounds (MaxMin)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--strata", choices=sorted(STRATA_BANDS))
    p.add_argument("--property", choices=ORACLE_NAMES, default=PENALIZED_LOGP)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_seeds)

    p = sub.add_parser("pairs", help="build similarity-constrained training pairs")
    p.add_argument("--corpus", required=True)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--property", choices=ORACLE_NAMES, default=PENALIZED_LOGP)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--source-band", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--target-band", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("train", help="train the reference translator")
    p.add_argument("--pairs", required=True)
    p.add_argument("--property", choices=ORACLE_NAMES, default=PENALIZED_LOGP)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--buckets", type=int, default=DEFAULT_BUCKETS)
    p.add_argument("--position-cap", type=int, default=DEFAULT_POSITION_CAP)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("run", help="execute a run config")
    p.add_argument("--config")
    p.add_argument("--out-dir", default="runs")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--print-config", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="reprint a stored run's report")
    p.add_argument("--run", required=True, help="path to a run folder")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="serve the session HTTP API")
    p.add_argument("--bind", default="127.0.0.1:8765")
    p.add_argument("--store", default="runs")
    p.add_argument("--ui", help="directory of built UI assets to serve at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("model-server", help="serve a model over the wire protocol")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--model")
    group.add_argument("--echo", action="store_true")
    p.set_defaults(func=cmd_model_server)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ItermolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
