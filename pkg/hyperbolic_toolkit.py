#!/usr/bin/env python3
"""
Command-line front end of the hyperbolic toolkit.

Usage:
    python hyperbolic_toolkit.py gen-graph --depth 5 --mode closure --out tree5.tsv
    python hyperbolic_toolkit.py barycenter --outdir out/barycenter
    python hyperbolic_toolkit.py embed --graph tree5.tsv --lr 0.05 --out out/embed
    python hyperbolic_toolkit.py eval --graph tree5.tsv --embedding out/embed/embedding.tsv --out eval.json
    python hyperbolic_toolkit.py expmap-selftest --samples 100000 --seed 0

Exit codes: 0 success (flagged experiment failures included), 1 usage, 2 IO or parse
error, 3 self-test failure, an experiment grid in which every cell failed, or a
computation that rejected its input (tau of an embedding with all points coincident).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

import settings
from artifacts import (
    ArtifactError,
    cell_stem,
    read_embedding,
    write_embedding,
    write_embedding_trace,
    write_histogram,
    write_json,
    write_run_trace,
)
from barycenter.bias import bias_probe
from barycenter.experiment import run_two_anchor_experiment
from embedding.evaluate import evaluate
from embedding.models import TrainConfig
from embedding.trainer import train
from graphs.builders import MAX_TREE_DEPTH, complete_binary_tree
from graphs.models import GraphError, TreeMode
from graphs.parser import load_edge_list, write_edge_list
from optim.models import UpdateRule
from selftest import run_selftest

log = logging.getLogger("hyperbolic_toolkit")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FAILED = 3

_MODES = {
    "undirected": TreeMode.UNDIRECTED,
    "closure": TreeMode.DIRECTED_CLOSURE,
    "directed_closure": TreeMode.DIRECTED_CLOSURE,
}


class UsageError(Exception):
    pass


class ToolkitArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def tree_depth(text: str) -> int:
    value = int(text)
    if not 1 <= value <= MAX_TREE_DEPTH:
        raise argparse.ArgumentTypeError(f"must lie in 1..{MAX_TREE_DEPTH}, got {value}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def open_unit_float(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie strictly between 0 and 1, got {value}")
    return value


def rate_list(text: str) -> list[float]:
    try:
        rates = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None
    if not rates or any(not r > 0 for r in rates):
        raise argparse.ArgumentTypeError(f"rates must be positive, got {text!r}")
    return rates


def build_parser() -> ToolkitArgumentParser:
    parser = ToolkitArgumentParser(prog="hyperbolic_toolkit", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-graph", help="write a complete binary tree as a TSV edge list")
    g.add_argument("--depth", type=tree_depth, required=True)
    g.add_argument("--mode", choices=sorted(_MODES), default="undirected")
    g.add_argument("--out", type=Path, required=True)

    b = sub.add_parser("barycenter", help="two-anchor experiment grid and bias probe")
    b.add_argument("--rates", type=rate_list, default=list(settings.BARYCENTER_RATES),
                   help="comma-separated learning rates")
    b.add_argument("--iters", type=non_negative_int, default=settings.BARYCENTER_ITERATIONS)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--eps", type=open_unit_float, default=settings.ANCHOR_EPS, help="far anchor at (1 - eps, 0)")
    b.add_argument("--workers", type=positive_int, default=None)
    b.add_argument("--outdir", type=Path, required=True)

    e = sub.add_parser("embed", help="train a Poincaré embedding of a graph")
    e.add_argument("--graph", type=Path, required=True)
    e.add_argument("--dim", type=positive_int, default=settings.EMBED_DIM)
    e.add_argument("--lr", type=float, default=settings.EMBED_LR)
    e.add_argument("--rule", choices=[r.value for r in UpdateRule], default=UpdateRule.GEODESIC.value)
    e.add_argument("--negatives", type=non_negative_int, default=settings.EMBED_NEGATIVES,
                   help="0 uses the full softmax denominator")
    e.add_argument("--steps", type=non_negative_int, default=settings.EMBED_STEPS)
    e.add_argument("--batch", type=positive_int, default=settings.EMBED_BATCH)
    e.add_argument("--eval-every", type=non_negative_int, default=settings.EVAL_EVERY)
    e.add_argument("--seed", type=int, default=settings.EMBED_SEED)
    e.add_argument("--base", type=Path, default=None, help="second edge list to report tau against")
    e.add_argument("--out", type=Path, required=True, help="output directory")

    v = sub.add_parser("eval", help="evaluate a saved embedding")
    v.add_argument("--graph", type=Path, required=True)
    v.add_argument("--embedding", type=Path, required=True)
    v.add_argument("--base", type=Path, default=None)
    v.add_argument("--out", type=Path, required=True, help="JSON report path")

    s = sub.add_parser("expmap-selftest", help="randomised exponential-map self-test")
    s.add_argument("--samples", type=positive_int, default=settings.SELFTEST_SAMPLES)
    s.add_argument("--seed", type=int, default=settings.SELFTEST_SEED)
    s.add_argument("--out", type=Path, default=None, help="optional JSON report path")
    return parser


def cmd_gen_graph(args: argparse.Namespace) -> int:
    graph = complete_binary_tree(args.depth, _MODES[args.mode])
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_edge_list(graph, args.out)
    print(f"{args.out}: {len(graph)} nodes, {len(graph.edges)} edges")
    return EXIT_OK


def cmd_barycenter(args: argparse.Namespace) -> int:
    args.outdir.mkdir(parents=True, exist_ok=True)
    cells = run_two_anchor_experiment(
        args.rates, iterations=args.iters, seed=args.seed, eps=args.eps, workers=args.workers
    )
    summary: dict = {"eps": args.eps, "iterations": args.iters, "seed": args.seed}
    for cell in cells:
        stem = cell_stem(cell)
        write_run_trace(args.outdir / f"{stem}_trace.csv", cell.trace)
        write_histogram(args.outdir / f"{stem}_offsets.csv", cell)
        summary[f"{stem}.mean_offset"] = cell.mean_offset
        summary[f"{stem}.mean_abs_offset"] = cell.mean_abs_offset
        summary[f"{stem}.min_distance_to_opt"] = cell.min_distance_to_opt
        summary[f"{stem}.reached"] = cell.reached
        summary[f"{stem}.final_loss"] = float(cell.trace.loss_values[-1])
        summary[f"{stem}.clip_events"] = cell.trace.clip_events
        summary[f"{stem}.failed"] = cell.failed
        summary[f"{stem}.failure_reason"] = cell.failure_reason

    for lr in settings.BIAS_RATES:
        probe = bias_probe(args.eps, lr)
        key = f"bias.lr{format(lr, 'g')}"
        summary[f"{key}.p_opt"] = probe.p_opt
        summary[f"{key}.geo_left"] = probe.geo_left
        summary[f"{key}.geo_right"] = probe.geo_right
        summary[f"{key}.geo_balanced"] = probe.geo_gap <= 1e-12
        summary[f"{key}.nat_left"] = probe.nat_left
        summary[f"{key}.nat_right"] = probe.nat_right
        summary[f"{key}.natural_outward"] = probe.natural_outward
        summary[f"{key}.right_clipped"] = probe.right_clipped
        summary[f"{key}.closed_form_left_error"] = abs(probe.nat_left_coord - probe.closed_left)
        summary[f"{key}.closed_form_right_error"] = (
            None if probe.right_clipped else abs(probe.nat_right_coord - probe.closed_right)
        )
    write_json(args.outdir / "summary.json", summary)

    failed = sum(c.failed for c in cells)
    print(f"{len(cells)} cells written to {args.outdir} ({failed} flagged as failed)")
    if cells and failed == len(cells):
        log.error("every cell of the grid failed")
        return EXIT_FAILED
    return EXIT_OK


def _load_base(path: Optional[Path]):
    return load_edge_list(path) if path is not None else None


def cmd_embed(args: argparse.Namespace) -> int:
    cfg = TrainConfig(
        dim=args.dim,
        lr=args.lr,
        negatives=args.negatives,
        steps=args.steps,
        batch=args.batch,
        seed=args.seed,
        rule=args.rule,
        eval_every=args.eval_every,
    )
    graph = load_edge_list(args.graph)
    base = _load_base(args.base)
    args.out.mkdir(parents=True, exist_ok=True)

    state, trace = train(graph, cfg)
    write_embedding(args.out / "embedding.tsv", state, graph)
    write_embedding_trace(args.out / "trace.csv", trace)
    report = evaluate(state, graph, base)
    write_json(
        args.out / "eval.json",
        {
            **report.as_flat_dict(),
            "mean_last_loss": trace.mean_last,
            "steps_taken": trace.steps_taken,
            "failed": trace.failed,
            "failure_reason": trace.failure_reason,
            "clip_locked": trace.clip_locked,
            "clip_events": trace.clip_events,
            "rule": cfg.rule.value,
            "lr": cfg.lr,
            "dim": cfg.dim,
            "negatives": cfg.negatives,
            "seed": cfg.seed,
        },
    )
    print(f"tau {report.tau:.4f}, mean loss over last {trace.tail} steps {trace.mean_last:.6g}"
          + (f" (failed: {trace.failure_reason})" if trace.failed else ""))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    graph = load_edge_list(args.graph)
    state = read_embedding(args.embedding, graph)
    report = evaluate(state, graph, _load_base(args.base))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_json(args.out, report.as_flat_dict())
    print(f"tau {report.tau:.4f}, full loss {report.full_loss:.6g}")
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    report = run_selftest(args.samples, args.seed)
    for s in report.suites:
        status = "PASS" if s.passed else "FAIL"
        beyond = f", {s.unrepresentable} beyond float64 resolution" if s.unrepresentable else ""
        print(f"{status} {s.name}: {s.checked} checked, {s.failed} failed{beyond}, "
              f"max error {s.max_error:.3g} (tolerance {s.tolerance:.1g})")
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        write_json(args.out, report.as_flat_dict())
    return EXIT_OK if report.ok else EXIT_FAILED


COMMANDS = {
    "gen-graph": cmd_gen_graph,
    "barycenter": cmd_barycenter,
    "embed": cmd_embed,
    "eval": cmd_eval,
    "expmap-selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(e, file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=logging.DEBUG if args.verbose else logging.INFO,
    )
    try:
        return COMMANDS[args.command](args)
    except ValidationError as e:
        print(f"invalid configuration:\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ArtifactError) as e:
        log.error("%s", e)
        return EXIT_IO
    except OSError as e:
        log.error("%s: %s", getattr(e, "filename", None) or "I/O error", e.strerror or e)
        return EXIT_IO
    except ValueError as e:
        log.error("cannot complete %s: %s", args.command, e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
