#!/usr/bin/env python3
"""
Learning-rate sweep of the embedding trainer on a complete binary tree.

Trains with the natural and the geodesic rule at every rate of the grid and writes one
CSV row per (rule, lr): final tau, mean loss over the last steps, failure flags.

Usage:
    python scripts/lr_sweep.py
    python scripts/lr_sweep.py --depth 5 --mode directed_closure --steps 20000 --out sweep.csv
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

import settings
from artifacts import write_csv
from embedding.evaluate import evaluate
from embedding.models import TrainConfig
from embedding.trainer import train
from graphs.builders import complete_binary_tree
from graphs.models import TreeMode
from optim.models import UpdateRule

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s  %(levelname)-8s  %(message)s",
    datefmt="%H:%M:%S",
)
log = logging.getLogger("lr_sweep")

RULES = (UpdateRule.NATURAL, UpdateRule.GEODESIC)


def sweep_cell(graph, base, rule: UpdateRule, lr: float, steps: int, negatives: int, seed: int) -> tuple:
    cfg = TrainConfig(rule=rule, lr=lr, steps=steps, negatives=negatives, seed=seed, eval_every=0)
    state, trace = train(graph, cfg)
    report = evaluate(state, graph, base)
    log.info("%-8s lr=%-5g tau=%.4f mean loss=%.5g%s", rule.value, lr, report.tau, trace.mean_last,
             "  FAILED" if trace.failed else "")
    return (rule.value, lr, report.tau, report.tau_base, trace.mean_last,
            trace.failed, trace.clip_locked, trace.clip_events)


def main() -> None:
    parser = argparse.ArgumentParser(description="embedding learning-rate sweep")
    parser.add_argument("--depth", type=int, default=5)
    parser.add_argument("--mode", choices=[m.value for m in TreeMode], default=TreeMode.UNDIRECTED.value)
    parser.add_argument("--steps", type=int, default=settings.EMBED_STEPS)
    parser.add_argument("--negatives", type=int, default=settings.EMBED_NEGATIVES)
    parser.add_argument("--seed", type=int, default=settings.EMBED_SEED)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--out", type=Path, default=ROOT / "lr_sweep.csv")
    args = parser.parse_args()

    graph = complete_binary_tree(args.depth, args.mode)
    base = complete_binary_tree(args.depth, TreeMode.UNDIRECTED) if args.mode != TreeMode.UNDIRECTED.value else None
    grid = [(rule, lr) for rule in RULES for lr in settings.EMBED_RATES]
    log.info("%d cells on a depth-%d %s tree", len(grid), args.depth, args.mode)

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        rows = list(pool.map(
            lambda cell: sweep_cell(graph, base, cell[0], cell[1], args.steps, args.negatives, args.seed),
            grid,
        ))
    write_csv(args.out, ["rule", "lr", "tau", "tau_base", "mean_last_loss", "failed", "clip_locked", "clip_events"],
              rows)
    log.info("wrote %s", args.out)


if __name__ == "__main__":
    main()
