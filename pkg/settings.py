"""Numeric defaults loaded from settings.yaml."""

from __future__ import annotations

import logging
from pathlib import Path

import yaml

log = logging.getLogger(__name__)

_SETTINGS_PATH = Path(__file__).resolve().parent / "settings.yaml"


def _load_settings() -> dict:
    if _SETTINGS_PATH.exists():
        with open(_SETTINGS_PATH, encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    log.warning("settings.yaml not found at %s, using built-in defaults", _SETTINGS_PATH)
    return {}


_S = _load_settings()

_disk = _S.get("disk", {})
DEFAULT_RADIUS: float = float(_disk.get("radius", 1.0))
CLIP_EPS: float = float(_disk.get("clip_eps", 1e-10))
SINHC_SWITCH: float = float(_disk.get("sinhc_switch", 1e-4))
DEGENERATE_CURVATURE: float = float(_disk.get("degenerate_curvature", 1e-10))
ORACLE_MIN_ANGLE: float = float(_disk.get("oracle_min_angle", 1e-4))
ORACLE_MIN_NORM: float = float(_disk.get("oracle_min_norm", 1e-8))

FD_STEP: float = float(_S.get("diagnostics", {}).get("fd_step", 1e-5))

_bc = _S.get("barycenter", {})
ANCHOR_EPS: float = float(_bc.get("anchor_eps", 1e-8))
BARYCENTER_RATES: tuple[float, ...] = tuple(
    float(x) for x in _bc.get("learning_rates", [0.0001, 0.01, 0.02, 0.05, 0.1, 0.2])
)
BARYCENTER_ITERATIONS: int = int(_bc.get("iterations", 10000))
BARYCENTER_TAIL: int = int(_bc.get("tail", 200))
OFFSET_BINS: int = int(_bc.get("offset_bins", 60))
NEAR_OPTIMUM: float = float(_bc.get("near_optimum", 0.1))
SOLVE_STEPS: int = int(_bc.get("solve_steps", 200))
BIAS_RATES: tuple[float, ...] = tuple(float(x) for x in _bc.get("bias_rates", [0.01, 0.05, 0.1, 0.2]))

_em = _S.get("embedding", {})
EMBED_DIM: int = int(_em.get("dim", 2))
EMBED_LR: float = float(_em.get("lr", 0.05))
EMBED_NEGATIVES: int = int(_em.get("negatives", 0))
EMBED_STEPS: int = int(_em.get("steps", 20000))
EMBED_BATCH: int = int(_em.get("batch", 1))
INIT_RANGE: tuple[float, float] = tuple(float(x) for x in _em.get("init_range", [-0.001, 0.001]))
EMBED_SEED: int = int(_em.get("seed", 0))
EVAL_EVERY: int = int(_em.get("eval_every", 1000))
EMBED_TAIL: int = int(_em.get("tail", 100))
EMBED_RATES: tuple[float, ...] = tuple(
    float(x) for x in _em.get("learning_rates", [0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0])
)
CLIP_LOCK_FRACTION: float = float(_em.get("clip_lock_fraction", 0.5))

_st = _S.get("selftest", {})
SELFTEST_SAMPLES: int = int(_st.get("samples", 100000))
SELFTEST_ORACLE_SAMPLES: int = int(_st.get("oracle_samples", 10000))
SELFTEST_SEED: int = int(_st.get("seed", 0))
SELFTEST_BOUNDARY_GAP: float = float(_st.get("boundary_gap", 1e-8))
SELFTEST_ARRIVAL_GAP: float = float(_st.get("arrival_gap", 1e-7))
SELFTEST_DISTANCE_TOL: float = float(_st.get("distance_tol", 1e-9))
SELFTEST_ORACLE_TOL: float = float(_st.get("oracle_tol", 1e-8))
SELFTEST_CIRCLE_TOL: float = float(_st.get("circle_tol", 1e-9))
