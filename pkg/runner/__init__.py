"""
runner package: episode loop, suites and metrics.

Public API:
- RunConfig, build_config, load_config, merge
- run_episode, make_backend, EpisodeRecord
- run_suite, save_episode, collect_metrics
- report_tokens, episode_metrics, aggregate, format_table
"""

from .config import DEFAULT_SUB_STEPS, DEFAULT_TOTAL_STEPS, RunConfig, build_config, load_config, merge
from .episode import (
    ENDED_BUDGET,
    ENDED_ERROR,
    ENDED_ITERATIONS,
    ENDED_PLANNER,
    ENDED_SUCCESS,
    make_backend,
    run_episode,
)
from .metrics import aggregate, episode_metrics, format_table, report_tokens
from .record import HARD_CHECKPOINTS, EpisodeRecord, dumps
from .suite import collect_metrics, run_suite, save_episode

__all__ = [
    "DEFAULT_SUB_STEPS",
    "DEFAULT_TOTAL_STEPS",
    "ENDED_BUDGET",
    "ENDED_ERROR",
    "ENDED_ITERATIONS",
    "ENDED_PLANNER",
    "ENDED_SUCCESS",
    "EpisodeRecord",
    "HARD_CHECKPOINTS",
    "RunConfig",
    "aggregate",
    "build_config",
    "collect_metrics",
    "dumps",
    "episode_metrics",
    "format_table",
    "load_config",
    "make_backend",
    "merge",
    "report_tokens",
    "run_episode",
    "run_suite",
    "save_episode",
]
