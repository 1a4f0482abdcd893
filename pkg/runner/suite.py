"""Run many tasks, persist their results and aggregate the suite report."""

from __future__ import annotations

import glob
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import output as output_writers
from console import Logger
from model import ConfigError
from sources import load_document

from .config import RunConfig
from .episode import run_episode
from .metrics import aggregate, episode_metrics


def save_episode(record, output_dir, output_format="episode"):
    """
    Write the episode files to a new run directory.

    Returns:
        (run directory, metrics dict)
    """
    metrics = episode_metrics(record)
    run_dir = output_writers.run_directory(output_dir, record.task_id)
    output_writers.get(output_format)(run_dir, record, metrics)
    return run_dir, metrics


def _failed_row(spec, error):
    return {
        "task_id": spec.task_id,
        "domain": spec.domain,
        "success": False,
        "progress_rate": 0.0,
        "total_env_steps": 0,
        "checkpoints": 0,
        "error": f"{type(error).__name__}: {error}",
    }


def _run_one(spec, cfg, save):
    task_cfg = replace(cfg, task_id=spec.task_id)
    try:
        record = run_episode(task_cfg, spec=spec)
    except Exception as e:
        return _failed_row(spec, e), None
    if save:
        _, metrics = save_episode(record, cfg.output_dir)
    else:
        metrics = episode_metrics(record)
    return metrics, record


def run_suite(specs, cfg: RunConfig, save: bool = True):
    """
    Run every task spec with cfg (task_id replaced per task).

    Tasks run in parallel when cfg.workers > 1. A task that cannot be built
    or run is recorded as a failed row; the suite always completes.

    Returns:
        (suite report, list of metrics rows in manifest order)

    Raises:
        ConfigError if specs is empty.
    """
    specs = list(specs)
    if not specs:
        raise ConfigError("Task manifest is empty")
    cfg.validate()

    Logger.section(f"Running {len(specs)} task(s) with the {cfg.backend} backend")
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(lambda spec: _run_one(spec, cfg, save), specs))
    else:
        results = [_run_one(spec, cfg, save) for spec in specs]

    rows = []
    for idx, (row, _) in enumerate(results, 1):
        rows.append(row)
        label = f"[{idx}/{len(specs)}] {row['task_id']}"
        if row.get("error"):
            Logger.error(f"{label}: {row['error']}", indent=True)
        elif row.get("success"):
            Logger.success(f"{label}: solved in {row['total_env_steps']} steps", indent=True)
        else:
            Logger.warn(f"{label}: failed, progress {100 * row['progress_rate']:.0f}%", indent=True)

    return aggregate(rows), rows


def collect_metrics(output_dir):
    """Load every metrics.json below output_dir, sorted by path."""
    paths = sorted(glob.glob(os.path.join(output_dir, "**", "metrics.json"), recursive=True))
    return [load_document(path) for path in paths]
