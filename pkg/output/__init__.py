"""
Helper to get an output function that writes episode results to a run directory.

Run directory layout: <output_dir>/<task_id>/<timestamp>/
  - record.json       full EpisodeRecord
  - trajectory.jsonl  one event per line
  - metrics.json      outcome, tokens and duration
"""

import json
import os
from datetime import datetime


def write_lines(file, content):
    with open(file, 'w', encoding='utf-8', newline='\n') as f:
        for line in content:
            f.write(f"{line}\n")


def write_json(file, data):
    with open(file, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(data, f, sort_keys=True, indent=2, ensure_ascii=False)
        f.write("\n")


def run_directory(output_dir, task_id, timestamp=None):
    """Create a fresh <output_dir>/<task_id>/<timestamp> directory."""
    stamp = timestamp or datetime.now().strftime("%Y%m%dT%H%M%S")
    base = os.path.join(output_dir, task_id, stamp)
    path, n = base, 1
    while os.path.exists(path):
        n += 1
        path = f"{base}-{n}"
    os.makedirs(path)
    return path


def record_file(run_dir, record, metrics):
    write_json(os.path.join(run_dir, "record.json"), record.to_dict())


def trajectory_file(run_dir, record, metrics):
    write_lines(os.path.join(run_dir, "trajectory.jsonl"), record.trajectory_lines())


def metrics_file(run_dir, record, metrics):
    write_json(os.path.join(run_dir, "metrics.json"), metrics)


def episode_files(run_dir, record, metrics):
    record_file(run_dir, record, metrics)
    trajectory_file(run_dir, record, metrics)
    metrics_file(run_dir, record, metrics)


def get(output_type):
    """
    Get an output function by type.

    Supported types:
      - 'episode' -> writes record.json, trajectory.jsonl and metrics.json
    """

    output_type = (output_type or "").lower()
    if output_type == "episode":
        return episode_files

    raise ValueError(f"Unknown output type: {output_type}")
