#!/usr/bin/env python3
"""
Duet Agent Runner

Runs the hierarchical planner/actor agent with a neurosymbolic belief state
on bundled text environments, and aggregates the results.

Usage:
    python duet.py run --task <task_id> [options]
    python duet.py suite [--domain <domain>] [options]
    python duet.py replay --task <task_id> [--transcript <file>] [--compare <trajectory.jsonl>]
    python duet.py report <output_dir>

Example:
    python duet.py run --task blocksworld-tower4 --backend oracle
    python duet.py replay --task household-picktwo-soapbar --strict
"""

import argparse
import json
import os
import sys

from dotenv import load_dotenv

import envs
import runner
from console import Logger
from model import DuetError

DEFAULT_CONFIG = "duet.yaml"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILED = 2


class ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this CLI reserves 2 for failed runs."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# ============================================================================
# Argument Parsing
# ============================================================================

def add_run_options(parser):
    parser.add_argument("--config", help=f"YAML/JSON config file (default: {DEFAULT_CONFIG} when present)")
    parser.add_argument("--backend", choices=runner.config.BACKENDS)
    parser.add_argument("--manifest", help="task manifest (default: tasks/tasks.yaml)")
    parser.add_argument("--max-total-steps", type=int, help="environment step budget per episode")
    parser.add_argument("--max-sub-steps", type=int, help="actor turns per subgoal")
    parser.add_argument("--history-window", type=int, help="planner steps kept in the prompt (default: all)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--output-dir", help="results directory")
    parser.add_argument("--state-binding", choices=runner.config.STATE_BINDINGS,
                        help="what the actor sees as its current state")
    parser.add_argument("--skill-limit", type=int, help="skill exemplars per actor prompt")
    parser.add_argument("--fact-cap", type=int, help="maximum learned facts kept in the belief")
    parser.add_argument("--planner-retries", type=int, help="re-prompts for malformed planner output")
    parser.add_argument("--temperature", type=float)
    parser.add_argument("--max-tokens", type=int)
    parser.add_argument("--workers", type=int, help="parallel episodes in a suite")
    parser.add_argument("--sequential-verification", action="store_true",
                        help="ask verification questions one after another")
    parser.add_argument("--quiet", action="store_true", help="no console output")


def build_parser():
    parser = ArgumentParser(prog="duet.py", description="Hierarchical text-environment agent runner")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run a single task")
    run.add_argument("--task", required=True)
    add_run_options(run)

    suite = commands.add_parser("suite", help="run every task in the manifest")
    suite.add_argument("--domain", action="append", help="only tasks of this domain (repeatable)")
    suite.add_argument("--task", action="append", dest="tasks", help="only this task id (repeatable)")
    add_run_options(suite)

    replay = commands.add_parser("replay", help="re-execute a task from a recorded transcript")
    replay.add_argument("--task", required=True)
    replay.add_argument("--transcript", help="transcript file (default: the task's manifest entry)")
    replay.add_argument("--strict", action="store_true", help="check component tags and prompt prefixes")
    replay.add_argument("--compare", help="trajectory.jsonl the run must reproduce byte for byte")
    add_run_options(replay)

    report = commands.add_parser("report", help="aggregate metrics.json files below a directory")
    report.add_argument("output_dir")
    report.add_argument("--json", help="also write the report to this file")
    report.add_argument("--quiet", action="store_true")
    return parser


def config_from_args(args, **extra):
    path = args.config or (DEFAULT_CONFIG if os.path.exists(DEFAULT_CONFIG) else None)
    overrides = {
        "backend": args.backend,
        "manifest": args.manifest,
        "max_total_steps": args.max_total_steps,
        "max_sub_steps": args.max_sub_steps,
        "history_window": args.history_window,
        "seed": args.seed,
        "output_dir": args.output_dir,
        "state_binding": args.state_binding,
        "skill_limit": args.skill_limit,
        "fact_cap": args.fact_cap,
        "planner_retries": args.planner_retries,
        "temperature": args.temperature,
        "max_tokens": args.max_tokens,
        "workers": args.workers,
        "concurrent_verification": False if args.sequential_verification else None,
    }
    overrides.update(extra)
    return runner.build_config(path, **overrides)


# ============================================================================
# Commands
# ============================================================================

def log_episode(record, run_dir):
    Logger.section(f"Episode '{record.task_id}' ({record.domain})")
    for step, episode in zip(record.planner_steps, record.sub_episodes):
        Logger.info(f"k={step.k} {step.subgoal.description}", indent=True)
        Logger.detail("Outcome", f"{episode.status.label}, {episode.env_steps_consumed} step(s)", indent=True)
    if record.error:
        Logger.error(record.error)
    tokens = runner.report_tokens(record)
    Logger.summary({
        "Success": "yes" if record.success else "no",
        "Progress": f"{100 * record.progress_rate:.1f}%",
        "Env steps": record.total_env_steps,
        "Planner steps": len(record.planner_steps),
        "Tokens": f"{tokens['total']:,}",
        "Ended by": record.ended_by,
        "Results": run_dir,
    })


def cmd_run(args):
    cfg = config_from_args(args, task_id=args.task)
    Logger.header(f"Running '{cfg.task_id}' with the {cfg.backend} backend")
    record = runner.run_episode(cfg)
    run_dir, _ = runner.save_episode(record, cfg.output_dir)
    log_episode(record, run_dir)
    return EXIT_OK if record.success else EXIT_FAILED


def cmd_suite(args):
    cfg = config_from_args(args)
    specs = envs.load_manifest(cfg.manifest)
    if args.domain:
        specs = [spec for spec in specs if spec.domain in args.domain]
    if args.tasks:
        specs = [spec for spec in specs if spec.task_id in args.tasks]

    Logger.header(f"Suite of {len(specs)} task(s)")
    report, rows = runner.run_suite(specs, cfg)
    os.makedirs(cfg.output_dir, exist_ok=True)
    with open(os.path.join(cfg.output_dir, "suite.json"), "w", encoding="utf-8") as f:
        json.dump({"report": report, "tasks": rows}, f, sort_keys=True, indent=2)

    Logger.section("Results")
    Logger.table(runner.format_table(report))
    failed = report["overall"]["tasks"] - report["overall"]["successes"]
    return EXIT_OK if failed == 0 else EXIT_FAILED


def cmd_replay(args):
    params = {"strict": args.strict}
    if args.transcript:
        params["transcript"] = args.transcript
    cfg = config_from_args(args, task_id=args.task, backend="replay", backend_params=params)
    Logger.header(f"Replaying '{cfg.task_id}'")
    record = runner.run_episode(cfg)
    run_dir, _ = runner.save_episode(record, cfg.output_dir)
    log_episode(record, run_dir)

    if args.compare:
        with open(args.compare, encoding="utf-8") as f:
            expected = f.read()
        actual = "".join(f"{line}\n" for line in record.trajectory_lines())
        if actual != expected:
            Logger.error(f"Trajectory differs from {args.compare}")
            return EXIT_FAILED
        Logger.success(f"Trajectory matches {args.compare}")
    return EXIT_OK if record.success else EXIT_FAILED


def cmd_report(args):
    rows = runner.collect_metrics(args.output_dir)
    if not rows:
        Logger.error(f"No metrics.json files found below {args.output_dir}")
        return EXIT_CONFIG
    report = runner.aggregate(rows)
    Logger.header(f"Report for {len(rows)} episode(s) in {args.output_dir}")
    Logger.table(runner.format_table(report))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(report, f, sort_keys=True, indent=2)
        Logger.success(f"Saved to {args.json}")
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "suite": cmd_suite,
    "replay": cmd_replay,
    "report": cmd_report,
}


def main(argv=None):
    load_dotenv()
    args = build_parser().parse_args(argv)
    Logger.configure(quiet=args.quiet)
    Logger.banner("Duet Agent Runner")
    try:
        return COMMANDS[args.command](args)
    except (DuetError, OSError) as e:
        Logger.error(str(e))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
