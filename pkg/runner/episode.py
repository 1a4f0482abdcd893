"""Main agent loop: plan a subgoal, execute it, update the belief, repeat."""

from __future__ import annotations

import time
from dataclasses import replace

import actor
import envs
import llm
import symbolic
from belief import belief_update
from model import BeliefState, DuetError, ConfigError, EpisodeStatus, SubEpisode, TextualMemory
from planner import TaskContext, feedback_message, plan_next

from .config import RunConfig
from .record import EpisodeRecord, belief_to_dict, subgoal_to_dict

ENDED_SUCCESS = "success"
ENDED_PLANNER = "planner_complete"
ENDED_BUDGET = "step_budget"
ENDED_ITERATIONS = "iteration_cap"
ENDED_ERROR = "error"


def make_backend(cfg: RunConfig, spec=None):
    """
    Backend for one episode. A replay run without an explicit transcript uses
    the transcript listed for the task in the manifest.
    """
    if cfg.backend == "http":
        return llm.get("http", {**cfg.http, **cfg.backend_params})
    params = dict(cfg.backend_params)
    if cfg.backend == "replay" and not params.get("transcript"):
        if spec is None or not spec.replay:
            raise ConfigError(f"Task '{cfg.task_id}' has no replay transcript; pass one explicitly")
        params["transcript"] = spec.replay
    return llm.get(cfg.backend, params)


def _error_text(error):
    return f"{type(error).__name__}: {error}"


def _planner_event(step):
    return {
        "event": "planner_step",
        "k": step.k,
        "reasoning": step.reasoning,
        "plan": list(step.plan.subgoals) if step.plan else None,
        "subgoal": subgoal_to_dict(step.subgoal),
        "complete": step.complete,
        "reprompts": step.reprompts,
    }


def _update_event(k, episode, outcome):
    textual = outcome.belief.textual
    return {
        "event": "belief_update",
        "k": k,
        "subgoal": episode.subgoal.description,
        "status": episode.status.label,
        "env_steps": episode.env_steps_consumed,
        "verification": [
            {"question": q, "answer": a, "justification": j} for q, a, j in outcome.report.entries
        ],
        "status_line": textual.status_line,
        "justification": textual.justification,
        "learned_facts": textual.fact_texts(),
        "parse_errors": outcome.parse_errors,
    }


def run_episode(cfg: RunConfig, env=None, backend=None, spec=None) -> EpisodeRecord:
    """
    Run one task to success, planner completion, budget exhaustion or error.

    Gateway and parse failures end the episode with the error recorded in
    the returned EpisodeRecord.

    Raises:
        ConfigError / UnknownTask when the task or configuration is invalid.
    """
    cfg.validate()
    if env is None:
        spec = spec or envs.find_task(envs.load_manifest(cfg.manifest), cfg.task_id)
        env = envs.build(spec, cfg.seed)
    if backend is None:
        backend = make_backend(cfg, spec)

    started = time.monotonic()
    budget = cfg.total_budget(env.domain_name)
    ruleset = symbolic.get(env.domain_name)
    library = actor.get_library(env.domain_name)
    gateway = llm.Gateway(backend, cfg.temperature, cfg.max_tokens)
    task = TaskContext.from_env(env)

    memory = symbolic.init_memory(ruleset, env.initial_observation)
    belief = BeliefState(memory, TextualMemory(), 0)
    record = EpisodeRecord(env.task_id, env.domain_name, cfg.snapshot(), beliefs=[belief])
    record.checkpoints = len(env.checkpoints)
    history = []
    pending = []

    def on_step(action, observation, _memory):
        pending.append((action, observation))
        record.total_env_steps += 1
        record.events.append({
            "event": "actor_step",
            "k": len(history) + 1,
            "step": len(pending),
            "action": action,
            "observation": observation,
            "total_env_steps": record.total_env_steps,
        })

    step = None
    try:
        backend.bind(env)
        while True:
            if env.is_success():
                record.ended_by = ENDED_SUCCESS
                break
            if record.total_env_steps >= budget:
                record.ended_by = ENDED_BUDGET
                break
            if len(history) >= budget:
                record.ended_by = ENDED_ITERATIONS
                break

            step = plan_next(history, belief, task, gateway, cfg.history_window, cfg.planner_retries)
            record.planner_steps.append(step)
            record.events.append(_planner_event(step))
            if step.complete:
                record.ended_by = ENDED_PLANNER
                break

            pending.clear()
            sub_budget = min(cfg.max_sub_steps, budget - record.total_env_steps)
            episode, memory = actor.execute_subgoal(
                step.subgoal, env, belief.symbolic, sub_budget, gateway, library,
                state_binding=cfg.state_binding, skill_limit=cfg.skill_limit,
                ruleset=ruleset, on_step=on_step,
            )
            pending.clear()
            record.sub_episodes.append(episode)

            plan = step.plan or belief.textual.plan
            outcome = belief_update(belief, memory, episode, step.subgoal, plan, gateway,
                                    cfg.fact_cap, cfg.concurrent_verification)
            belief = outcome.belief
            record.parse_errors += outcome.parse_errors
            record.beliefs.append(belief)
            record.events.append(_update_event(step.k, episode, outcome))
            history.append(replace(step, feedback=feedback_message(step.subgoal, episode.status.label, belief)))
    except DuetError as e:
        record.error = _error_text(e)
        record.ended_by = ENDED_ERROR
        if pending and step is not None and step.subgoal is not None:
            record.sub_episodes.append(SubEpisode(
                step.subgoal, tuple(pending), EpisodeStatus.interrupted(type(e).__name__), len(pending),
            ))

    record.success = env.is_success()
    record.progress_rate = env.progress_rate()
    record.checkpoints_reached = env.checkpoints_reached()
    record.ledger = gateway.ledger
    record.duration = time.monotonic() - started
    record.events.append({
        "event": "episode_end",
        "task_id": record.task_id,
        "belief": belief_to_dict(belief),
        "tokens": record.ledger.to_dict(),
        **record.outcome(),
    })
    return record
