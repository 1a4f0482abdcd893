"""Token shares, per-episode metrics and suite aggregation."""

from __future__ import annotations

from model import COMPONENTS, TokenLedger

from .record import HARD_CHECKPOINTS


def report_tokens(source) -> dict:
    """
    Per-component token totals and percentage shares.

    Args:
        source: TokenLedger, EpisodeRecord, or a {component: total} mapping

    Returns:
        {"components": {name: {"tokens": n, "share": pct}}, "total": n, "zero_total": bool}
    """
    if isinstance(source, TokenLedger):
        totals = {name: source.total(name) for name in COMPONENTS}
    elif isinstance(source, dict):
        totals = {name: int(source.get(name, 0)) for name in COMPONENTS}
    else:
        totals = {name: source.ledger.total(name) for name in COMPONENTS}

    total = sum(totals.values())
    components = {
        name: {"tokens": count, "share": round(100.0 * count / total, 2) if total else 0.0}
        for name, count in totals.items()
    }
    return {"components": components, "total": total, "zero_total": total == 0}


def episode_metrics(record) -> dict:
    """Contents of metrics.json for one episode."""
    return {
        "task_id": record.task_id,
        "domain": record.domain,
        "success": record.success,
        "progress_rate": record.progress_rate,
        "total_env_steps": record.total_env_steps,
        "planner_steps": len(record.planner_steps),
        "sub_episodes": len(record.sub_episodes),
        "checkpoints": record.checkpoints,
        "hard": record.hard,
        "ended_by": record.ended_by,
        "error": record.error,
        "parse_errors": record.parse_errors,
        "tokens": report_tokens(record),
        "duration_seconds": round(record.duration, 3),
    }


def _mean(values):
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def _group(rows):
    return {
        "tasks": len(rows),
        "successes": sum(1 for row in rows if row.get("success")),
        "success_rate": _mean(1.0 if row.get("success") else 0.0 for row in rows),
        "mean_progress_rate": _mean(float(row.get("progress_rate", 0.0)) for row in rows),
    }


def _is_hard(row):
    if "hard" in row:
        return bool(row["hard"])
    return row.get("checkpoints", 0) > HARD_CHECKPOINTS


def aggregate(rows) -> dict:
    """
    Suite report from per-episode metrics rows (episode_metrics() output or
    metrics.json contents).

    Rows carrying an "error" count as failures but still contribute their
    progress rate.
    """
    rows = list(rows)
    domains = sorted({row.get("domain", "unknown") for row in rows})
    token_totals = {name: 0 for name in COMPONENTS}
    for row in rows:
        for name, entry in ((row.get("tokens") or {}).get("components") or {}).items():
            if name in token_totals:
                token_totals[name] += entry.get("tokens", 0)

    return {
        "overall": _group(rows),
        "domains": {domain: _group([r for r in rows if r.get("domain", "unknown") == domain]) for domain in domains},
        "difficulty": {
            "easy": _group([r for r in rows if not _is_hard(r)]),
            "hard": _group([r for r in rows if _is_hard(r)]),
        },
        "errors": sorted(
            ({"task_id": row.get("task_id"), "error": row["error"]} for row in rows if row.get("error")),
            key=lambda item: str(item["task_id"]),
        ),
        "tokens": report_tokens(token_totals),
    }


def format_table(report: dict) -> list:
    """Human-readable suite table, one line per row."""
    lines = [f"{'Group':<16} {'Tasks':>6} {'SR%':>8} {'PR%':>8}"]
    lines.append("-" * len(lines[0]))

    def row(label, group):
        return (f"{label:<16} {group['tasks']:>6} {100 * group['success_rate']:>8.1f} "
                f"{100 * group['mean_progress_rate']:>8.1f}")

    for domain, group in report["domains"].items():
        lines.append(row(domain, group))
    for label in ("easy", "hard"):
        group = report["difficulty"][label]
        if group["tasks"]:
            lines.append(row(f"({label})", group))
    lines.append(row("all", report["overall"]))

    tokens = report["tokens"]
    if not tokens["zero_total"]:
        shares = ", ".join(f"{name} {entry['share']:.1f}%" for name, entry in tokens["components"].items())
        lines.append(f"Token shares: {shares} (total {tokens['total']:,})")
    return lines
