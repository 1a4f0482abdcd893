"""Symbolic memory value (m_k) and its planning summary."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

INVENTORY = "inventory"

# Which object-oriented sections a memory renders besides the predicate state.
LAYOUT_STATE = "state"
LAYOUT_OBJECTS = "objects"
LAYOUT_RECEPTACLES = "receptacles"


@dataclass(frozen=True)
class SymbolicMemory:
    domain_name: str
    predicates: frozenset = frozenset()
    holding: dict = field(default_factory=dict)
    agent_location: Optional[str] = None
    step: int = 0
    visited: tuple = ()
    discovered: dict = field(default_factory=dict)
    inventory: tuple = ()
    layout: str = LAYOUT_STATE

    __hash__ = None

    def held_objects(self) -> set:
        return {obj for obj in self.holding.values() if obj}

    def predicate_strings(self) -> list:
        return sorted(str(p) for p in self.predicates)

    def contents(self) -> dict:
        """Map location -> sorted objects believed to be there (inventory excluded)."""
        grouped = {}
        for obj, location in self.discovered.items():
            if location != INVENTORY:
                grouped.setdefault(location, []).append(obj)
        return {loc: sorted(objs) for loc, objs in sorted(grouped.items())}


def planning_summary(memory: SymbolicMemory) -> str:
    lines = [f"### {memory.domain_name.upper()} Memory Summary (Step {memory.step}) ###"]
    if memory.agent_location:
        lines.append(f"Agent Location: {memory.agent_location}")
    if memory.holding and memory.layout == LAYOUT_STATE:
        held = ", ".join(f"{m}={memory.holding[m] or 'nothing'}" for m in sorted(memory.holding))
        lines.append(f"Holding: {held}")

    if memory.layout in (LAYOUT_OBJECTS, LAYOUT_RECEPTACLES):
        lines.extend(_object_sections(memory))

    lines.append("State:")
    if memory.predicates:
        for pred in memory.predicate_strings():
            lines.append(f"  - {pred}")
    else:
        lines.append("  (None)")
    lines.append("### END SUMMARY ###")
    return "\n".join(lines)


def _object_sections(memory: SymbolicMemory) -> list:
    lines = ["[Agent]"]
    lines.append(f"Location: at {memory.agent_location}" if memory.agent_location else "Location: unknown")
    if memory.layout == LAYOUT_RECEPTACLES:
        held = sorted(memory.held_objects())
        lines.extend(f"holding {obj}" for obj in held)
        if not held:
            lines.append("holding nothing")
    else:
        lines.append("Inventory:")
        carried = sorted(set(memory.inventory) | memory.held_objects())
        lines.extend(f"- Obj: {obj}" for obj in carried)
        if not carried:
            lines.append("  (empty)")

    lines.append("[Visited Locations]")
    lines.extend(f"- Loc: {loc}" for loc in sorted(memory.visited))
    if not memory.visited:
        lines.append("  (None)")

    if memory.layout == LAYOUT_RECEPTACLES:
        lines.append("[Receptacles]")
        contents = memory.contents()
        lines.extend(f"- {loc}: contains=[{', '.join(objs)}]" for loc, objs in contents.items())
        if not contents:
            lines.append("  (None)")
    else:
        lines.append("[Discovered Objects]")
        lines.extend(f"- Obj: {obj} (at: {memory.discovered[obj]})" for obj in sorted(memory.discovered))
        if not memory.discovered:
            lines.append("  (None)")
    return lines
