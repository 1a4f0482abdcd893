"""
Oracle backend: answers every component from the bound simulator's ground
state, using breadth-first search for the plan. Supports blocksworld and
gripper only.
"""

from __future__ import annotations

import json
import re
from collections import deque

from envs import INVALID_ACTION
from envs.blocksworld import TABLE, block_key

from .backend import Backend
from .errors import GatewayError, OracleUnsupported
from .types import ChatRequest, Completion, approximate_completion

SUPPORTED = ("blocksworld", "gripper")

_SUBGOAL = re.compile(r"Your Assigned Subgoal:\s*(.+)")
_QUESTION = re.compile(r"QUESTION:\s*(.+)")
_CONTEXT_SUBGOAL = re.compile(r"^Subgoal:\s*(.+)$", re.MULTILINE)


# -- blocksworld search --

def _bw_state(env):
    return (tuple(sorted(env.support.items())), env.held)


def _bw_successors(state):
    support, held = dict(state[0]), state[1]
    bases = set(support.values())
    blocks = sorted(set(support) | ({held} if held else set()), key=block_key)
    if held:
        yield f"putdown({held})", (tuple(sorted({**support, held: TABLE}.items())), None)
        for block in blocks:
            if block != held and block not in bases:
                yield f"stack({held},{block})", (tuple(sorted({**support, held: block}.items())), None)
        return
    for block in blocks:
        if block in bases:
            continue
        rest = {b: s for b, s in support.items() if b != block}
        name = f"pickup({block})" if support[block] == TABLE else f"unstack({block},{support[block]})"
        yield name, (tuple(sorted(rest.items())), block)


def _bw_goal(env):
    goal = list(env.goal)
    return lambda state: state[1] is None and all(dict(state[0]).get(top) == base for top, base in goal)


# -- gripper search --

def _gr_state(env):
    return (env.robot, tuple(sorted(env.balls.items())), (env.grippers["left"], env.grippers["right"]))


def _gr_successors(rooms):
    def successors(state):
        robot, balls, grippers = state
        positions = dict(balls)
        for room in rooms:
            if room != robot:
                yield f"move({robot},{room})", (room, balls, grippers)
        for idx, gripper in enumerate(("left", "right")):
            carried = grippers[idx]
            if carried:
                dropped = dict(positions, **{carried: robot})
                hands = tuple(None if i == idx else g for i, g in enumerate(grippers))
                yield f"drop({carried},{robot},{gripper})", (robot, tuple(sorted(dropped.items())), hands)
            else:
                for ball in sorted(positions):
                    if positions[ball] == robot:
                        taken = dict(positions, **{ball: None})
                        hands = tuple(ball if i == idx else g for i, g in enumerate(grippers))
                        yield f"pick({ball},{robot},{gripper})", (robot, tuple(sorted(taken.items())), hands)
    return successors


def _gr_goal(env):
    goal = dict(env.goal)
    return lambda state: all(dict(state[1]).get(ball) == room for ball, room in goal.items())


def bfs(start, successors, is_goal):
    """Shortest action sequence from start to a goal state, as [(action, next_state), ...]."""
    if is_goal(start):
        return []
    parents = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for action, nxt in successors(state):
            if nxt in parents:
                continue
            parents[nxt] = (state, action)
            if is_goal(nxt):
                path = []
                while parents[nxt] is not None:
                    prev, act = parents[nxt]
                    path.append((act, nxt))
                    nxt = prev
                return list(reversed(path))
            queue.append(nxt)
    return None


# -- subgoal grouping --

def _args(action):
    return action[action.index("(") + 1:-1].split(",")


def _bw_subgoals(actions):
    """Pair each pickup/unstack with the following putdown/stack."""
    groups = []
    idx = 0
    while idx < len(actions):
        first = actions[idx]
        if first.startswith(("pickup", "unstack")) and idx + 1 < len(actions):
            second = actions[idx + 1]
            block = _args(first)[0]
            source = "the table" if first.startswith("pickup") else _args(first)[1]
            target = "to the table" if second.startswith("putdown") else f"onto {_args(second)[1]}"
            groups.append((f"Move {block} from {source} {target}", [first, second]))
            idx += 2
        else:
            block = _args(first)[0]
            target = "onto the table" if first.startswith("putdown") else f"onto {_args(first)[1]}"
            groups.append((f"Put {block} down {target}", [first]))
            idx += 1
    return groups


def _gr_subgoals(actions):
    groups = []
    for action in actions:
        args = _args(action)
        if action.startswith("move"):
            desc = f"Move from {args[0]} to {args[1]}"
        elif action.startswith("pick"):
            desc = f"Pick up {args[0]} in {args[1]} with the {args[2]} gripper"
        else:
            desc = f"Drop {args[0]} in {args[1]} from the {args[2]} gripper"
        groups.append((desc, [action]))
    return groups


class OracleBackend(Backend):
    """
    Bound to one environment per episode via bind(env). Planner requests get
    a FULL PLAN plus the first subgoal; actor requests replay the subgoal's
    actions one per turn (turn = number of assistant messages so far) and
    then "SUBGOAL COMPLETED". Verification answers compare the simulator
    state with the state the plan expected after the subgoal.
    """

    def __init__(self):
        self.env = None
        self._plans = {}
        self._subgoal_actions = {}
        self._subgoal_targets = {}

    def bind(self, env):
        if env.domain_name not in SUPPORTED:
            raise OracleUnsupported(f"Oracle backend does not support domain '{env.domain_name}'")
        self.env = env
        self._plans = {}
        self._subgoal_actions = {}
        self._subgoal_targets = {}

    def complete(self, request: ChatRequest) -> Completion:
        if self.env is None:
            raise GatewayError("Oracle backend used before bind(env)")
        handler = {
            "planner": self._plan,
            "actor": self._act,
            "verification": self._verify,
            "synthesis": self._synthesize,
        }[request.component]
        return approximate_completion(request, handler(request))

    def _state(self):
        return _bw_state(self.env) if self.env.domain_name == "blocksworld" else _gr_state(self.env)

    def _search(self):
        """Remaining plan from the current state as (actions, states), states[i] holding after i actions."""
        env = self.env
        start = self._state()
        if start in self._plans:
            return self._plans[start]
        if env.domain_name == "blocksworld":
            successors, is_goal = _bw_successors, _bw_goal(env)
        else:
            successors, is_goal = _gr_successors(env.rooms), _gr_goal(env)
        path = bfs(start, successors, is_goal)
        if path is None:
            raise GatewayError(f"Oracle found no plan for task '{env.task_id}'")
        actions = [action for action, _ in path]
        states = [start] + [state for _, state in path]
        for idx, state in enumerate(states):
            self._plans[state] = (actions[idx:], states[idx:])
        return actions, states

    def _plan(self, request):
        actions, states = self._search()
        if not actions:
            return "The goal conditions already hold in the current state.\nTASK COMPLETE"
        groups = _bw_subgoals(actions) if self.env.domain_name == "blocksworld" else _gr_subgoals(actions)
        done = 0
        for desc, group in groups:
            done += len(group)
            self._subgoal_actions[desc] = group
            self._subgoal_targets[desc] = states[done]
        lines = [f"The shortest plan needs {len(actions)} actions in {len(groups)} subgoals.", "", "FULL PLAN", "Subgoals:"]
        lines.extend(f"{idx}. {desc}" for idx, (desc, _) in enumerate(groups, 1))
        lines.extend(["", "EXECUTE_SUBGOAL[", f"  DESC: {groups[0][0]}", "]"])
        return "\n".join(lines)

    def _act(self, request):
        match = _SUBGOAL.search(request.messages[1].content if len(request.messages) > 1 else "")
        actions = self._subgoal_actions.get(match.group(1).strip()) if match else None
        if actions is None:
            return "REQUEST_REPLAN[The oracle has no actions recorded for this subgoal]"
        turn = request.count("assistant")
        if turn < len(actions):
            return f"Next action for the subgoal.\n```\n{actions[turn]}\n```"
        return "All actions for this subgoal were executed. SUBGOAL COMPLETED"

    def _compare(self, expected, part):
        """(matches, justification) for one part of the ground state against the plan's expectation."""
        blocksworld = self.env.domain_name == "blocksworld"
        current = self._state()
        if part == "state":
            found, wanted = current, expected
        elif part == "location":
            found, wanted = (current[0], expected[0])
        else:
            found, wanted = (current[1], expected[1]) if blocksworld else (current[2], expected[2])
        if found == wanted:
            return True, f"The {part} matches the plan: {_show(found)}."
        return False, f"Expected {_show(wanted)} but found {_show(found)}."

    def _verify(self, request):
        content = request.last_user_content()
        match = _QUESTION.search(content)
        question = match.group(1).lower() if match else ""
        subgoal = _CONTEXT_SUBGOAL.search(content)
        expected = self._subgoal_targets.get(subgoal.group(1).strip()) if subgoal else None

        if "contribute" in question:
            part = "state"
        elif "facts" in question:
            return _reply("None", "Nothing unexpected happened.")
        elif "error" in question:
            if INVALID_ACTION in content:
                return _reply("Yes", "An action was rejected as invalid.")
            return _reply("No", "Every action was accepted.")
        elif "navigate" in question or "location" in question:
            part = "location"
        elif "inventory" in question:
            part = "inventory"
        else:
            return _reply("Uncertain", "The oracle does not recognise this question.")

        if expected is None:
            return _reply("Uncertain", "The oracle planned no subgoal with this description.")
        matches, justification = self._compare(expected, part)
        return _reply("Yes" if matches else "No", justification)

    def _synthesize(self, request):
        reached = self.env.checkpoints_reached()
        return json.dumps({
            "status_line": f"Status: {len(reached)} of {len(self.env.checkpoints)} checkpoints reached.",
            "justification": "Computed from the simulator state after the last subgoal.",
            "learned_facts": [],
        })


def _reply(answer, justification):
    return f"ANSWER (e.g., Yes/No/Uncertain/Value): {answer}\nJUSTIFICATION: {justification}"


def _show(value):
    if isinstance(value, tuple):
        return "(" + ", ".join(_show(item) for item in value) + ")"
    return str(value)
