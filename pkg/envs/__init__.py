"""
envs package: text environments the agent acts in.

Public API:
- Environment, Checkpoint, INVALID_ACTION, progress_rate
- BlocksWorld, Gripper, Adventure, Household
- TaskSpec, load_manifest, find_task, build, instance_key
- get(task_id, seed=None, manifest=None) -> fresh environment for a manifest task
"""

from .adventure import Adventure
from .base import CHECK_VALID_ACTIONS, INVALID_ACTION, Checkpoint, Environment, UnknownTask, progress_rate
from .blocksworld import BlocksWorld
from .gripper import Gripper
from .household import Household
from .manifest import DOMAINS, TaskSpec, build, find_task, instance_key, load_manifest

__all__ = [
    "Adventure",
    "BlocksWorld",
    "CHECK_VALID_ACTIONS",
    "Checkpoint",
    "DOMAINS",
    "Environment",
    "Gripper",
    "Household",
    "INVALID_ACTION",
    "TaskSpec",
    "UnknownTask",
    "build",
    "find_task",
    "get",
    "instance_key",
    "load_manifest",
    "progress_rate",
]


def get(task_id: str, seed=None, manifest=None):
    """
    Factory helper: build the environment for a task id from the manifest.

    Raises UnknownTask when the id is not listed.
    """
    return build(find_task(load_manifest(manifest), task_id), seed)
