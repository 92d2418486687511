"""Command-line front end and workspace definition language."""
from .language import Workspace, WorkspaceError, UnknownObject, parse_workspace, load_workspace, serialize_workspace
from .main import main, render
from .tasks import TASKS, TaskSpec, run_task

__all__ = [
    "Workspace", "WorkspaceError", "UnknownObject", "parse_workspace", "load_workspace",
    "serialize_workspace", "main", "render", "TASKS", "TaskSpec", "run_task",
]
