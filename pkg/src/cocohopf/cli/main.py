"""``cocohopf WORKSPACE [--degree N] [--json] [--timing] --task NAME [ARGS] ...``"""
from __future__ import annotations

import argparse
import json
import sys

from ..errors import CocoHopfError
from ..report import Report
from .language import UnknownObject, WorkspaceError, load_workspace
from .tasks import TASKS, TaskSpec, run_task

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UnknownObject(message)


def _global_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cocohopf", description="Run tasks on a workspace of cocommutative Hopf algebras.")
    p.add_argument("workspace", help="workspace definition file")
    p.add_argument("--degree", type=int, default=3, help="verification degree bound (default 3)")
    p.add_argument("--json", action="store_true", help="emit a JSON array of reports")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    return p


def _task_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cocohopf --task", add_help=False)
    p.add_argument("name")
    p.add_argument("--algebra")
    p.add_argument("--sub")
    p.add_argument("--action")
    return p


def split_argv(argv: list[str]) -> tuple[list[str], list[list[str]]]:
    """Separate global arguments from the ``--task`` groups."""
    head, groups = [], []
    for a in argv:
        if a == "--task":
            groups.append([])
        elif groups:
            groups[-1].append(a)
        else:
            head.append(a)
    # global flags may also trail a task group
    for g in groups:
        for flag in ("--json", "--timing"):
            while flag in g:
                g.remove(flag)
                head.append(flag)
        while "--degree" in g:
            i = g.index("--degree")
            head += g[i:i + 2]
            del g[i:i + 2]
    return head, groups


def parse_args(argv: list[str]):
    head, groups = split_argv(argv)
    if any(h in ("-h", "--help") for h in head) and not groups:
        _global_parser().print_help()
        raise SystemExit(EXIT_PASS)
    opts = _global_parser().parse_args(head)
    if not groups:
        raise UnknownObject("no --task given; tasks: " + ", ".join(TASKS))
    specs = []
    for g in groups:
        t = _task_parser().parse_args(g)
        if t.name not in TASKS:
            raise UnknownObject(f"unknown task {t.name!r}; tasks: " + ", ".join(TASKS))
        specs.append(TaskSpec(t.name, t.algebra, t.sub, t.action))
    if opts.degree < 1:
        raise UnknownObject("--degree must be at least 1")
    return opts, specs


def render(reports: list[Report], as_json: bool, timing: bool = False) -> str:
    if as_json:
        return json.dumps([r.to_dict(timing) for r in reports], sort_keys=True, indent=2, ensure_ascii=False)
    out = []
    for r in reports:
        text = r.to_text()
        if not timing:
            text = "\n".join(line for line in text.splitlines() if not line.startswith("  time:"))
        out.append(text)
    return "\n\n".join(out)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        opts, specs = parse_args(argv)
        ws = load_workspace(opts.workspace, opts.degree)
        reports = [run_task(ws, spec, opts.degree) for spec in specs]
    except (WorkspaceError, UnknownObject) as e:
        print(f"cocohopf: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"cocohopf: cannot read workspace: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CocoHopfError as e:
        print(f"cocohopf: {e}", file=sys.stderr)
        return EXIT_FAIL
    print(render(reports, opts.json, opts.timing))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
