"""Task dispatch: resolve workspace names, then call the library report functions."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .. import tasks as lib
from ..action import smash_product
from ..errors import CertificationError, ValidationError
from ..hopf import cgkmm_split_sequence
from ..report import ERROR, FAIL, Report
from .language import UnknownObject, Workspace

TASKS = (
    "check-hopf", "check-action", "smash", "split-sequence", "derivations", "automorphisms",
    "classifier", "universal", "kernel", "quotient", "centralizer", "center", "hz-compare",
    "functor-q",
)


@dataclass(frozen=True)
class TaskSpec:
    name: str
    algebra: str | None = None
    sub: str | None = None
    action: str | None = None


def _need(spec: TaskSpec, field: str) -> str:
    value = getattr(spec, field)
    if value is None:
        raise UnknownObject(f"task {spec.name} needs --{field}")
    return value


def _extension(ws: Workspace, spec: TaskSpec):
    if spec.action is not None:
        return smash_product(ws.action(spec.action))[1]
    return cgkmm_split_sequence(ws.hopf(_need(spec, "algebra")))


def _algebra(ws, spec):
    return ws.hopf(_need(spec, "algebra"))


def _sub(ws, spec):
    return ws.sub(_need(spec, "sub"))


HANDLERS = {
    "check-hopf": lambda ws, spec, d: lib.check_hopf_report(_algebra(ws, spec), d),
    "check-action": lambda ws, spec, d: lib.check_action_report(ws.action(_need(spec, "action")), d),
    "smash": lambda ws, spec, d: lib.smash_report(ws.action(_need(spec, "action")), d),
    "split-sequence": lambda ws, spec, d: lib.split_sequence_report(_extension(ws, spec), d),
    "derivations": lambda ws, spec, d: lib.derivations_report(_algebra(ws, spec), d),
    "automorphisms": lambda ws, spec, d: lib.automorphisms_report(_algebra(ws, spec), d),
    "classifier": lambda ws, spec, d: lib.classifier_report(_algebra(ws, spec), d),
    "universal": lambda ws, spec, d: lib.universal_report(_extension(ws, spec), d),
    "kernel": lambda ws, spec, d: lib.kernel_report(
        _algebra(ws, spec), ws.sub(spec.sub) if spec.sub is not None else None, d
    ),
    "quotient": lambda ws, spec, d: lib.quotient_report(_algebra(ws, spec), _sub(ws, spec), d),
    "centralizer": lambda ws, spec, d: lib.centralizer_report(_algebra(ws, spec), _sub(ws, spec), d),
    "center": lambda ws, spec, d: lib.center_report(_algebra(ws, spec), d),
    "hz-compare": lambda ws, spec, d: lib.hz_compare_report(_algebra(ws, spec), d),
    "functor-q": lambda ws, spec, d: lib.functor_q_report(_algebra(ws, spec), d),
}


def run_task(ws: Workspace, spec: TaskSpec, degree: int | None = None) -> Report:
    """Run one task.  Unknown names raise :class:`UnknownObject`; failed
    mathematics (invalid input data, a failing certification) gives a
    ``fail`` or ``error`` report."""
    if spec.name not in HANDLERS:
        raise UnknownObject(f"unknown task {spec.name!r}")
    d = ws.degree if degree is None else degree
    start = time.perf_counter()
    try:
        rep = HANDLERS[spec.name](ws, spec, d)
    except ValidationError as e:
        rep = Report(spec.name, FAIL, {"error": str(e), "witness": e.witness})
    except CertificationError as e:
        rep = Report(spec.name, ERROR, {"error": str(e), "witness": e.witness})
    rep.task = spec.name
    rep.timing = time.perf_counter() - start
    return rep
