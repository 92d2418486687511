import json
import subprocess
import sys
from importlib.resources import files
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from cocohopf import corpus
from cocohopf import tasks as lib
from cocohopf.cli import TASKS, TaskSpec, main, parse_workspace, render, run_task, serialize_workspace
from cocohopf.cli.language import LieDecl, UnknownObject, WorkspaceError, parse_declarations

FIXTURES = Path(__file__).parent / "fixtures"
TUTORIAL = files("cocohopf").joinpath("data/tutorial.hopf")

TUTORIAL_TASKS = [
    ("check-hopf", "KS3", None, None),
    ("check-action", None, None, "inv"),
    ("smash", None, None, "ad"),
    ("split-sequence", "swap", None, None),
    ("derivations", "Uh3", None, None),
    ("automorphisms", "KS3", None, None),
    ("classifier", "KC3", None, None),
    ("universal", "sign", None, None),
    ("kernel", "Uh3", "Uz", None),
    ("quotient", "KS3", "KA3", None),
    ("centralizer", "KS3", "KA3", None),
    ("center", "KS3", None, None),
    ("hz-compare", "Uh3", None, None),
    ("functor-q", "sign", None, None),
]


@pytest.fixture(scope="module")
def ws():
    return parse_workspace(TUTORIAL.read_text())


def test_round_trip(ws):
    text = serialize_workspace(ws)
    again = parse_workspace(text)
    assert again.declarations == ws.declarations
    assert serialize_workspace(again) == text


def test_single_group():
    w = parse_workspace("group C2 = perm(2)[(1 2)]")
    assert w.get("C2", "group").order == 2


names = st.sampled_from(["a", "b", "c"])
coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda q: q != 0)


@given(st.lists(st.tuples(names, coeffs), max_size=3, unique_by=lambda t: t[0]))
@settings(max_examples=40, deadline=None)
def test_expression_round_trip(terms):
    d = LieDecl("L", ("a", "b", "c"), (("a", "b", tuple(terms)),))
    text = serialize_workspace([d])
    assert parse_declarations(text) == [d]


def test_syntax_error_location():
    with pytest.raises(WorkspaceError) as e:
        parse_workspace("group C2 = perm(2)[(1 2)]\nlie L { basis x; bracket [x x] = x; }")
    assert (e.value.line, e.value.column, e.value.kind) == (2, 29, "syntax")


def test_semantic_error_location():
    text = "lie L {\n  basis x y;\n  bracket [x,y] = w;\n}"
    with pytest.raises(WorkspaceError) as e:
        parse_workspace(text)
    assert e.value.line == 3 and e.value.kind == "semantic"
    with pytest.raises(WorkspaceError):
        parse_workspace("group C2 = perm(2)[(1 2)]\ngroup C2 = perm(2)[(1 2)]")
    with pytest.raises(WorkspaceError):
        parse_workspace("lie L { basis x; }\nrep r : C2 -> L { (1 2) => [[-1]]; }")


def test_invalid_action_is_input_error():
    text = "group C2 = perm(2)[(1 2)]\ngroup C5 = perm(5)[(1 2 3 4 5)]\nhopf KC2 = K[C2]\nhopf KC5 = K[C5]\n"
    text += "action bad : KC2 -> KC5 { (1 2) => auto([], [(1 2 3 4 5) -> (1 3 5 2 4)]); }"
    with pytest.raises(WorkspaceError) as e:
        parse_workspace(text)
    assert e.value.line == 5


@pytest.mark.parametrize("task,algebra,sub,action", TUTORIAL_TASKS)
def test_tasks_pass(ws, task, algebra, sub, action):
    rep = run_task(ws, TaskSpec(task, algebra, sub, action))
    assert rep.passed, rep.payload


def test_all_task_kinds_covered():
    assert sorted(t[0] for t in TUTORIAL_TASKS) == sorted(TASKS)


def test_unknown_object(ws):
    with pytest.raises(UnknownObject):
        run_task(ws, TaskSpec("center", "NOPE"))


def test_json_matches_library(ws, capsys):
    code = main([str(TUTORIAL), "--json", "--task", "center", "--algebra", "KS3", "--task", "check-hopf", "--algebra", "Uh3"])
    out = capsys.readouterr().out.rstrip("\n")
    assert code == 0
    direct = [lib.center_report(ws.hopf("KS3"), 3), lib.check_hopf_report(ws.hopf("Uh3"), 3)]
    assert out == render(direct, True)
    assert json.loads(out)[0]["payload"]["center"]["group"] == ["()"]


def test_classifier_kc3(ws):
    rep = run_task(ws, TaskSpec("classifier", "KC3"))
    assert rep.payload["derivation_dim"] == 0 and rep.payload["automorphism_group_order"] == 2


@pytest.mark.parametrize("fixture", ["pass", "fail", "input_error"])
def test_fixture_exit_codes(fixture):
    path = FIXTURES / f"{fixture}.hopf"
    header = dict(
        line[2:].split(": ", 1) for line in path.read_text().splitlines() if line.startswith(("# args", "# exit"))
    )
    cmd = [sys.executable, "-m", "cocohopf", str(path)] + header["args"].split()
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == int(header["exit"]), proc.stderr


def test_cli_unknown_object_exit_code(capsys):
    assert main([str(TUTORIAL), "--task", "center", "--algebra", "NOPE"]) == 2
    assert "unknown object" in capsys.readouterr().err
    assert main([str(TUTORIAL), "--task", "nonsense"]) == 2
    assert main([str(FIXTURES / "missing.hopf"), "--task", "center", "--algebra", "X"]) == 2


def test_text_output(capsys):
    assert main([str(TUTORIAL), "--task", "center", "--algebra", "KS3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("[PASS] center") and "time:" not in out
