import re
import shlex
from pathlib import Path

import pytest

from chowcalc.chern import FormalBundle
from chowcalc.chow import mul_class
from chowcalc.expr import Env, eval_class
from chowcalc.expr import eval_poly as P
from chowcalc.scenarios import (BUILTINS, AssertionFailure, ScenarioError, builtin_text, run_builtin, run_file,
                                run_text)
from chowcalc.ulrich import UlrichContext, residual_c2

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_passes(name):
    report = run_builtin(name)
    assert report.passed, report.final_line()
    assert report.final_line().startswith("FINAL ")
    assert all(e.passed for e in report.steps)


@pytest.mark.parametrize("name", BUILTINS)
def test_runs_are_deterministic(name):
    first, second = run_builtin(name), run_builtin(name)
    assert first.render_lines() == second.render_lines()


def test_file_matches_builtin(tmp_path):
    path = tmp_path / "pf_curve.scn"
    path.write_text(builtin_text("pf_curve"), encoding="utf-8")
    assert run_file(path).render_lines() == run_builtin("pf_curve").render_lines()


def test_off_by_one_golden_names_the_step():
    text = builtin_text("pf_curve").replace('step assert_equals xi_minus_f "d - 1"',
                                            'step assert_equals xi_minus_f "d - 2"')
    report = run_text(text)
    assert not report.passed
    with pytest.raises(AssertionFailure) as err:
        report.raise_for_failure()
    assert err.value.kind == "assert_equals" and err.value.step == 4
    assert report.final_line().startswith("FAILED step 4")


def test_failure_stops_the_run():
    text = 'poly p = "x + 1"\nstep assert_zero p\nstep show p\n'
    report = run_text(text)
    assert not report.passed and len(report.steps) == 1


def test_bad_reference_is_a_script_error():
    with pytest.raises(ScenarioError) as err:
        run_text('poly p = "x"\nstep assert_zero q\n')
    assert err.value.line == 2


def test_reserved_names_cannot_be_overwritten():
    with pytest.raises(ScenarioError):
        run_text('poly p = "x - 3"\nstep solve p for x as r\n')


def test_root_count_file():
    report = run_file(DATA / "pfgen_chi.scn")
    assert report.passed
    assert report.step(2).payload["contradiction"] == "true"
    assert report.step(3).payload["contradiction"] == "false"


def test_qf_second_chern_class_two_ways(qf):
    report = run_builtin("qf")
    assert report.passed
    env = Env(qf)
    product = mul_class(eval_class("H + m1*F", env), eval_class("m2*F", env))
    direct = eval_class("m2*H*F", env)
    assert product == direct
    residuals = [residual_c2(UlrichContext(FormalBundle.make(qf, P("r"), [eval_class("H + m1*F", env), c2])))
                 for c2 in (product, direct)]
    assert residuals[0] == residuals[1]


STEP_LINE = re.compile(r"^STEP (\d+) (\w+) (PASS|FAIL)( .*)?$")


@pytest.mark.parametrize("name", BUILTINS)
def test_line_format(name):
    lines = run_builtin(name).render_lines().splitlines()
    assert lines[0] == f"SCENARIO {name}"
    assert lines[-1].startswith("FINAL ")
    index = 0
    for line in lines[1:-1]:
        if line.startswith(("NOTE ", "CONSTRAINT ")):
            continue
        match = STEP_LINE.match(line)
        assert match, line
        index += 1
        assert int(match.group(1)) == index
        for field in shlex.split(match.group(4) or ""):
            key, eq, _ = field.partition("=")
            assert eq and key.isidentifier(), field


def test_headline_values():
    assert run_builtin("qf").final_line() == "FINAL d + e(r-2) = 0"
    sup = run_builtin("sup")
    assert sup.final_line() == "FINAL d*(14-2n-15r+3nr) = 0 ⇒ no integer n>=7"
    esbs = run_builtin("esbs")
    assert "888" in esbs.final_line()
