import subprocess
import sys

import pytest

from chowcalc.cli import main
from chowcalc.scenarios import BUILTINS, builtin_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", BUILTINS)
def test_scenario_run_exit_zero(capsys, name):
    code, out, _ = run(capsys, "scenario", "run", name)
    assert code == 0
    assert out.rstrip().splitlines()[-1].startswith("FINAL ")


def test_sup_final_line(capsys):
    code, out, _ = run(capsys, "scenario", "run", "sup")
    assert code == 0
    assert out.rstrip().splitlines()[-1] == "FINAL d*(14-2n-15r+3nr) = 0 ⇒ no integer n>=7"


def test_json_lines(capsys):
    code, out, _ = run(capsys, "scenario", "run", "esbs", "--json-lines")
    lines = out.rstrip().splitlines()
    assert code == 0 and lines[0] == "SCENARIO esbs"
    assert all(ln.startswith(("STEP ", "NOTE ", "CONSTRAINT ")) for ln in lines[1:-1])


def test_scenario_list(capsys):
    code, out, _ = run(capsys, "scenario", "list")
    assert code == 0 and out.split() == list(BUILTINS)


def test_failing_scenario_file_exits_one(capsys, tmp_path):
    path = tmp_path / "broken.scn"
    path.write_text(builtin_text("esbs").replace('"37*h^2"', '"38*h^2"'), encoding="utf-8")
    code, out, _ = run(capsys, "scenario", "run", str(path))
    assert code == 1 and "FAILED step 2" in out


def test_unknown_scenario_exits_two(capsys):
    code, _, err = run(capsys, "scenario", "run", "no_such_scenario")
    assert code == 2 and "pf_curve" in err


def test_intersect(capsys):
    assert run(capsys, "intersect", "--model", "pf", "--expr", "(xi-f)")[:2] == (0, "d - 1\n")
    assert run(capsys, "intersect", "--model", "qf", "--expr", "F")[:2] == (0, "2\n")
    code, out, _ = run(capsys, "intersect", "--model", "pbundle_curve:dim=4;genus=0;degF=d", "--expr", "(xi-f)^4")
    assert (code, out) == (0, "d - 4\n")


def test_intersect_inline_surface_model(capsys):
    spec = "pbundle_surface:dim=5;symbols=R;R.R=1;c1F=c1*R;KB=-3*R;c2F=c2;c2B=3"
    code, out, _ = run(capsys, "intersect", "--model", spec, "--expr", "xi^5")
    assert (code, out.strip()) == (0, "c1^2 - c2")


def test_intersect_degree_overflow_exits_one(capsys):
    assert run(capsys, "intersect", "--model", "p3", "--expr", "h^5")[0] == 1


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--poly", "n*(3*r-2)-15*r+14", "--vars", "n,r", "--box", "1..100,2..100")
    assert (code, out) == (0, "(4,2)\n")
    code, out, _ = run(capsys, "search", "--poly", "x^2 + 1", "--vars", "x", "--box=-10..10")
    assert (code, out) == (0, "EMPTY\n")
    assert run(capsys, "search", "--poly", "x", "--vars", "x", "--box", "1-5")[0] == 2


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "--expr", "(xi + pi(M1)) * pi(M2)")
    assert code == 0 and out.strip()
    code, _, err = run(capsys, "parse", "--expr", "xi^^2")
    assert code == 2 and "column 4" in err and "   ^" in err


def test_chern(capsys):
    code, out, _ = run(capsys, "chern", "--op", "twist", "--model", "p3", "--in", "rank=2;c2=h^2", "--line", "6*h")
    assert code == 0 and "c1=12*h" in out and "c2=37*h^2" in out
    code, out, _ = run(capsys, "chern", "--op", "whitney", "--model", "p3",
                       "--in", "rank=2;c1=12*h;c2=37*h^2", "--in", "rank=2;c1=12*h;c2=37*h^2")
    assert code == 0 and "c2=218*h^2" in out and "c3=888*h^3" in out and "c4=1369*h^4" in out
    code, out, _ = run(capsys, "chern", "--op", "dual", "--model", "pf", "--in", "rank=r;c1=r*(xi-f)")
    assert code == 0 and "c1=-r*xi + r*f" in out
    assert run(capsys, "chern", "--op", "whitney", "--model", "p3", "--in", "rank=1")[0] == 2
    assert run(capsys, "chern", "--op", "twist", "--model", "p3", "--in", "rank=1")[0] == 2
    assert run(capsys, "chern", "--op", "dual", "--model", "p3", "--in", "c1=h")[0] == 2


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "--which", "c1", "--model", "pbundle_curve:dim=4;genus=0;degF=d",
                       "--bundle", "rank=r;c1=a*(xi-f)")
    assert code == 0 and out.strip() == "-a + r + a*d - d*r"
    code, out, _ = run(capsys, "identity", "--which", "c3", "--model", "pbundle_curve:dim=4;genus=0;degF=4",
                       "--ctx", "rank=2;c1=2*(xi-f);c2=(xi-f)^2")
    assert (code, out.strip()) == (0, "0")


def test_usage_errors(capsys):
    assert run(capsys, "intersect", "--model", "nonsense", "--expr", "xi")[0] == 2
    assert run(capsys, "intersect", "--model", "pf", "--expr", "a/b")[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["intersect", "--model", "pf"])
    assert err.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chowcalc", "intersect", "--model", "pf", "--expr", "(xi-f)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "d - 1\n"
