"""Command-line entry point.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .chern import FormalBundle, dual, twist_line, whitney
from .chow import (ChowError, ChowModel, DegreeOverflow, Kind, make_model, plane_model, projective_space_model,
                   stock_models, top_intersect)
from .diophantine import BoxTooLarge, SearchBox, search_box
from .expr import Env, EvalError, ParseError, eval_class, eval_poly, parse_expression, render
from .param_ring import PolyError
from .scenarios import BUILTINS, ScenarioError, run_builtin, run_file
from .ulrich import UlrichContext, residual_c1, residual_c2, residual_c3

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _presets() -> dict[str, ChowModel]:
    models = stock_models()
    models["pf2"] = plane_model()
    models["p3"] = projective_space_model(3)
    return models


def _split_fields(text: str) -> list[str]:
    """Split ``k=v`` fields on ';' (or ',' when no ';' is present).

    A comma-separated piece without '=' continues the previous value, so
    ``symbols=KB,C1F`` survives the split.
    """
    sep = ";" if ";" in text else ","
    fields: list[str] = []
    for piece in (p.strip() for p in text.split(sep)):
        if not piece:
            continue
        if "=" not in piece and fields:
            fields[-1] += "," + piece
        else:
            fields.append(piece)
    return fields


def parse_model_spec(spec: str) -> ChowModel:
    """A preset name, ``kind:key=value;...`` or a file with model/pairing/relation lines.

    Pairing entries in the inline form are written ``A.B=value``.
    """
    presets = _presets()
    if spec in presets:
        return presets[spec]
    path = Path(spec)
    if path.is_file():
        return _model_from_file(path)
    kind, sep, rest = spec.partition(":")
    try:
        Kind(kind)
    except ValueError:
        raise UsageError(f"unknown model {spec!r}; presets are {', '.join(sorted(presets))}, "
                         f"kinds are {', '.join(k.value for k in Kind)}") from None
    cfg: dict = {}
    pairing: dict = {}
    for field in _split_fields(rest):
        key, eq, value = field.partition("=")
        if not eq:
            raise UsageError(f"model field {field!r} is not key=value")
        key = key.strip()
        if "." in key:
            pairing[tuple(key.split(".", 1))] = eval_poly(value)
        elif key == "symbols":
            cfg[key] = tuple(s.strip() for s in value.split(",") if s.strip())
        else:
            cfg[key] = eval_poly(value)
    if pairing:
        cfg["pairing"] = pairing
    return make_model(kind, cfg)


def _model_from_file(path: Path) -> ChowModel:
    from .scenarios import _Runner  # model assembly is shared with scenario files

    keep = ("model", "pairing", "relation", "param")
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines()
             if ln.strip().split(" ", 1)[0] in keep]
    runner = _Runner(path.stem)
    runner.run("\n".join(lines))
    return runner.model()


def parse_bundle_spec(spec: str, model: ChowModel, env: Env) -> FormalBundle:
    """``rank=<expr>;c1=<class>;c2=<class>;...`` on ``model``."""
    fields = dict(f.partition("=")[::2] for f in (p.strip() for p in spec.split(";")) if f)
    if "rank" not in fields:
        raise UsageError(f"bundle spec {spec!r} needs rank=")
    unknown = set(fields) - {"rank", "c1", "c2", "c3", "c4"}
    if unknown:
        raise UsageError(f"unknown bundle fields {sorted(unknown)}")
    classes = [eval_class(fields.get(f"c{i}", "0"), env) for i in range(1, 5)]
    return FormalBundle.make(model, eval_poly(fields["rank"], env), classes)


def _parse_box(text: str) -> list[tuple[int, int]]:
    ranges = []
    for part in text.split(","):
        lo, sep, hi = part.partition("..")
        try:
            ranges.append((int(lo), int(hi)))
        except ValueError:
            raise UsageError(f"bad range {part!r}; use lo..hi") from None
    return ranges


# subcommands


def cmd_scenario(args) -> int:
    target = args.target
    if target in BUILTINS:
        report = run_builtin(target)
    elif Path(target).is_file():
        report = run_file(target)
    else:
        raise UsageError(f"no builtin scenario or file named {target!r}; builtins: {', '.join(BUILTINS)}")
    print(report.render_lines() if args.json_lines else report.render_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_list(args) -> int:
    for name in BUILTINS:
        print(name)
    return EXIT_OK


def cmd_parse(args) -> int:
    print(render(parse_expression(args.expr)))
    return EXIT_OK


def cmd_intersect(args) -> int:
    model = parse_model_spec(args.model)
    value = top_intersect([eval_class(args.expr, Env(model))], model)
    print(value.to_string(descending=True))
    return EXIT_OK


def cmd_search(args) -> int:
    names = tuple(v.strip() for v in args.vars.split(","))
    box = SearchBox(names, tuple(_parse_box(args.box)))
    sols = search_box(eval_poly(args.poly), box)
    if not sols:
        print("EMPTY")
    for s in sols:
        print("(" + ",".join(str(s[v]) for v in names) + ")")
    return EXIT_OK


def cmd_chern(args) -> int:
    model = parse_model_spec(args.model)
    env = Env(model)
    bundles = [parse_bundle_spec(s, model, env) for s in args.inputs]
    need = {"whitney": 2, "dual": 1, "twist": 1}[args.op]
    if len(bundles) != need:
        raise UsageError(f"{args.op} takes {need} --in bundle(s), got {len(bundles)}")
    if args.op == "whitney":
        out = whitney(*bundles)
    elif args.op == "dual":
        out = dual(bundles[0])
    else:
        if args.line is None:
            raise UsageError("twist needs --line <class-expr>")
        out = twist_line(bundles[0], eval_class(args.line, env))
    print(out)
    return EXIT_OK


def cmd_identity(args) -> int:
    model = parse_model_spec(args.model)
    env = Env(model)
    bundle = parse_bundle_spec(args.bundle, model, env)
    opt = lambda text: eval_class(text, env) if text is not None else None  # noqa: E731
    ctx = UlrichContext(bundle, canonical=opt(args.K), c2x=opt(args.c2X), polarization=opt(args.H))
    fn = {"c1": residual_c1, "c2": residual_c2, "c3": residual_c3}[args.which]
    print(fn(ctx))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chowcalc", description="Exact intersection and Chern class calculator.")
    sub = p.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scenario", help="run derivation scripts")
    scs = sc.add_subparsers(dest="action", required=True)
    run = scs.add_parser("run", help="run a builtin scenario or a scenario file")
    run.add_argument("target", help=f"one of {', '.join(BUILTINS)} or a path")
    run.add_argument("--json-lines", action="store_true", help="emit STEP/FINAL records only")
    run.set_defaults(func=cmd_scenario)
    lst = scs.add_parser("list", help="list builtin scenarios")
    lst.set_defaults(func=cmd_list)

    pe = sub.add_parser("parse", help="parse and re-render an expression")
    pe.add_argument("--expr", required=True)
    pe.set_defaults(func=cmd_parse)

    it = sub.add_parser("intersect", help="top intersection of a class")
    it.add_argument("--model", required=True, help="preset, kind:key=value;... or a file")
    it.add_argument("--expr", required=True)
    it.set_defaults(func=cmd_intersect)

    se = sub.add_parser("search", help="integer zeros of a polynomial in a box")
    se.add_argument("--poly", required=True)
    se.add_argument("--vars", required=True, help="comma-separated variable order")
    se.add_argument("--box", required=True, help="lo..hi per variable, comma-separated")
    se.set_defaults(func=cmd_search)

    ch = sub.add_parser("chern", help="Chern data of whitney sums, duals and twists")
    ch.add_argument("--op", required=True, choices=["whitney", "dual", "twist"])
    ch.add_argument("--model", required=True)
    ch.add_argument("--in", dest="inputs", action="append", default=[], required=True,
                    help="rank=<expr>;c1=<class>;... (repeat for whitney)")
    ch.add_argument("--line", help="twisting divisor class")
    ch.set_defaults(func=cmd_chern)

    idn = sub.add_parser("identity", help="residual of an Ulrich identity")
    idn.add_argument("--which", required=True, choices=["c1", "c2", "c3"])
    idn.add_argument("--model", required=True)
    idn.add_argument("--bundle", "--ctx", dest="bundle", required=True, help="rank=<expr>;c1=<class>;...")
    idn.add_argument("--K", help="canonical class override")
    idn.add_argument("--c2X", help="c2 of the tangent bundle override")
    idn.add_argument("--H", help="polarization override (default xi)")
    idn.set_defaults(func=cmd_identity)
    return p


# a well-formed request whose mathematics does not go through
_MATH_FAILURES = (PolyError, DegreeOverflow, AssertionError)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.text and exc.line is None:
            print(f"  {exc.text}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return EXIT_USAGE
    except _MATH_FAILURES as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ScenarioError, EvalError, ChowError, BoxTooLarge, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
