"""Line-oriented derivation scripts and their runner.

A script declares a model, classes, bundles and polynomials, then runs
``step`` lines in order. Each step either computes and stores a value or
checks one. The first failing check stops the run and fails the report.
"""

from __future__ import annotations

import json
import shlex
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from ..chern import FormalBundle, dual, line_sum, numerical_dimension, trivial, twist_line, whitney
from ..chow import (ChowClass, Kind, c2_tangent, canonical_class, make_model, reduce_class,
                    relation_consistency_check, top_intersect)
from ..diophantine import SearchBox, certify_no_integer_roots, quadratic_scan, search_box
from ..expr import Env, ParseError, eval_class, eval_poly, evaluate, parse_expression
from ..param_ring import RESERVED_PARAMS, PolyExpr, eliminate
from ..ulrich import (UlrichContext, chi_root_count, residual_c1, residual_c2, residual_c3,
                      rr_surface_bundle)

BUILTINS = ("pf_curve", "qf", "pf2", "sup", "esbs")


class ScenarioError(ValueError):
    """A script that cannot be executed (bad reference, bad arguments)."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class AssertionFailure(AssertionError):
    def __init__(self, step: int, kind: str, expected: str, actual: str, line: int = 0):
        super().__init__(f"step {step} ({kind}, line {line}): expected {expected}, got {actual}")
        self.step = step
        self.kind = kind
        self.expected = expected
        self.actual = actual
        self.line = line


def _fmt(value: str) -> str:
    if value == "" or any(ch in value for ch in ' "=\t'):
        return json.dumps(value, ensure_ascii=False)
    return value


@dataclass
class Entry:
    kind: str  # "step", "note" or "constraint"
    text: str = ""
    index: int = 0
    step_kind: str = ""
    passed: bool = True
    payload: dict[str, str] = field(default_factory=dict)
    line: int = 0

    def record(self) -> str:
        if self.kind == "note":
            return f"NOTE {self.text}"
        if self.kind == "constraint":
            return f"CONSTRAINT {self.text}"
        fields = " ".join(f"{k}={_fmt(v)}" for k, v in self.payload.items())
        status = "PASS" if self.passed else "FAIL"
        return f"STEP {self.index} {self.step_kind} {status} {fields}".rstrip()


@dataclass
class Report:
    name: str
    entries: list[Entry] = field(default_factory=list)
    headline: str = ""
    elapsed: float = 0.0
    failure: AssertionFailure | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    @property
    def steps(self) -> list[Entry]:
        return [e for e in self.entries if e.kind == "step"]

    def step(self, index: int) -> Entry:
        return self.steps[index - 1]

    def value(self, name: str) -> str:
        """Serialized value stored under ``name`` by a step."""
        for e in self.steps:
            if e.payload.get("name") == name:
                return e.payload["value"]
        raise KeyError(name)

    def final_line(self) -> str:
        if self.failure is None:
            return f"FINAL {self.headline}" if self.headline else "FINAL PASS"
        f = self.failure
        return f"FAILED step {f.step} ({f.kind}): expected {f.expected}, got {f.actual}"

    def render_lines(self) -> str:
        out = [f"SCENARIO {self.name}"]
        out += [e.record() for e in self.entries]
        out.append(self.final_line())
        return "\n".join(out)

    def render_text(self) -> str:
        out = [f"scenario {self.name}"]
        for e in self.entries:
            if e.kind == "step":
                status = "PASS" if e.passed else "FAIL"
                detail = "  ".join(f"{k}: {v}" for k, v in e.payload.items())
                out.append(f"[{e.index:>2}] {e.step_kind:<20} {status}  {detail}")
            else:
                out.append(e.record())
        verdict = "PASS" if self.passed else "FAIL"
        out.append(f"verdict {verdict} in {self.elapsed:.3f} s")
        out.append(self.final_line())
        return "\n".join(out)

    def raise_for_failure(self) -> None:
        if self.failure is not None:
            raise self.failure


@dataclass
class _Line:
    number: int
    keyword: str
    rest: str


def _split(text: str) -> list[_Line]:
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, rest = stripped.partition(" ")
        lines.append(_Line(i, keyword, rest.strip()))
    return lines


def _tokens(line: _Line) -> list[str]:
    try:
        return shlex.split(line.rest, comments=True)
    except ValueError as exc:
        raise ScenarioError(line.number, str(exc)) from None


def _keyvals(tokens: list[str], line: int) -> tuple[list[str], dict[str, str]]:
    pos, kv = [], {}
    for t in tokens:
        if "=" in t and not t.startswith("=") and ":=" not in t:
            k, _, v = t.partition("=")
            kv[k] = v
        else:
            pos.append(t)
    return pos, kv


def _int_range(text: str, line: int) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ScenarioError(line, f"bad range {text!r}; use lo..hi") from None


def _expect_tuples(text: str, line: int) -> list[tuple[int, ...]] | None:
    if text == "empty":
        return []
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        try:
            out.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise ScenarioError(line, f"bad expectation {text!r}") from None
    return out


class _Runner:
    def __init__(self, name: str):
        self.report = Report(name)
        self.env = Env()
        self.model_kind: str | None = None
        self.model_cfg: dict[str, str] = {}
        self.pairing: dict[tuple[str, str], str] = {}
        self.relations: dict[str, str] = {}
        self.params: set[str] = set(RESERVED_PARAMS)
        self.rewrites: list[tuple[str, PolyExpr]] = []
        self.step_index = 0
        self.current: _Line | None = None

    # helpers

    def fail(self, msg: str):
        raise ScenarioError(self.current.number if self.current else 0, msg)

    def model(self):
        if self.env.model is None:
            if self.model_kind is None:
                self.fail("no model declared")
            self._build_model()
        return self.env.model

    def _build_model(self):
        cfg: dict = {}
        for k, v in self.model_cfg.items():
            if k == "symbols":
                cfg[k] = tuple(s for s in v.split(",") if s)
            else:
                cfg[k] = eval_poly(v)
        if self.pairing:
            cfg["pairing"] = {k: eval_poly(v) for k, v in self.pairing.items()}
        if self.relations:
            cfg["relations"] = {k: eval_poly(v) for k, v in self.relations.items()}
        self.env.model = make_model(Kind(self.model_kind), cfg)

    def poly(self, text: str) -> PolyExpr:
        return self.rewrite(eval_poly(text, self.env))

    def cls(self, text: str) -> ChowClass:
        self.model()
        return self.rewrite_class(eval_class(text, self.env))

    def rewrite(self, p: PolyExpr) -> PolyExpr:
        for name, v in self.rewrites:
            p = p.substitute(name, v)
        return p

    def rewrite_class(self, c: ChowClass) -> ChowClass:
        return c.map_coefficients(self.rewrite)

    def store(self, name: str, value: PolyExpr):
        if name in self.params:
            self.fail(f"{name!r} is a parameter name and cannot hold a value")
        if name in self.env.classes or name in self.env.bundles:
            self.fail(f"{name!r} already names a class or bundle")
        self.env.values[name] = value

    def value(self, name: str) -> PolyExpr:
        if name not in self.env.values:
            self.fail(f"no stored value named {name!r}")
        return self.env.values[name]

    def bundle(self, name: str) -> FormalBundle:
        if name not in self.env.bundles:
            self.fail(f"no bundle named {name!r}")
        return self.env.bundles[name]

    def emit(self, kind: str, payload: dict[str, str], passed: bool = True):
        self.report.entries.append(Entry("step", index=self.step_index, step_kind=kind, passed=passed,
                                         payload=payload, line=self.current.number))

    def check(self, kind: str, ok: bool, expected: str, actual: str, payload: dict[str, str]):
        self.emit(kind, payload, ok)
        if not ok:
            raise AssertionFailure(self.step_index, kind, expected, actual, self.current.number)

    # statements

    def run(self, text: str) -> Report:
        start = time.perf_counter()
        try:
            for line in _split(text):
                self.current = line
                handler = getattr(self, f"do_{line.keyword}", None)
                if handler is None:
                    self.fail(f"unknown statement {line.keyword!r}")
                try:
                    handler(line)
                except ParseError as exc:
                    raise ParseError(exc.message, exc.column, exc.expected, line.number, exc.text) from None
        except AssertionFailure as failure:
            self.report.failure = failure
        self.report.elapsed = time.perf_counter() - start
        return self.report

    def do_scenario(self, line: _Line):
        self.report.name = line.rest or self.report.name

    def do_note(self, line: _Line):
        self.report.entries.append(Entry("note", text=line.rest, line=line.number))

    def do_constraint(self, line: _Line):
        self.report.entries.append(Entry("constraint", text=line.rest, line=line.number))

    def do_final(self, line: _Line):
        self.report.headline = line.rest

    def do_param(self, line: _Line):
        self.params.update(_tokens(line))

    def do_model(self, line: _Line):
        if self.model_kind is not None:
            self.fail("only one model per scenario")
        pos, kv = _keyvals(_tokens(line), line.number)
        if len(pos) != 1:
            self.fail("model needs exactly one kind")
        try:
            Kind(pos[0])
        except ValueError:
            self.fail(f"unknown model kind {pos[0]!r}")
        self.model_kind = pos[0]
        self.model_cfg = kv

    def do_pairing(self, line: _Line):
        left, sep, right = line.rest.partition("=")
        syms = left.strip().strip("()").split(",")
        if not sep or len(syms) != 2:
            self.fail("pairing syntax is (A,B) = <polyexpr>")
        a, b = (s.strip() for s in syms)
        self.pairing[(a, b)] = right.strip()

    def do_relation(self, line: _Line):
        name, sep, rhs = line.rest.partition(":=")
        if not sep:
            self.fail("relation syntax is <param> := <polyexpr>")
        self.relations[name.strip()] = rhs.strip()

    def do_poly(self, line: _Line):
        name, sep, rhs = line.rest.partition("=")
        rhs = rhs.strip()
        if len(rhs) >= 2 and rhs[0] == rhs[-1] == '"':
            rhs = rhs[1:-1]
        self.store(name.strip(), self.poly(rhs))

    def do_class(self, line: _Line):
        name, sep, rhs = line.rest.partition("=")
        name, rhs = name.strip(), rhs.strip().strip('"')
        if not sep:
            self.fail("class syntax is <name> = <class-expr>")
        m = self.model()
        if rhs == "canonical":
            value = canonical_class(m)
        elif rhs == "c2_tangent":
            value = c2_tangent(m)
        else:
            value = eval_class(rhs, self.env)
        self.env.classes[name] = self.rewrite_class(value)

    def do_bundle(self, line: _Line):
        toks = _tokens(line)
        if len(toks) < 2:
            self.fail("bundle needs a name and a definition")
        name, rest = toks[0], toks[1:]
        m = self.model()
        if rest[0] == "=":
            op, args = rest[1], rest[2:]
            if op == "whitney" and len(args) == 2:
                b = whitney(self.bundle(args[0]), self.bundle(args[1]))
            elif op == "dual" and len(args) == 1:
                b = dual(self.bundle(args[0]))
            elif op == "twist" and len(args) == 2:
                b = twist_line(self.bundle(args[0]), self.cls(args[1]))
            elif op == "lines" and len(args) == 2:
                b = line_sum(self.cls(args[1]), self.poly(args[0]))
            elif op == "trivial" and len(args) == 1:
                b = trivial(m, self.poly(args[0]))
            else:
                self.fail(f"bad bundle combinator {' '.join(rest[1:])!r}")
        else:
            _, kv = _keyvals(rest, line.number)
            if "rank" not in kv:
                self.fail("bundle needs rank=")
            classes = [self.cls(kv.get(f"c{i}", "0")) for i in range(1, 5)]
            b = FormalBundle.make(m, self.poly(kv["rank"]), classes)
        self.env.bundles[name] = b

    def do_step(self, line: _Line):
        toks = _tokens(line)
        if not toks:
            self.fail("empty step")
        kind, args = toks[0], toks[1:]
        handler: Callable | None = getattr(self, f"step_{kind}", None)
        if handler is None:
            self.fail(f"unknown step kind {kind!r}")
        self.step_index += 1
        handler(kind, args)

    # steps: computations

    def _as(self, args: list[str], default: str | None = None) -> tuple[list[str], str | None]:
        if "as" in args:
            i = args.index("as")
            return args[:i] + args[i + 2:], args[i + 1]
        return args, default

    def _computed(self, kind: str, name: str, value: PolyExpr, extra: dict[str, str] | None = None):
        value = self.rewrite(value)
        self.store(name, value)
        payload = {"name": name, "value": str(value)}
        payload.update(extra or {})
        self.emit(kind, payload)

    def _residual(self, kind: str, args: list[str]):
        args, name = self._as(args)
        pos, kv = _keyvals(args, self.current.number)
        if len(pos) != 1 or name is None:
            self.fail(f"{kind} <bundle> as <name> [K=..] [c2X=..] [H=..]")
        ctx = UlrichContext(
            self.bundle(pos[0]),
            canonical=self.cls(kv["K"]) if "K" in kv else None,
            c2x=self.cls(kv["c2X"]) if "c2X" in kv else None,
            polarization=self.cls(kv["H"]) if "H" in kv else None,
        )
        fn = {"residual_c1": residual_c1, "residual_c2": residual_c2, "residual_c3": residual_c3}[kind]
        self._computed(kind, name, fn(ctx))

    step_residual_c1 = step_residual_c2 = step_residual_c3 = _residual

    def step_intersect(self, kind: str, args: list[str]):
        args, name = self._as(args)
        if len(args) != 1 or name is None:
            self.fail("intersect <class-expr> as <name>")
        self._computed(kind, name, top_intersect([self.cls(args[0])], self.model()),
                       {"expr": args[0]})

    def step_rr_surface(self, kind: str, args: list[str]):
        args, name = self._as(args)
        if len(args) != 1 or name is None:
            self.fail("rr_surface <bundle> as <name>")
        b = self.bundle(args[0])
        self._computed(kind, name, rr_surface_bundle(self.model(), b.rank, b.chern(1), b.chern(2)))

    def step_solve(self, kind: str, args: list[str]):
        args, name = self._as(args)
        if len(args) != 3 or args[1] != "for":
            self.fail("solve <name> for <param> [as <name>]")
        src, param = args[0], args[2]
        self._computed(kind, name or f"sol_{param}", self.value(src).solve_linear(param),
                       {"param": param})

    def step_subst(self, kind: str, args: list[str]):
        args, name = self._as(args)
        if len(args) != 5 or args[1] != ":=" or args[3] != "in":
            self.fail("subst <param> := <polyexpr> in <name> [as <name>]")
        param, expr, target = args[0], args[2], args[4]
        result = self.value(target).substitute(param, self.poly(expr))
        if name is None:
            self.env.values.pop(target)
            name = target
        self._computed(kind, name, result, {"param": param})

    def step_rewrite(self, kind: str, args: list[str]):
        if len(args) != 3 or args[1] != ":=":
            self.fail("rewrite <param> := <polyexpr>")
        value = self.poly(args[2])
        self.rewrites.append((args[0], value))
        self.emit(kind, {"param": args[0], "value": str(value)})

    def step_eliminate(self, kind: str, args: list[str]):
        args, name = self._as(args)
        if len(args) != 5 or args[1] != "using" or args[3] != "in" or name is None:
            self.fail("eliminate <param> using <name> in <name> as <name>")
        param, rel, target = args[0], args[2], args[4]
        self._computed(kind, name, eliminate(self.value(target), param, self.value(rel)),
                       {"param": param})

    def step_divide(self, kind: str, args: list[str]):
        args, name = self._as(args)
        if len(args) != 3 or args[1] != "by":
            self.fail("divide <name> by <polyexpr> [as <name>]")
        target = args[0]
        quotient = self.value(target).div_exact(self.poly(args[2]))
        if name is None:
            self.env.values.pop(target)
            name = target
        self._computed(kind, name, quotient, {"by": args[2]})

    def step_show(self, kind: str, args: list[str]):
        if len(args) != 1:
            self.fail("show <expr>")
        v = evaluate(parse_expression(args[0]), self.env)
        v = self.rewrite(v) if isinstance(v, PolyExpr) else self.rewrite_class(v)
        self.emit(kind, {"expr": args[0], "value": str(v)})

    # steps: checks

    def step_assert_zero(self, kind: str, args: list[str]):
        if len(args) != 1:
            self.fail("assert_zero <name>")
        v = self.value(args[0])
        self.check(kind, v.is_zero(), "0", str(v), {"name": args[0], "value": str(v)})

    def step_assert_equals(self, kind: str, args: list[str]):
        pos, kv = _keyvals(args, self.current.number)
        primitive = "primitive" in pos
        pos = [p for p in pos if p != "primitive"]
        if len(pos) != 2:
            self.fail('assert_equals <name> [primitive] "<polyexpr>" [scale=<q>]')
        actual = self.value(pos[0])
        golden = self.poly(pos[1])
        if "scale" in kv:
            golden = golden * Fraction(kv["scale"])
        if primitive:
            actual, golden = actual.primitive(), golden.primitive()
        payload = {"name": pos[0], "value": str(actual)}
        if primitive:
            payload["form"] = "primitive"
        self.check(kind, actual == golden, str(golden), str(actual), payload)

    def step_assert_class(self, kind: str, args: list[str]):
        if len(args) != 3 or args[1] != "=":
            self.fail('assert_class "<class-expr>" = "<class-expr>"')
        left, right = self.cls(args[0]), self.cls(args[2])
        self.check(kind, left == right, str(right), str(left), {"expr": args[0], "value": str(left)})

    def step_assert_class_zero(self, kind: str, args: list[str]):
        if len(args) != 1:
            self.fail('assert_class_zero "<class-expr>"')
        c = self.cls(args[0])
        reduced = reduce_class(c)
        self.check(kind, reduced.is_zero(), "0", str(reduced),
                   {"expr": args[0], "class": str(c), "in_ring": str(reduced)})

    def _expectation(self, kind: str, found: list[tuple[int, ...]], expect: list[tuple[int, ...]],
                     payload: dict[str, str]):
        shown = "EMPTY" if not found else ";".join("(" + ",".join(map(str, t)) + ")" for t in found)
        wanted = "EMPTY" if not expect else ";".join("(" + ",".join(map(str, t)) + ")" for t in expect)
        payload["solutions"] = shown
        self.check(kind, found == expect, wanted, shown, payload)

    def step_diophantine(self, kind: str, args: list[str]):
        opts = dict(zip(args[1::2], args[2::2]))
        if not args or not {"vars", "box", "expect"} <= opts.keys():
            self.fail("diophantine <name> vars a,b box lo..hi,lo..hi expect empty|(x,y);...")
        names = tuple(opts["vars"].split(","))
        ranges = tuple(_int_range(r, self.current.number) for r in opts["box"].split(","))
        box = SearchBox(names, ranges)
        found = [tuple(s[v] for v in names) for s in search_box(self.value(args[0]), box)]
        expect = _expect_tuples(opts["expect"], self.current.number)
        self._expectation(kind, found, expect, {"name": args[0], "box": f"{opts['vars']} in {opts['box']}"})

    def step_quadratic_scan(self, kind: str, args: list[str]):
        opts = dict(zip(args[1::2], args[2::2]))
        if not args or not {"quad", "scan", "range", "expect"} <= opts.keys():
            self.fail("quadratic_scan <name> quad <x> scan <s> range lo..hi [min k] expect ...")
        quad, scan = opts["quad"], opts["scan"]
        lo, hi = _int_range(opts["range"], self.current.number)
        qmin = int(opts["min"]) if "min" in opts else None
        sols = quadratic_scan(self.value(args[0]), quad, scan, (lo, hi), quad_min=qmin)
        found = [(s[quad], s[scan]) for s in sols]
        payload = {"name": args[0], "verified": f"{scan} in [{lo}, {hi}]"}
        if found:
            payload[f"max_{quad}"] = str(max(f[0] for f in found))
        self._expectation(kind, found, _expect_tuples(opts["expect"], self.current.number), payload)

    def step_certify(self, kind: str, args: list[str]):
        opts = dict(zip(args[1::2], args[2::2]))
        if not args or not {"quad", "scan", "from"} <= opts.keys():
            self.fail("certify <name> quad <x> scan <s> from <lo> [min k]")
        p = self.value(args[0])
        quad, scan, lo = opts["quad"], opts["scan"], int(opts["from"])
        cert = certify_no_integer_roots(p, quad, scan)
        if cert is None:
            self.check(kind, False, "certificate", "none available", {"name": args[0]})
            return
        qmin = int(opts["min"]) if "min" in opts else None
        hi = max(cert.threshold, lo)
        sols = quadratic_scan(p, quad, scan, (lo, hi), quad_min=qmin)
        payload = {"name": args[0], "threshold": str(cert.threshold),
                   "brackets": ",".join(f"({a},{b})" for a, b in cert.brackets),
                   "scanned": f"{scan} in [{lo}, {hi}]", "claim": f"no solutions for {scan} >= {lo}"}
        self.check(kind, not sols, "no solutions below threshold", str(sols), payload)

    def step_chi_roots(self, kind: str, args: list[str]):
        opts = dict(zip(args[1::2], args[2::2]))
        if not args or not {"in", "required", "expect"} <= opts.keys():
            self.fail("chi_roots <name> in <param> required <int> expect true|false")
        p = self.value(args[0])
        result = chi_root_count(p, opts["in"], int(self.poly(opts["required"]).constant_value()))
        want = opts["expect"] == "true"
        self.check(kind, result == want, str(want).lower(), str(result).lower(),
                   {"name": args[0], "degree": str(p.degree(opts["in"])), "required": opts["required"],
                    "contradiction": str(result).lower()})

    def _assignment(self, text: str) -> dict[str, Fraction]:
        out = {}
        for item in text.split(","):
            k, _, v = item.partition("=")
            out[k.strip()] = Fraction(v.strip())
        return out

    def step_numerical_dimension(self, kind: str, args: list[str]):
        if len(args) != 5 or args[1] != "at" or args[3] != "expect":
            self.fail('numerical_dimension "<class-expr>" at k=v,... expect <int>')
        nu = numerical_dimension(self.cls(args[0]), self.model(), self._assignment(args[2]))
        self.check(kind, nu == int(args[4]), args[4], str(nu), {"expr": args[0], "at": args[2], "nu": str(nu)})

    def step_consistency(self, kind: str, args: list[str]):
        if len(args) != 2 or args[0] != "expect":
            self.fail("consistency expect true|false")
        ok = relation_consistency_check(self.model())
        self.check(kind, str(ok).lower() == args[1], args[1], str(ok).lower(), {"consistent": str(ok).lower()})

    def step_value(self, kind: str, args: list[str]):
        if len(args) != 5 or args[1] != "at" or args[3] != "expect":
            self.fail("value <name> at k=v,... expect <rational>")
        v = self.value(args[0]).eval_at(self._assignment(args[2]))
        want = Fraction(args[4])
        self.check(kind, v == want, str(want), str(v), {"name": args[0], "at": args[2], "value": str(v)})


def run_text(text: str, name: str = "<text>") -> Report:
    return _Runner(name).run(text)


def run_file(path: str | Path) -> Report:
    path = Path(path)
    return run_text(path.read_text(encoding="utf-8"), name=path.stem)


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin scenario {name!r}; choose from {', '.join(BUILTINS)}")
    return resources.files(__name__).joinpath(f"{name}.scn").read_text(encoding="utf-8")


def run_builtin(name: str) -> Report:
    return run_text(builtin_text(name), name=name)


def expressions_in(text: str) -> list[str]:
    """Every quoted or right-hand expression in a script, for round-trip checks."""
    out = []
    for line in _split(text):
        if line.keyword in ("class", "poly"):
            rhs = line.rest.partition("=")[2].strip().strip('"')
            if rhs not in ("canonical", "c2_tangent"):
                out.append(rhs)
        elif line.keyword in ("step", "bundle"):
            for tok in _tokens(line):
                candidate = tok.partition("=")[2] if "=" in tok and not tok.startswith("=") else tok
                try:
                    parse_expression(candidate)
                except ParseError:
                    continue
                if any(ch in candidate for ch in "+-*^("):
                    out.append(candidate)
    return out


__all__ = [
    "AssertionFailure", "ScenarioError", "Report", "Entry", "BUILTINS",
    "run_text", "run_file", "run_builtin", "builtin_text", "expressions_in",
]
