"""Integer solutions of polynomial constraints: box search, per-slice quadratic
solving, root bounds and a sign-pattern non-existence certificate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from .param_ring import PolyExpr, ZeroPolynomial

DEFAULT_CAP = 10 ** 10


class BoxTooLarge(ValueError):
    pass


class NotQuadratic(ValueError):
    pass


class DegenerateSlice(ValueError):
    """The polynomial vanishes identically on a scan slice (every value is a root)."""


@dataclass(frozen=True)
class SearchBox:
    vars: tuple[str, ...]
    ranges: tuple[tuple[int, int], ...]
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "ranges", tuple(tuple(r) for r in self.ranges))
        if len(self.vars) != len(self.ranges):
            raise ValueError("one range per variable is required")
        for lo, hi in self.ranges:
            if lo > hi:
                raise ValueError(f"empty range {lo}..{hi}")

    @property
    def size(self) -> int:
        total = 1
        for lo, hi in self.ranges:
            total *= hi - lo + 1
        return total


def integer_form(p: PolyExpr) -> PolyExpr:
    """Scale to integer coefficients; the zero set is unchanged."""
    return p * p.denominator_lcm() if p else p


def _univariate_ints(p: PolyExpr, x: str) -> list[int]:
    """Integer coefficients [a0, a1, ...] of a polynomial in x alone."""
    p = integer_form(p)
    if p.params - {x}:
        raise ValueError(f"{p} involves parameters other than {x}")
    deg = max(p.degree(x), 0)
    coeffs = [0] * (deg + 1)
    for k, c in p.coefficients_in(x).items():
        coeffs[k] = int(c.constant_value())
    return coeffs


def _horner(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _verify(p: PolyExpr, sols: list[dict[str, int]]) -> list[dict[str, int]]:
    for s in sols:
        if p.eval_at(s) != 0:
            raise AssertionError(f"reported solution {s} does not satisfy {p}")
    return sols


def search_box(p: PolyExpr, box: SearchBox) -> list[dict[str, int]]:
    """Every integer point of the box where p vanishes, in lexicographic order."""
    extra = p.params - set(box.vars)
    if extra:
        raise ValueError(f"parameters {sorted(extra)} are not search variables")
    if box.size > box.cap:
        raise BoxTooLarge(f"box has {box.size} points, cap is {box.cap}")
    q = integer_form(p)
    if not q:
        return [dict(zip(box.vars, pt)) for pt in product(*(range(lo, hi + 1) for lo, hi in box.ranges))]
    terms = [(int(c), [dict(m).get(v, 0) for v in box.vars]) for m, c in q.items()]
    *outer, last = box.vars
    sols = []
    for head in product(*(range(lo, hi + 1) for lo, hi in box.ranges[:-1])):
        # collapse to a univariate polynomial in the last variable
        coeffs: dict[int, int] = {}
        for c, exps in terms:
            val = c
            for v, e in zip(head, exps[:-1]):
                val *= v ** e
            coeffs[exps[-1]] = coeffs.get(exps[-1], 0) + val
        dense = [coeffs.get(k, 0) for k in range(max(coeffs) + 1)]
        lo, hi = box.ranges[-1]
        for x in range(lo, hi + 1):
            if _horner(dense, x) == 0:
                sols.append(dict(zip(box.vars, head + (x,))))
    return _verify(p, sols)


def _integer_roots_quadratic(a: int, b: int, c: int) -> list[int]:
    if a == 0:
        if b == 0:
            if c == 0:
                raise DegenerateSlice("equation is 0 = 0")
            return []
        return [-c // b] if c % b == 0 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    s = isqrt(disc)
    if s * s != disc:
        return []
    roots = set()
    for num in (-b + s, -b - s):
        if num % (2 * a) == 0:
            roots.add(num // (2 * a))
    return sorted(roots)


def quadratic_scan(p: PolyExpr, quad_var: str, scan_var: str, scan_range: tuple[int, int],
                   quad_min: int | None = None) -> list[dict[str, int]]:
    """Solve p = 0 for integer quad_var exactly at each integer scan value."""
    if p.degree(quad_var) > 2:
        raise NotQuadratic(f"degree {p.degree(quad_var)} in {quad_var}")
    extra = p.params - {quad_var, scan_var}
    if extra:
        raise NotQuadratic(f"coefficients involve {sorted(extra)}")
    q = integer_form(p)
    parts = q.coefficients_in(quad_var)
    coeffs = [_univariate_ints(parts.get(k, PolyExpr()), scan_var) for k in range(3)]
    lo, hi = scan_range
    sols = []
    for s in range(lo, hi + 1):
        c, b, a = (_horner(cf, s) for cf in coeffs)
        for x in _integer_roots_quadratic(a, b, c):
            if quad_min is None or x >= quad_min:
                sols.append({scan_var: s, quad_var: x})
    return _verify(p, sols)


def rational_root_bound(p: PolyExpr) -> tuple[Fraction, Fraction]:
    """Cauchy bound: every real root lies in [-B, B] with B = 1 + max |a_i / a_n|."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no root bound")
    params = sorted(p.params)
    if len(params) > 1:
        raise ValueError(f"{p} is not univariate")
    if not params:
        return (Fraction(-1), Fraction(1))
    x = params[0]
    parts = p.coefficients_in(x)
    deg = max(parts)
    lead = parts[deg].constant_value()
    ratio = max((abs(parts[k].constant_value() / lead) for k in parts if k != deg), default=Fraction(0))
    bound = 1 + ratio
    return (-bound, bound)


@dataclass(frozen=True)
class Certificate:
    """Beyond ``threshold`` the scan variable admits no integer root in quad_var.

    ``brackets`` are the integer pairs (k, k+1) enclosing the roots, with the
    constant signs of p at those points for every scan value past the threshold.
    """

    quad_var: str
    scan_var: str
    threshold: int
    brackets: tuple[tuple[int, int], ...]

    def describe(self) -> str:
        enc = ", ".join(f"({a},{b})" for a, b in self.brackets)
        return (f"for {self.scan_var} > {self.threshold} every real root in {self.quad_var} "
                f"lies strictly inside {enc}")


def certify_no_integer_roots(p: PolyExpr, quad_var: str, scan_var: str) -> Certificate | None:
    """Try to show that p(s, x) has no integer root x once s is large.

    The limiting polynomial L(x) is the coefficient of the top power of s. If
    L is quadratic with two sign changes between consecutive integers, then for
    large s the same sign pattern holds for p(s, .) at those integers (Cauchy
    bounds give the threshold), so both roots sit strictly between integers.
    """
    if p.degree(quad_var) != 2:
        return None
    q = integer_form(p)
    top = q.degree(scan_var)
    limit = q.coefficient(scan_var, top)
    if limit.degree(quad_var) != 2 or limit.params - {quad_var}:
        return None
    lc = _univariate_ints(limit, quad_var)
    a, b, c = lc[2], lc[1], lc[0]
    disc = b * b - 4 * a * c
    if disc <= 0 or isqrt(disc) ** 2 == disc:
        return None
    # integer brackets around the two real roots of L
    bound = int(rational_root_bound(limit)[1]) + 1
    signs = {k: _horner(lc, k) for k in range(-bound, bound + 1)}
    brackets = tuple((k, k + 1) for k in range(-bound, bound)
                     if signs[k] * signs[k + 1] < 0)
    if len(brackets) != 2:
        return None
    threshold = 0
    lead_poly = q.coefficient(quad_var, 2)
    probes = [lead_poly] + [q.substitute(quad_var, k) for pair in brackets for k in pair]
    for poly in probes:
        if poly.degree(scan_var) != top:
            return None
        threshold = max(threshold, int(rational_root_bound(poly)[1]) + 1)
    return Certificate(quad_var, scan_var, threshold, brackets)
