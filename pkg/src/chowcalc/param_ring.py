"""Exact multivariate polynomials over named parameters.

Coefficients are ``fractions.Fraction``. A polynomial is a mapping from
monomials to nonzero coefficients, so equality of canonical forms is
equality of polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

RESERVED_PARAMS = frozenset(
    "n r d g e a alpha c1 c2 m1 m2 m12 m1m2 k2 kc1 km1 km2 c1m1 c1m2 c2B c12".split()
)


class PolyError(ArithmeticError):
    """Base class for polynomial errors."""


class NotLinear(PolyError):
    pass


class NonConstantCoefficient(PolyError):
    pass


class MissingAssignment(PolyError):
    def __init__(self, param: str):
        super().__init__(f"no value assigned to parameter {param!r}")
        self.param = param


class ZeroPolynomial(PolyError):
    pass


class InexactDivision(PolyError):
    pass


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, k in b:
        exps[name] = exps.get(name, 0) + k
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(k for _, k in m)


def mono_key(m: Monomial) -> tuple:
    """Sort key for display: total degree, then the expanded name tuple."""
    expanded = tuple(name for name, k in m for _ in range(k))
    return (mono_degree(m), expanded)


def _mono_str(m: Monomial) -> str:
    return "*".join(name if k == 1 else f"{name}^{k}" for name, k in m)


def _scalar_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class PolyExpr:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    # construction

    @classmethod
    def const(cls, c: Scalar) -> "PolyExpr":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "PolyExpr":
        return cls({((name, 1),): 1})

    @staticmethod
    def lift(x: "PolyExpr | Scalar") -> "PolyExpr":
        if isinstance(x, PolyExpr):
            return x
        if isinstance(x, (int, Fraction)):
            return PolyExpr.const(x)
        raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")

    # inspection

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise NonConstantCoefficient(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    @property
    def params(self) -> frozenset[str]:
        return frozenset(name for m in self._terms for name, _ in m)

    def degree(self, x: str) -> int:
        """Degree in ``x``; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(dict(m).get(x, 0) for m in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def coefficients_in(self, x: str) -> dict[int, "PolyExpr"]:
        """Split as sum of c_k * x^k; returns {k: c_k}."""
        parts: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            k = 0
            rest = []
            for name, e in m:
                if name == x:
                    k = e
                else:
                    rest.append((name, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: PolyExpr(t) for k, t in parts.items()}

    def coefficient(self, x: str, k: int) -> "PolyExpr":
        return self.coefficients_in(x).get(k, ZERO)

    def leading_monomial(self) -> Monomial:
        """Leading monomial under graded-lex (first sorted name most significant)."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        top = max(mono_degree(m) for m in self._terms)
        return min((m for m in self._terms if mono_degree(m) == top), key=mono_key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    # arithmetic

    def __add__(self, other):
        try:
            other = PolyExpr.lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return PolyExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = PolyExpr.lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return PolyExpr.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyExpr({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, PolyExpr):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return PolyExpr(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PolyExpr):
            other = other.constant_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyExpr.const(other)
        if not isinstance(other, PolyExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # substitution and evaluation

    def substitute(self, x: str, v: "PolyExpr | Scalar") -> "PolyExpr":
        v = PolyExpr.lift(v)
        powers = {0: ONE}
        out = ZERO
        for k, coeff in sorted(self.coefficients_in(x).items()):
            if k not in powers:
                powers[k] = v ** k
            out = out + coeff * powers[k]
        return out

    def substitute_many(self, values: Mapping[str, "PolyExpr | Scalar"]) -> "PolyExpr":
        """Simultaneous substitution."""
        lifted = {k: PolyExpr.lift(v) for k, v in values.items()}
        out = ZERO
        for m, c in self._terms.items():
            term = PolyExpr.const(c)
            rest = []
            for name, e in m:
                if name in lifted:
                    term = term * lifted[name] ** e
                else:
                    rest.append((name, e))
            out = out + term * PolyExpr({tuple(rest): 1})
        return out

    def eval_at(self, assignment: Mapping[str, Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for name, e in m:
                if name not in assignment:
                    raise MissingAssignment(name)
                val *= Fraction(assignment[name]) ** e
            total += val
        return total

    def solve_linear(self, x: str) -> "PolyExpr":
        parts = self.coefficients_in(x)
        if self.degree(x) != 1:
            raise NotLinear(f"{self} is not of degree 1 in {x}")
        lead = parts[1]
        if not lead.is_constant():
            raise NonConstantCoefficient(f"coefficient of {x} is {lead}")
        return -parts.get(0, ZERO) / lead.constant_value()

    # integer normalization and exact division

    def denominator_lcm(self) -> int:
        return lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1

    def primitive(self) -> "PolyExpr":
        """Integer coefficients, content 1, positive leading coefficient."""
        if not self._terms:
            return self
        scaled = self * self.denominator_lcm()
        content = 0
        for c in scaled._terms.values():
            content = gcd(content, c.numerator)
        out = scaled / content
        if out.leading_coefficient() < 0:
            out = -out
        return out

    def div_exact(self, q: "PolyExpr | Scalar") -> "PolyExpr":
        """Quotient self / q; raises InexactDivision on a nonzero remainder."""
        q = PolyExpr.lift(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm_q = q.leading_monomial()
        lc_q = q._terms[lm_q]
        q_exps = dict(lm_q)
        rem = self
        quot: dict[Monomial, Fraction] = {}
        while rem:
            lm = rem.leading_monomial()
            exps = dict(lm)
            if any(exps.get(name, 0) < e for name, e in q_exps.items()):
                raise InexactDivision(f"{q} does not divide {self}")
            shift = tuple(
                sorted((name, e - q_exps.get(name, 0)) for name, e in exps.items()
                       if e - q_exps.get(name, 0) > 0)
            )
            c = rem._terms[lm] / lc_q
            quot[shift] = quot.get(shift, 0) + c
            rem = rem - q * PolyExpr({shift: c})
        return PolyExpr(quot)

    # rendering

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: mono_key(mc[0]))

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, descending: bool = False) -> str:
        """Render the terms, lowest degree first unless ``descending``."""
        if not self._terms:
            return "0"
        pieces = []
        terms = self.sorted_terms()
        if descending:
            terms = sorted(terms, key=lambda t: -mono_degree(t[0]))
        for i, (m, c) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not m:
                body = _scalar_str(a)
            elif a == 1:
                body = _mono_str(m)
            else:
                body = f"{_scalar_str(a)}*{_mono_str(m)}"
            if i == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"PolyExpr({str(self)!r})"


ZERO = PolyExpr()
ONE = PolyExpr.const(1)


def var(name: str) -> PolyExpr:
    return PolyExpr.var(name)


def const(c: Scalar) -> PolyExpr:
    return PolyExpr.const(c)


def add(p: PolyExpr, q: PolyExpr) -> PolyExpr:
    return PolyExpr.lift(p) + q


def mul(p: PolyExpr, q: PolyExpr) -> PolyExpr:
    return PolyExpr.lift(p) * PolyExpr.lift(q)


def negate(p: PolyExpr) -> PolyExpr:
    return -PolyExpr.lift(p)


def substitute(p: PolyExpr, x: str, v: PolyExpr | Scalar) -> PolyExpr:
    return PolyExpr.lift(p).substitute(x, v)


def solve_linear(p: PolyExpr, x: str) -> PolyExpr:
    return PolyExpr.lift(p).solve_linear(x)


def eval_at(p: PolyExpr, assignment: Mapping[str, Scalar]) -> Fraction:
    return PolyExpr.lift(p).eval_at(assignment)


def binom_poly(p: PolyExpr | Scalar, k: int) -> PolyExpr:
    """p(p-1)...(p-k+1)/k! expanded."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = PolyExpr.lift(p)
    out = ONE
    for i in range(k):
        out = out * (p - i) / (i + 1)
    return out


def eliminate(p: PolyExpr, x: str, q: PolyExpr) -> PolyExpr:
    """Remove ``x`` from ``p`` using the linear relation ``q = A*x + B = 0``.

    Returns sum_i p_i (-B)^i A^(k-i), which is A^k * p(-B/A) with k = deg_x p.
    """
    if q.degree(x) != 1:
        raise NotLinear(f"{q} is not of degree 1 in {x}")
    qa = q.coefficients_in(x)
    a, b = qa[1], qa.get(0, ZERO)
    parts = p.coefficients_in(x)
    k = max(parts)
    out = ZERO
    for i, pi in parts.items():
        out = out + pi * (-b) ** i * a ** (k - i)
    return out


def poly_sum(items: Iterable[PolyExpr]) -> PolyExpr:
    out = ZERO
    for it in items:
        out = out + it
    return out
