"""Graded classes on projective-bundle style varieties and their top intersections.

A class is a finite sum of terms ``coefficient * xi^p * (base class)``. The
base class is the unit, a divisor symbol pulled back from the base, or the
fiber class (a point of the base). Top intersections are taken after padding
the product with the power of ``xi`` that reaches the dimension, so the
dimension ``n`` can stay symbolic.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .param_ring import ONE, ZERO, PolyExpr, Scalar, binom_poly

BaseKey = tuple[int, str]
TermKey = tuple[int, int, str]  # (xi power, base degree, base name)

UNIT: BaseKey = (0, "")


class ChowError(ValueError):
    pass


class IncompletePairingTable(ChowError):
    pass


class DegreeOverflow(ChowError):
    pass


class ModelMismatch(ChowError):
    pass


class NotHomogeneous(ChowError):
    pass


class Kind(str, Enum):
    PBUNDLE_CURVE = "pbundle_curve"
    PBUNDLE_SURFACE = "pbundle_surface"
    HYPERQUADRIC_CURVE = "hyperquadric_curve"
    PROJECTIVE_SPACE = "projective_space"


Combo = dict[str, PolyExpr]
ComboLike = Union[str, Mapping[str, Union[PolyExpr, Scalar]], PolyExpr]


def _poly(x) -> PolyExpr:
    if isinstance(x, str):
        return PolyExpr.var(x)
    return PolyExpr.lift(x)


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


class ChowModel:
    """One of the supported variety families together with its evaluation rules.

    Models compare by identity: classes from different model objects never mix.
    """

    def __init__(
        self,
        kind: Kind,
        dim: PolyExpr,
        *,
        genus: PolyExpr = ZERO,
        deg_f: PolyExpr = ZERO,
        d: PolyExpr = ZERO,
        e: PolyExpr = ZERO,
        symbols: tuple[str, ...] = (),
        pairing: Mapping[tuple[str, str], PolyExpr] | None = None,
        c1f: Combo | None = None,
        kb: Combo | None = None,
        c2f: PolyExpr = ZERO,
        c2b: PolyExpr = ZERO,
        top: PolyExpr | None = None,
        relations: Mapping[str, PolyExpr] | None = None,
    ):
        self.kind = Kind(kind)
        self.dim = dim
        self.genus = genus
        self.deg_f = deg_f
        self.d = d
        self.e = e
        self.symbols = tuple(symbols)
        self.pairing = dict(pairing or {})
        self.c1f = dict(c1f or {})
        self.kb = dict(kb or {})
        self.c2f = c2f
        self.c2b = c2b
        self.relations = dict(relations or {})
        self._top = top

    # basic data

    @property
    def base_dim(self) -> int:
        return {
            Kind.PBUNDLE_CURVE: 1,
            Kind.HYPERQUADRIC_CURVE: 1,
            Kind.PBUNDLE_SURFACE: 2,
            Kind.PROJECTIVE_SPACE: 0,
        }[self.kind]

    @property
    def xi_name(self) -> str:
        return {Kind.HYPERQUADRIC_CURVE: "H", Kind.PROJECTIVE_SPACE: "h"}.get(self.kind, "xi")

    @property
    def fiber_name(self) -> str | None:
        if self.kind is Kind.PROJECTIVE_SPACE:
            return None
        return "F" if self.kind is Kind.HYPERQUADRIC_CURVE else "f"

    @property
    def fiber_key(self) -> BaseKey:
        return (self.base_dim, self.fiber_name or "")

    def concrete_dim(self) -> int | None:
        if self.dim.is_constant():
            v = self.dim.constant_value()
            if v.denominator == 1:
                return int(v)
        return None

    def top_value(self) -> PolyExpr:
        """Value of xi^n."""
        if self._top is not None:
            return self._top
        if self.kind is Kind.PBUNDLE_CURVE:
            return self.deg_f
        if self.kind is Kind.HYPERQUADRIC_CURVE:
            return self.d
        if self.kind is Kind.PBUNDLE_SURFACE:
            return self.combo_pairing(self.c1f, self.c1f) - self.c2f
        return ONE

    def pairing_value(self, a: str, b: str) -> PolyExpr:
        try:
            return self.pairing[_pair(a, b)]
        except KeyError:
            raise IncompletePairingTable(f"no pairing entry for ({a},{b})") from None

    def combo_pairing(self, x: Combo, y: Combo) -> PolyExpr:
        out = ZERO
        for a, ca in x.items():
            for b, cb in y.items():
                out = out + ca * cb * self.pairing_value(a, b)
        return out

    # class constructors

    def const(self, c: PolyExpr | Scalar) -> "ChowClass":
        return ChowClass(self, {(0,) + UNIT: PolyExpr.lift(c)})

    def one(self) -> "ChowClass":
        return self.const(1)

    def zero(self) -> "ChowClass":
        return ChowClass(self, {})

    def xi(self, power: int = 1) -> "ChowClass":
        return ChowClass(self, {(power,) + UNIT: ONE})

    def fiber(self) -> "ChowClass":
        if self.fiber_name is None:
            raise ChowError("projective space has no fiber class")
        return ChowClass(self, {(0,) + self.fiber_key: ONE})

    def pi(self, symbol: str) -> "ChowClass":
        if self.kind is not Kind.PBUNDLE_SURFACE:
            raise ChowError(f"base symbols exist only on surface-based models, not {self.kind.value}")
        if symbol not in self.symbols:
            raise ChowError(f"unknown base symbol {symbol!r}")
        return ChowClass(self, {(0, 1, symbol): ONE})

    def pi_combo(self, combo: Combo) -> "ChowClass":
        out = self.zero()
        for s, c in combo.items():
            out = out + self.pi(s) * c
        return out

    # ring rules

    def base_product(self, a: BaseKey, b: BaseKey) -> list[tuple[BaseKey, PolyExpr]]:
        if a == UNIT:
            return [(b, ONE)]
        if b == UNIT:
            return [(a, ONE)]
        if a[0] + b[0] > self.base_dim:
            return []
        # only remaining case: two divisor symbols on a surface base
        return [(self.fiber_key, self.pairing_value(a[1], b[1]))]

    def base_value(self, key: BaseKey) -> PolyExpr:
        """Value of xi^(n - deg) times the base class ``key``."""
        if key == UNIT:
            return self.top_value()
        if key == self.fiber_key:
            return PolyExpr.const(2) if self.kind is Kind.HYPERQUADRIC_CURVE else ONE
        return self.combo_pairing(self.c1f, {key[1]: ONE})

    def validate(self) -> None:
        if self.kind is Kind.PBUNDLE_SURFACE:
            for i, a in enumerate(self.symbols):
                for b in self.symbols[i:]:
                    if _pair(a, b) not in self.pairing:
                        raise IncompletePairingTable(f"missing pairing ({a},{b})")
            for combo in (self.c1f, self.kb):
                for s in combo:
                    if s not in self.symbols:
                        raise ChowError(f"undeclared base symbol {s!r}")

    def __repr__(self) -> str:
        return f"ChowModel({self.kind.value}, dim={self.dim})"


def _combo(x: ComboLike | None, symbols: tuple[str, ...]) -> Combo:
    if x is None:
        return {}
    if isinstance(x, str):
        return {x: ONE}
    if isinstance(x, PolyExpr):
        out: Combo = {}
        rest = x
        for s in symbols:
            c = x.coefficient(s, 1)
            if c:
                out[s] = c
                rest = rest - c * PolyExpr.var(s)
        if rest or any(c.params & set(symbols) for c in out.values()):
            raise ChowError(f"{x} is not a linear combination of base symbols")
        return out
    return {s: PolyExpr.lift(c) for s, c in x.items() if PolyExpr.lift(c)}


def make_model(kind: Kind | str, config: Mapping | None = None, **kw) -> ChowModel:
    """Build and validate a model.

    Config keys: ``dim`` for every kind; ``genus``, ``degF`` (curve p-bundle);
    ``genus``, ``d``, ``e`` (hyperquadric); ``symbols``, ``pairing``, ``c1F``,
    ``KB``, ``c2F``, ``c2B``, ``top``, ``relations`` (surface base).
    """
    cfg = dict(config or {})
    cfg.update(kw)
    kind = Kind(kind)
    dim = _poly(cfg.get("dim", "n"))
    if kind is Kind.PBUNDLE_CURVE:
        m = ChowModel(kind, dim, genus=_poly(cfg.get("genus", "g")),
                      deg_f=_poly(cfg.get("degF", "d")),
                      top=_poly(cfg["top"]) if "top" in cfg else None)
    elif kind is Kind.HYPERQUADRIC_CURVE:
        m = ChowModel(kind, dim, genus=_poly(cfg.get("genus", "g")),
                      d=_poly(cfg.get("d", "d")), e=_poly(cfg.get("e", "e")))
    elif kind is Kind.PROJECTIVE_SPACE:
        m = ChowModel(kind, dim, top=_poly(cfg.get("degree", 1)))
    else:
        symbols = tuple(cfg.get("symbols", ()))
        pairing = {_pair(*k): _poly(v) for k, v in dict(cfg.get("pairing", {})).items()}
        m = ChowModel(
            kind, dim, symbols=symbols, pairing=pairing,
            c1f=_combo(cfg.get("c1F"), symbols), kb=_combo(cfg.get("KB"), symbols),
            c2f=_poly(cfg.get("c2F", "c2")), c2b=_poly(cfg.get("c2B", "c2B")),
            top=_poly(cfg["top"]) if cfg.get("top") is not None else None,
            relations={k: _poly(v) for k, v in dict(cfg.get("relations", {})).items()},
        )
    m.validate()
    return m


class ChowClass:
    """Immutable graded class bound to a model."""

    __slots__ = ("model", "_terms")

    def __init__(self, model: ChowModel, terms: Mapping[TermKey, PolyExpr]):
        self.model = model
        self._terms = {k: c for k, c in terms.items() if c}

    @property
    def terms(self) -> dict[TermKey, PolyExpr]:
        return dict(self._terms)

    def _coerce(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            if other.model is not self.model:
                raise ModelMismatch("classes belong to different models")
            return other
        return self.model.const(PolyExpr.lift(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return ChowClass(self.model, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.model, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PolyExpr)):
            c = PolyExpr.lift(other)
            return ChowClass(self.model, {k: v * c for k, v in self._terms.items()})
        if not isinstance(other, ChowClass):
            return NotImplemented
        return mul_class(self, other, self.model)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ChowClass(self.model, {k: v / other for k, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.model.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PolyExpr)):
            other = self.model.const(other)
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.model is other.model and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {p + b for (p, b, _) in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Explicit degree, or None for the zero class."""
        degs = self.degrees()
        if len(degs) > 1:
            raise NotHomogeneous(f"class {self} mixes degrees {sorted(degs)}")
        return next(iter(degs), None)

    def is_xi_free(self) -> bool:
        return all(p == 0 for (p, _, _) in self._terms)

    def map_coefficients(self, f) -> "ChowClass":
        return ChowClass(self.model, {k: f(c) for k, c in self._terms.items()})

    def substitute(self, x: str, v) -> "ChowClass":
        return self.map_coefficients(lambda c: c.substitute(x, v))

    def coefficient(self, xi_power: int, base: BaseKey = UNIT) -> PolyExpr:
        return self._terms.get((xi_power,) + base, ZERO)

    def base_combo(self) -> Combo:
        """Degree-one base part of a xi-free class, as a symbol combination."""
        return {name: c for (p, b, name), c in self._terms.items() if p == 0 and b == 1
                and name != self.model.fiber_name}

    def point_content(self) -> PolyExpr:
        return self.coefficient(0, self.model.fiber_key)

    def _sort_key(self, key: TermKey):
        p, b, name = key
        syms = self.model.symbols
        idx = syms.index(name) if name in syms else -1
        return (-p, b, idx, name)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        m = self.model
        pieces = []
        for key in sorted(self._terms, key=self._sort_key):
            p, b, name = key
            c = self._terms[key]
            parts = []
            if p:
                parts.append(m.xi_name if p == 1 else f"{m.xi_name}^{p}")
            if b:
                parts.append(name if (b, name) == m.fiber_key else f"pi*({name})")
            mono = "*".join(parts)
            text = c.to_string(descending=True)
            if not mono:
                body = text if len(c.terms) == 1 else f"({text})"
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            elif len(c.terms) == 1:
                body = f"{text}*{mono}"
            elif text.startswith("-"):
                body = f"-({(-c).to_string(descending=True)})*{mono}"
            else:
                body = f"({text})*{mono}"
            if not pieces:
                pieces.append(body)
            elif body.startswith("-"):
                pieces.append(" - " + body[1:])
            else:
                pieces.append(" + " + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"ChowClass({str(self)!r})"


def mul_class(a: ChowClass, b: ChowClass, m: ChowModel | None = None) -> ChowClass:
    m = m or a.model
    if a.model is not m or b.model is not m:
        raise ModelMismatch("classes belong to different models")
    out: dict[TermKey, PolyExpr] = {}
    for (p1, b1, n1), c1 in a._terms.items():
        for (p2, b2, n2), c2 in b._terms.items():
            for (bd, bn), w in m.base_product((b1, n1), (b2, n2)):
                key = (p1 + p2, bd, bn)
                out[key] = out.get(key, ZERO) + c1 * c2 * w
    return ChowClass(m, out)


def product(factors: Iterable[ChowClass], m: ChowModel) -> ChowClass:
    out = m.one()
    for f in factors:
        if not isinstance(f, ChowClass):
            f = m.const(f)
        out = mul_class(out, f, m)
    return out


def top_intersect(factors: Iterable[ChowClass] | ChowClass, m: ChowModel | None = None) -> PolyExpr:
    """Evaluate the product of ``factors`` padded by xi^(n-k)."""
    if isinstance(factors, ChowClass):
        factors = [factors]
    factors = list(factors)
    if m is None:
        if not factors:
            raise ChowError("a model is required for an empty product")
        m = factors[0].model
    for f in factors:
        if isinstance(f, ChowClass) and not f.is_homogeneous():
            raise NotHomogeneous(f"factor {f} is not homogeneous")
    prod = product(factors, m)
    k = prod.degree
    if k is None:
        return ZERO
    n = m.concrete_dim()
    if n is not None and k > n:
        raise DegreeOverflow(f"explicit degree {k} exceeds dimension {n}")
    out = ZERO
    for (p, b, name), c in prod._terms.items():
        out = out + c * m.base_value((b, name))
    return out


def reduce_class(c: ChowClass) -> ChowClass:
    """Drop terms of explicit degree above a concrete dimension (they vanish)."""
    n = c.model.concrete_dim()
    if n is None:
        return c
    return ChowClass(c.model, {k: v for k, v in c._terms.items() if k[0] + k[1] <= n})


def vanishes(c: ChowClass) -> bool:
    return reduce_class(c).is_zero()


def canonical_class(m: ChowModel) -> ChowClass:
    n = m.dim
    if m.kind is Kind.PBUNDLE_CURVE:
        return m.xi() * (-n) + m.fiber() * (2 * m.genus - 2 + m.deg_f)
    if m.kind is Kind.PBUNDLE_SURFACE:
        return m.xi() * (1 - n) + m.pi_combo(m.kb) + m.pi_combo(m.c1f)
    if m.kind is Kind.HYPERQUADRIC_CURVE:
        return m.xi() * (1 - n) + m.fiber() * (m.d + 2 * m.genus - 2 - m.e)
    return m.xi() * (-n - 1)


def c2_tangent(m: ChowModel) -> ChowClass:
    n = m.dim
    xi = m.xi()
    if m.kind is Kind.PBUNDLE_CURVE:
        return xi * xi * binom_poly(n, 2) + xi * m.fiber() * (n * (2 - 2 * m.genus) - (n - 1) * m.deg_f)
    if m.kind is Kind.PBUNDLE_SURFACE:
        return (
            xi * xi * binom_poly(n - 1, 2)
            - xi * m.pi_combo(m.c1f) * (n - 2)
            - xi * m.pi_combo(m.kb) * (n - 1)
            + m.fiber() * (m.c2f + m.c2b)
            + m.pi_combo(m.kb) * m.pi_combo(m.c1f)
        )
    if m.kind is Kind.HYPERQUADRIC_CURVE:
        d, e, g = m.d, m.e, m.genus
        return (xi * xi * ((n * n - 3 * n + 4) / 2)
                + xi * m.fiber() * (-2 + 3 * d - 4 * e + 2 * g + 2 * n - d * n + e * n - 2 * g * n))
    return xi * xi * binom_poly(n + 1, 2)


def relation_consistency_check(m: ChowModel) -> bool:
    """Compare the top-degree rule with the Grothendieck relation of the model."""
    if m.kind is Kind.PBUNDLE_SURFACE:
        lhs = m.top_value()
        rhs = m.combo_pairing(m.c1f, m.c1f) - m.c2f
        for name, val in m.relations.items():
            lhs, rhs = lhs.substitute(name, val), rhs.substitute(name, val)
        return lhs == rhs
    if m.kind is Kind.PBUNDLE_CURVE:
        return m.top_value() == m.deg_f
    if m.kind is Kind.HYPERQUADRIC_CURVE:
        amb = make_model(Kind.PBUNDLE_CURVE, dim=m.dim + 1, genus=m.genus, degF=m.e)
        divisor = amb.xi() * 2 + amb.fiber() * (m.d - 2 * m.e)
        h_top = top_intersect([divisor], amb)
        h_fib = top_intersect([divisor, amb.fiber()], amb)
        return h_top == m.top_value() and h_fib == m.base_value(m.fiber_key)
    return m.top_value() == 1


SUP_PAIRING = {
    ("KB", "KB"): "k2", ("KB", "C1F"): "kc1", ("KB", "M1"): "km1", ("KB", "M2"): "km2",
    ("C1F", "C1F"): "c12", ("C1F", "M1"): "c1m1", ("C1F", "M2"): "c1m2",
    ("M1", "M1"): "m12", ("M1", "M2"): "m1m2", ("M2", "M2"): 0,
}


def curve_model() -> ChowModel:
    return make_model(Kind.PBUNDLE_CURVE, dim="n", genus="g", degF="d")


def hyperquadric_model() -> ChowModel:
    return make_model(Kind.HYPERQUADRIC_CURVE, dim="n", genus="g", d="d", e="e")


def surface_model() -> ChowModel:
    """Surface-base model with the symbols K_B, c1(F), M1, M2 and M2^2 = 0."""
    return make_model(
        Kind.PBUNDLE_SURFACE, dim="n", symbols=("KB", "C1F", "M1", "M2"),
        pairing=SUP_PAIRING, c1F="C1F", KB="KB", c2F="c2", c2B="c2B", top="d",
        relations={"c2": PolyExpr.var("c12") - PolyExpr.var("d")},
    )


def plane_model() -> ChowModel:
    """Rank-4 bundle over the plane: n = 5, c1(F) = c1*R, K_B = -3R."""
    r_sym = PolyExpr.var("R")
    return make_model(
        Kind.PBUNDLE_SURFACE, dim=5, symbols=("R",), pairing={("R", "R"): 1},
        c1F=PolyExpr.var("c1") * r_sym, KB=r_sym * -3, c2F="c2", c2B=3,
    )


def projective_space_model(dim: int = 3) -> ChowModel:
    return make_model(Kind.PROJECTIVE_SPACE, dim=dim)


def stock_models() -> dict[str, ChowModel]:
    return {"pf": curve_model(), "qf": hyperquadric_model(), "sup": surface_model()}
