"""Ulrich numerical identities as residual polynomials (left side minus right side)."""

from __future__ import annotations

from dataclasses import dataclass

from .chern import FormalBundle
from .chow import ChowClass, ChowError, ChowModel, Kind, canonical_class, c2_tangent, top_intersect
from .param_ring import PolyExpr, ZeroPolynomial


class UnsupportedSection(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class UlrichContext:
    """A bundle on a model together with the classes the identities use.

    ``canonical`` and ``c2x`` default to the model's own K_X and c2(X);
    ``polarization`` defaults to xi.
    """

    bundle: FormalBundle
    canonical: ChowClass | None = None
    c2x: ChowClass | None = None
    polarization: ChowClass | None = None

    @property
    def model(self) -> ChowModel:
        return self.bundle.model

    @property
    def rank(self) -> PolyExpr:
        return self.bundle.rank

    @property
    def n(self) -> PolyExpr:
        return self.model.dim

    @property
    def K(self) -> ChowClass:
        return self.canonical if self.canonical is not None else canonical_class(self.model)

    @property
    def C2X(self) -> ChowClass:
        return self.c2x if self.c2x is not None else c2_tangent(self.model)

    @property
    def H(self) -> ChowClass:
        return self.polarization if self.polarization is not None else self.model.xi()

    def top(self, *factors: ChowClass) -> PolyExpr:
        return top_intersect(list(factors), self.model)


def residual_c1(ctx: UlrichContext) -> PolyExpr:
    c1 = ctx.bundle.chern(1)
    return ctx.top(c1) - ctx.rank / 2 * ctx.top(ctx.K + ctx.H * (ctx.n + 1))


def residual_c2(ctx: UlrichContext) -> PolyExpr:
    c1, c2 = ctx.bundle.chern(1), ctx.bundle.chern(2)
    K, H, n = ctx.K, ctx.H, ctx.n
    rhs = (ctx.top(c1 * c1 - c1 * K) / 2
           + ctx.rank / 12 * ctx.top(K * K + ctx.C2X - H * H * ((3 * n * n + 5 * n + 2) / 2)))
    return ctx.top(c2) - rhs


def residual_c3(ctx: UlrichContext) -> PolyExpr:
    b = ctx.bundle
    c1, c2, c3 = b.chern(1), b.chern(2), b.chern(3)
    K, c2x, n, r = ctx.K, ctx.C2X, ctx.n, ctx.rank
    deg = ctx.top()
    rhs = (ctx.top(c1 * c2)
           - ctx.top(c1 * c1 * c1) / 3
           + ctx.top((c1 * c1 - c2 * 2) * K) / 2
           - ctx.top(c1 * (K * K + c2x)) / 6
           + r / 12 * ctx.top(K * c2x)
           + r * n * (n + 1) ** 2 * deg / 24)
    return ctx.top(c3) - rhs


def c2_linear_section(c2x: ChowClass, kx: ChowClass, i: int, model: ChowModel,
                      h: ChowClass | None = None) -> ChowClass:
    """c2 of a codimension-(n-3) linear section, kept as a class on X."""
    if i != 3:
        raise UnsupportedSection(f"only i = 3 is supported, got {i}")
    h = h if h is not None else model.xi()
    n = model.dim
    return c2x + kx * h * (n - 3) + h * h * ((n - 2) * (n - 3) / 2)


def rr_surface_bundle(model: ChowModel, rank: PolyExpr | int, c1: ChowClass, c2: ChowClass | PolyExpr,
                      kb: ChowClass | None = None, c2b: PolyExpr | None = None) -> PolyExpr:
    """Euler characteristic of a bundle on the base surface.

    ``c1`` is a xi-free divisor class; ``c2`` is a xi-free degree-two class or
    its degree as a polynomial.
    """
    if model.kind is not Kind.PBUNDLE_SURFACE:
        raise ChowError("surface Riemann-Roch needs a surface-based model")
    kb = kb if kb is not None else model.pi_combo(model.kb)
    c2b = PolyExpr.lift(c2b) if c2b is not None else model.c2b
    for cls in (c1, kb) + ((c2,) if isinstance(c2, ChowClass) else ()):
        if not cls.is_xi_free():
            raise ChowError(f"{cls} is not pulled back from the base")
    c2_deg = c2.point_content() if isinstance(c2, ChowClass) else PolyExpr.lift(c2)
    k2 = (kb * kb).point_content()
    return (PolyExpr.lift(rank) * (k2 + c2b) / 12
            + (c1 * (c1 - kb)).point_content() / 2
            - c2_deg)


def chi_root_count(chi_poly: PolyExpr, m: str, required_roots: int) -> bool:
    """True when a nonzero polynomial in ``m`` cannot have ``required_roots`` roots."""
    if chi_poly.is_zero():
        raise ZeroPolynomial("the Euler characteristic polynomial is identically zero")
    return chi_poly.degree(m) < required_roots


__all__ = [
    "UlrichContext", "UnsupportedSection", "residual_c1", "residual_c2", "residual_c3",
    "c2_linear_section", "rr_surface_bundle", "chi_root_count",
]
