"""Formal Chern classes c1..c4 of bundles on a model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .chow import ChowClass, ChowModel, ModelMismatch, NotHomogeneous, top_intersect
from .param_ring import PolyExpr, Scalar, binom_poly

MAX_INDEX = 4


class SymbolicRankUnsupported(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FormalBundle:
    rank: PolyExpr
    c: tuple[ChowClass, ...]  # c1..c4
    model: ChowModel

    def __post_init__(self):
        object.__setattr__(self, "rank", PolyExpr.lift(self.rank))
        if len(self.c) != MAX_INDEX:
            raise ValueError("a bundle carries exactly c1..c4")
        for i, ci in enumerate(self.c, start=1):
            if ci.model is not self.model:
                raise ModelMismatch(f"c{i} lives on a different model")
            if ci and ci.degree != i:
                raise NotHomogeneous(f"c{i} = {ci} is not of degree {i}")

    @classmethod
    def make(cls, model: ChowModel, rank: PolyExpr | Scalar,
             classes: Sequence[ChowClass | PolyExpr | Scalar] = ()) -> "FormalBundle":
        cs = [model.zero()] * MAX_INDEX
        for i, ci in enumerate(classes[:MAX_INDEX]):
            cs[i] = ci if isinstance(ci, ChowClass) else model.const(ci)
        return cls(PolyExpr.lift(rank), tuple(cs), model)

    def chern(self, k: int) -> ChowClass:
        if k == 0:
            return self.model.one()
        if 1 <= k <= MAX_INDEX:
            return self.c[k - 1]
        return self.model.zero()

    @property
    def det(self) -> ChowClass:
        return self.c[0]

    def __eq__(self, other):
        if not isinstance(other, FormalBundle):
            return NotImplemented
        return self.model is other.model and self.rank == other.rank and self.c == other.c

    def __hash__(self):
        return hash((self.rank, self.c))

    def __str__(self) -> str:
        lines = [f"rank={self.rank}"]
        lines += [f"c{i}={ci}" for i, ci in enumerate(self.c, start=1)]
        return "\n".join(lines)


def trivial(model: ChowModel, rank: PolyExpr | Scalar) -> FormalBundle:
    return FormalBundle.make(model, rank)


def line_bundle(L: ChowClass) -> FormalBundle:
    return FormalBundle.make(L.model, 1, [L])


def whitney(a: FormalBundle, b: FormalBundle) -> FormalBundle:
    if a.model is not b.model:
        raise ModelMismatch("whitney sum of bundles on different models")
    cs = []
    for k in range(1, MAX_INDEX + 1):
        total = a.model.zero()
        for i in range(k + 1):
            total = total + a.chern(i) * b.chern(k - i)
        cs.append(total)
    return FormalBundle(a.rank + b.rank, tuple(cs), a.model)


def dual(b: FormalBundle) -> FormalBundle:
    return FormalBundle(b.rank, tuple(ci * (-1) ** i for i, ci in enumerate(b.c, start=1)), b.model)


def twist_line(b: FormalBundle, L: ChowClass) -> FormalBundle:
    """Chern classes of b tensored with the line bundle of class L."""
    if L.model is not b.model:
        raise ModelMismatch("twist by a class on a different model")
    if L and L.degree != 1:
        raise NotHomogeneous(f"twisting class {L} is not a divisor")
    if not isinstance(b.rank, PolyExpr):
        raise SymbolicRankUnsupported(f"rank {b.rank!r} is not a polynomial")
    powers = [b.model.one()]
    for _ in range(MAX_INDEX):
        powers.append(powers[-1] * L)
    cs = []
    for k in range(1, MAX_INDEX + 1):
        total = b.model.zero()
        for i in range(k + 1):
            total = total + b.chern(i) * powers[k - i] * binom_poly(b.rank - i, k - i)
        cs.append(total)
    return FormalBundle(b.rank, tuple(cs), b.model)


def line_sum(L: ChowClass, count: PolyExpr | Scalar) -> FormalBundle:
    """Direct sum of ``count`` copies of the line bundle L; c_k = C(count, k) L^k."""
    count = PolyExpr.lift(count)
    return FormalBundle(count, tuple(L ** k * binom_poly(count, k) for k in range(1, MAX_INDEX + 1)),
                        L.model)


def porteous_codim2(b: FormalBundle) -> ChowClass:
    return b.c[1] * b.c[1] - b.c[0] * b.c[2]


def porteous_codim3(b: FormalBundle) -> ChowClass:
    return b.c[2] * b.c[2] - b.c[1] * b.c[3]


def schur(b: FormalBundle, partition: Sequence[int]) -> ChowClass:
    """Schur class via the dual Jacobi-Trudi determinant in c_i.

    ``partition`` is the partition whose conjugate indexes the rows.
    """
    conj = [sum(1 for p in partition if p > i) for i in range(max(partition, default=0))]
    size = len(conj)
    rows = [[b.chern(conj[i] - i + j) if conj[i] - i + j >= 0 else b.model.zero()
             for j in range(size)] for i in range(size)]
    return _det(rows, b.model)


def _det(rows: list[list[ChowClass]], model: ChowModel) -> ChowClass:
    if not rows:
        return model.one()
    if len(rows) == 1:
        return rows[0][0]
    total = model.zero()
    for j, entry in enumerate(rows[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * _det(minor, model)
        total = total + (term if j % 2 == 0 else -term)
    return total


def schur_s22(b: FormalBundle) -> ChowClass:
    return schur(b, (2, 2))


def numerical_dimension(det_e: ChowClass, model: ChowModel, assignment: Mapping[str, Scalar]) -> int:
    """Largest k <= n with (det E)^k . xi^(n-k) nonzero at ``assignment``."""
    n = model.concrete_dim()
    if n is None:
        n_val = model.dim.eval_at(assignment)
        if n_val.denominator != 1:
            raise ValueError("dimension must evaluate to an integer")
        n = int(n_val)
    if not det_e:
        return 0
    for k in range(n, 0, -1):
        value = top_intersect([det_e] * k, model).eval_at(assignment)
        if value != 0:
            return k
    return 0
