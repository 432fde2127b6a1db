import pytest

from chowcalc.chern import (FormalBundle, dual, line_bundle, line_sum, numerical_dimension, porteous_codim2,
                            porteous_codim3, schur_s22, trivial, twist_line, whitney)
from chowcalc.chow import Kind, ModelMismatch, curve_model, make_model, projective_space_model
from chowcalc.expr import Env, eval_class
from chowcalc.expr import eval_poly as P


@pytest.fixture
def p3():
    return projective_space_model(3)


def C(model, text):
    return eval_class(text, Env(model))


def bundle(model, rank, *classes):
    rank = P(rank) if isinstance(rank, str) else rank
    return FormalBundle.make(model, rank, [C(model, c) for c in classes])


def test_null_correlation_twist(p3):
    E = twist_line(bundle(p3, 2, "0", "h^2"), C(p3, "6*h"))
    assert (E.chern(1), E.chern(2), E.chern(3)) == (C(p3, "12*h"), C(p3, "37*h^2"), p3.zero())


def test_whitney_double(p3):
    E = bundle(p3, 2, "12*h", "37*h^2")
    D = whitney(E, E)
    assert D.rank == 4
    assert D.chern(1) == C(p3, "24*h")
    assert D.chern(2) == C(p3, "218*h^2")
    assert D.chern(3) == C(p3, "888*h^3")


def test_whitney_with_trivial(pf):
    E = bundle(pf, "r", "a*xi + b*f", "c*xi^2")
    S = whitney(E, trivial(pf, 3))
    assert S.rank == P("r + 3") and S.c == E.c


def test_whitney_rejects_other_models(pf):
    with pytest.raises(ModelMismatch):
        whitney(trivial(pf, 1), trivial(curve_model(), 1))


def test_line_sum_matches_repeated_whitney(pf):
    L = C(pf, "xi - f")
    total = line_bundle(L)
    for _ in range(4):
        total = whitney(total, line_bundle(L))
    assert total == line_sum(L, 5)
    S = line_sum(L, P("r"))
    assert S.chern(2) == L * L * P("r*(r-1)/2")
    assert S.chern(3) == L ** 3 * P("r*(r-1)*(r-2)/6")


def test_dual(pf):
    E = bundle(pf, "r", "r*(xi - f)", "s*xi^2", "t*xi^2*f")
    assert dual(dual(E)) == E
    assert dual(E).chern(1) == C(pf, "-r*(xi - f)")
    assert dual(E).chern(3) == C(pf, "-t*xi^2*f")
    assert dual(line_bundle(C(pf, "xi"))).chern(1) == C(pf, "-xi")


def test_twist_of_dual_by_adjoint_class():
    pf4 = make_model(Kind.PBUNDLE_CURVE, dim=4, genus=0, degF="d")
    E = bundle(pf4, "r", "r*(xi - f)")
    adj = C(pf4, "xi + (d - 2)*f")
    assert twist_line(dual(E), adj).chern(1) == C(pf4, "r*(d - 1)*f")


def test_twist_by_zero_and_inverse(pf):
    E = bundle(pf, 3, "xi - 2*f", "5*xi^2 + xi*f", "xi^2*f")
    assert twist_line(E, pf.zero()) == E
    L = C(pf, "2*xi + 7*f")
    assert twist_line(twist_line(E, L), -L) == E


def test_porteous_classes(p3, pf):
    E = bundle(p3, 2, "12*h", "37*h^2")
    assert porteous_codim2(E) == C(p3, "1369*h^4")
    F = bundle(pf, 3, "xi", "xi^2 + xi*f")
    assert porteous_codim2(F) == F.chern(2) ** 2
    assert porteous_codim3(F).is_zero()
    G = bundle(pf, 4, "0", "0", "xi^2*f")
    assert porteous_codim3(G) == G.chern(3) ** 2


def test_porteous_on_line_sums(pf):
    L = C(pf, "xi + 3*f")
    S = line_sum(L, 4)
    w = line_bundle(L)
    for _ in range(3):
        w = whitney(w, line_bundle(L))
    assert porteous_codim2(S) == w.chern(2) ** 2 - w.chern(1) * w.chern(3)
    assert porteous_codim2(S) == L ** 4 * (6 ** 2 - 4 * 4)
    assert porteous_codim3(S) == w.chern(3) ** 2 - w.chern(2) * w.chern(4)


def test_schur_s22(p3, pf):
    D = whitney(bundle(p3, 2, "12*h", "37*h^2"), bundle(p3, 2, "12*h", "37*h^2"))
    assert schur_s22(D) == C(p3, f"{218 ** 2 - 24 * 888}*h^4")
    assert schur_s22(bundle(pf, 2, "xi")).is_zero()
    E = bundle(pf, "r", "a*xi + b*f", "u*xi^2 + v*xi*f", "w*xi^2*f")
    assert schur_s22(E) == porteous_codim2(E)


def test_numerical_dimension():
    pf4 = make_model(Kind.PBUNDLE_CURVE, dim=4, genus=0, degF="d")
    assert numerical_dimension(C(pf4, "r*(xi - f)"), pf4, {"d": 4, "r": 2}) == 3
    assert numerical_dimension(C(pf4, "xi"), pf4, {"d": 3}) == 4
    assert numerical_dimension(C(pf4, "f"), pf4, {"d": 3}) == 1
    assert numerical_dimension(pf4.zero(), pf4, {}) == 0
    pfn = curve_model()
    assert numerical_dimension(C(pfn, "xi"), pfn, {"n": 6, "d": 2}) == 6
