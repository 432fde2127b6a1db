from fractions import Fraction

import pytest

from chowcalc.diophantine import (BoxTooLarge, NotQuadratic, SearchBox, certify_no_integer_roots, quadratic_scan,
                                  rational_root_bound, search_box)
from chowcalc.expr import eval_poly as P
from chowcalc.param_ring import ZeroPolynomial
from chowcalc.scenarios import run_builtin

CORE = P("n*(3*r - 2) - 15*r + 14")


@pytest.fixture(scope="module")
def pf2_core():
    return P(run_builtin("pf2").value("core"))


def test_box_examples(pf2_core):
    assert search_box(CORE, SearchBox(("n", "r"), ((1, 100), (2, 100)))) == [{"n": 4, "r": 2}]
    assert search_box(P("1"), SearchBox(("x",), ((-5, 5),))) == []
    assert search_box(pf2_core, SearchBox(("r", "c1"), ((2, 100), (5, 100)))) == []


def test_box_order_and_verification():
    sols = search_box(P("(x - 1)*(y + 2)"), SearchBox(("x", "y"), ((0, 2), (-3, -1))))
    assert sols == [{"x": 0, "y": -2}, {"x": 1, "y": -3}, {"x": 1, "y": -2}, {"x": 1, "y": -1},
                    {"x": 2, "y": -2}]


def test_box_cap():
    with pytest.raises(BoxTooLarge):
        search_box(P("x - y"), SearchBox(("x", "y"), ((0, 10 ** 6), (0, 10 ** 6)), cap=10 ** 9))


def test_quadratic_scan_examples():
    assert quadratic_scan(P("r^2 - 4"), "r", "c1", (0, 0)) == [{"c1": 0, "r": -2}, {"c1": 0, "r": 2}]
    sols = quadratic_scan(CORE, "n", "r", (2, 10 ** 4))
    assert sols == [{"r": 2, "n": 4}]
    with pytest.raises(NotQuadratic):
        quadratic_scan(P("r^3 - c1"), "r", "c1", (0, 3))
    with pytest.raises(NotQuadratic):
        quadratic_scan(P("r^2 - c1 - t"), "r", "c1", (0, 3))


def test_quadratic_scan_min_filter():
    sols = quadratic_scan(P("(r + 3)*(r - 5) + c1"), "r", "c1", (0, 0), quad_min=2)
    assert sols == [{"c1": 0, "r": 5}]


def test_pf2_scan_is_empty(pf2_core):
    assert quadratic_scan(pf2_core, "r", "c1", (5, 10 ** 4), quad_min=2) == []


def test_root_bounds():
    assert rational_root_bound(P("r - 5")) == (Fraction(-6), Fraction(6))
    assert rational_root_bound(P("c1^9")) == (Fraction(-1), Fraction(1))
    lo, hi = rational_root_bound(P("2*x^3 - 7*x + 1"))
    assert (lo, hi) == (Fraction(-9, 2), Fraction(9, 2))
    with pytest.raises(ZeroPolynomial):
        rational_root_bound(P("0"))


def test_certificate_for_pf2(pf2_core):
    cert = certify_no_integer_roots(pf2_core, "r", "c1")
    assert cert is not None
    assert cert.brackets == ((0, 1), (3, 4))
    assert cert.threshold == 6205
    # past the threshold the sign pattern is fixed; spot-check it
    for c1 in (cert.threshold + 1, 10 ** 5, 10 ** 7):
        signs = [pf2_core.eval_at({"c1": c1, "r": k}) for k in (0, 1, 3, 4)]
        assert signs[0] * signs[1] < 0 and signs[2] * signs[3] < 0


def test_no_certificate_when_roots_are_integral():
    assert certify_no_integer_roots(P("(r - 1)*(r - 3)*c1 + 1"), "r", "c1") is None
