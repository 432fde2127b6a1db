import pytest

from chowcalc.chow import canonical_class
from chowcalc.expr import BinOp, Env, EvalError, ParseError, eval_class, eval_poly, parse_expression, render
from chowcalc.scenarios import BUILTINS, builtin_text, expressions_in


def test_product_node(sup):
    node = parse_expression("(xi + pi(M1)) * pi(M2)")
    assert isinstance(node, BinOp) and node.op == "*"
    assert eval_class(node, Env(sup)) == sup.xi() * sup.pi("M2") + sup.pi("M1") * sup.pi("M2")


def test_canonical_class_expression(sup):
    assert eval_class("-(n-1)*xi + pi(KB) + pi(C1F)", Env(sup)) == canonical_class(sup)


def test_double_caret_error_column():
    with pytest.raises(ParseError) as err:
        parse_expression("xi^^2")
    assert err.value.column == 4
    assert err.value.expected


@pytest.mark.parametrize("text", ["", "a +", "(a", "a b", "2**", "pi(", "a $ b"])
def test_malformed_expressions(text):
    with pytest.raises(ParseError):
        parse_expression(text)


def test_power_binds_tighter_than_unary_minus():
    assert eval_poly("-x^2") == -eval_poly("x^2")
    assert eval_poly("(-x)^2") == eval_poly("x^2")
    with pytest.raises(ParseError):
        parse_expression("2^3^1")


def test_division_needs_constant():
    assert eval_poly("(3*c1 - 8)/4") == eval_poly("3/4*c1 - 2")
    with pytest.raises(EvalError):
        eval_poly("a/b")
    with pytest.raises(EvalError):
        eval_poly("a/0")


def test_class_atoms_need_a_model():
    with pytest.raises(EvalError):
        eval_poly("xi + 1")


def test_binom_call():
    assert eval_poly("binom(n-1, 2)") == eval_poly("(n^2 - 3*n + 2)/2")
    with pytest.raises(EvalError):
        eval_poly("binom(n, k)")


@pytest.mark.parametrize("name", BUILTINS)
def test_parse_render_fixed_point(name):
    texts = expressions_in(builtin_text(name))
    assert texts
    for text in texts:
        once = render(parse_expression(text))
        assert render(parse_expression(once)) == once
        assert parse_expression(once) == parse_expression(text)
