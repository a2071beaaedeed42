import pytest
from hypothesis import given, strategies as st

from redcollatz.errors import ExponentLimitError, ExprSyntaxError, NegativeResultError
from redcollatz.expr import eval_int_expr, parse_int_expr


@pytest.mark.parametrize("text,value", [
    ("(3+5)*2", 16), ("2^2^3", 256), ("2**3", 8), ("10-3-2", 5), ("2*3+4*5", 26),
    ("2^3*3", 24), (" 7 ", 7), ("((1))", 1), ("0", 0), ("12345678901234567890", 12345678901234567890),
])
def test_eval(text, value):
    assert eval_int_expr(text) == value


def test_flagship_integer():
    assert eval_int_expr("2^100000-1") == 2**100000 - 1


@pytest.mark.parametrize("text,pos", [("2+", 2), ("(1", 2), ("1 2", 2), ("a", 0), ("2 $ 3", 2),
                                      ("", 0), ("-1", 0), ("()", 1)])
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as err:
        eval_int_expr(text)
    assert err.value.pos == pos


def test_exponent_limit():
    with pytest.raises(ExponentLimitError):
        eval_int_expr("2^(2^21)")
    assert eval_int_expr("2^10", exponent_limit=10) == 1024
    with pytest.raises(ExponentLimitError):
        eval_int_expr("2^11", exponent_limit=10)


def test_negative_result():
    with pytest.raises(NegativeResultError):
        eval_int_expr("1-2+5")


def test_ast_shape():
    node = parse_int_expr("1-2-3")
    assert node.op == "-" and node.left.op == "-"
    node = parse_int_expr("2^3^2")
    assert node.op == "^" and node.right.op == "^"


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 50))
def test_matches_python(a, b, c):
    assert eval_int_expr(f"{a}*{b}+{a}^{c % 6}") == a * b + a ** (c % 6)
    assert eval_int_expr(f"({a}+{b})*{c}") == (a + b) * c
