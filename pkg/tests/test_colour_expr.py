import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybe7.colour_expr import EvalError, ParseError, parse


def test_precedence():
    assert parse("1+2*3")() == 7
    assert parse("2^3^2")() == 512  # right associative
    assert parse("-2^2")() == -4  # ^ binds tighter than unary minus
    assert parse("8/4/2")() == 1  # left associative
    assert parse("(1+2)*3")() == 9
    assert parse("2^-1")() == 0.5


def test_functions_and_variables():
    assert parse("exp(xi)")(xi=0) == 1
    assert parse("2*xi+1")(xi=0.5) == 2
    assert abs(parse("cosh(xi)^2-sinh(xi)^2")(xi=0.7) - 1) <= 1e-12
    assert parse("u + xi*eta")(u=1, xi=2, eta=3) == 7


def test_euler_against_high_precision():
    got = parse("exp(i*xi)")(xi=math.pi)
    mpmath.mp.dps = 40
    want = complex(mpmath.exp(1j * mpmath.mpf(math.pi)))
    assert abs(got - want) <= 1e-12
    assert abs(got + 1) <= 1e-12


def test_complex_power_principal_branch():
    z = parse("(-1)^0.5")()
    assert abs(z - 1j) <= 1e-15
    assert parse("0^2.5")() == 0


@pytest.mark.parametrize(
    "src, offset",
    [("sin(", 4), ("1+", 2), ("(1", 2), ("1 2", 2), ("foo(1)", 0), ("1 $ 2", 2), ("", 0), ("ξ+1", 0)],
)
def test_syntax_errors_report_byte_offset(src, offset):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.offset == offset
    assert info.value.expected


def test_byte_offset_counts_utf8():
    with pytest.raises(ParseError) as info:
        parse("1 + é")
    assert info.value.offset == 4
    with pytest.raises(ParseError) as info:
        parse("  é")
    assert info.value.offset == 2


@pytest.mark.parametrize("src, env", [("1/xi", {"xi": 0}), ("log(xi)", {"xi": 0}), ("xi", {}), ("0^(-1)", {}),
                                      ("exp(u)", {"u": 1e6})])
def test_eval_errors(src, env):
    with pytest.raises(EvalError):
        parse(src)(**env)


def test_free_vars():
    assert parse("exp(u/3+xi/5)").free_vars() == {"u", "xi"}
    assert parse("2*i").free_vars() == frozenset()


# random expression sources
_leaf = st.one_of(
    st.integers(0, 50).map(str),
    st.floats(0, 100, allow_nan=False).map(lambda x: repr(float(x))),
    st.sampled_from(["i", "u", "xi", "eta"]),
)


def _combine(children):
    return st.one_of(
        st.tuples(children, st.sampled_from("+-*/^"), children).map(lambda t: f"{t[0]} {t[1]} {t[2]}"),
        children.map(lambda c: f"-{c}"),
        children.map(lambda c: f"({c})"),
        st.tuples(st.sampled_from(["exp", "log", "sin", "cos", "sinh", "cosh"]), children).map(
            lambda t: f"{t[0]}({t[1]})"),
    )


SOURCES = st.recursive(_leaf, _combine, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(SOURCES)
def test_print_parse_fixed_point(src):
    e = parse(src)
    printed = str(e)
    again = parse(printed)
    assert again.tree == e.tree
    assert str(again) == printed


def _int_sources(depth):
    leaf = st.integers(0, 10 ** 6).map(lambda n: (str(n), n))
    def comb(ch):
        return st.tuples(ch, st.sampled_from("+*"), ch).map(
            lambda t: (f"({t[0][0]}){t[1]}({t[2][0]})", t[0][1] + t[2][1] if t[1] == "+" else t[0][1] * t[2][1]))
    return st.recursive(leaf, comb, max_leaves=depth)


@given(_int_sources(6))
def test_integer_arithmetic_exact(pair):
    src, value = pair
    got = parse(src)()
    if abs(value) < 2 ** 53:
        assert got == value
    else:
        assert math.isclose(got.real, value, rel_tol=1e-15)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_eval_deterministic(x, y):
    e = parse("sinh(xi)*cos(eta) + log(1 + xi^2 + eta^2)")
    a = e(xi=x, eta=y)
    b = parse(str(e))(xi=x, eta=y)
    assert a == b or (cmath.isnan(a) and cmath.isnan(b))
