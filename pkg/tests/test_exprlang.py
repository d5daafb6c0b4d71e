import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetradcalc import exprlang as X
from tetradcalc.exprlang import BinOp, Call, Coord, ImagUnit, Neg, Num, Param, Pi

SPH = ("t", "r", "th", "ph")


def test_product_with_call():
    assert X.parse("x1*sin(x2)") == X.Mul(Coord(1), X.Sin(Coord(2)))


def test_parameter_is_collected():
    e = X.parse("sqrt(1-2*M/x1)")
    assert X.parameters(e) == {"M"}
    assert X.bind(e, {"M": 1.0}) is e


def test_unknown_identifier_at_bind():
    with pytest.raises(X.UnknownIdentifierError):
        X.bind(X.parse("Q*x1"), {"M": 1.0})


def test_double_star_rejected_at_offset_two():
    with pytest.raises(X.ExprSyntaxError) as info:
        X.parse("2**x")
    assert info.value.offset == 2
    assert info.value.expected


def test_offsets_are_bytes():
    with pytest.raises(X.ExprSyntaxError) as info:
        X.parse("θ+1")
    assert info.value.offset == 0
    with pytest.raises(X.ExprSyntaxError) as info:
        X.parse("x1−)")
    assert info.value.offset == len("x1−".encode())


@pytest.mark.parametrize("src", ["(x1", "x1)", "sin(x1", "((x1)", "", "   ", "x1+", "sin", "foo(x1)", "2 3"])
def test_rejects_malformed(src):
    with pytest.raises(X.ExprSyntaxError):
        X.parse(src)


def test_precedence_and_associativity():
    assert X.parse("-x1^2") == Neg(BinOp("^", Coord(1), Num(2.0)))
    assert X.parse("2^3^2") == BinOp("^", Num(2.0), BinOp("^", Num(3.0), Num(2.0)))
    assert X.parse("a-b-c") == BinOp("-", BinOp("-", Param("a"), Param("b")), Param("c"))
    assert X.parse("a/b*c") == BinOp("*", BinOp("/", Param("a"), Param("b")), Param("c"))
    assert X.parse("2^-1") == BinOp("^", Num(2.0), Neg(Num(1.0)))
    assert X.evaluate(X.parse("2^3^2"), (0, 0, 0, 0)) == 512


def test_chart_aliases_and_constants():
    e = X.parse("r*sin(th)+pi*i", SPH)
    assert e == BinOp("+", BinOp("*", Coord(1), Call("sin", Coord(2))), BinOp("*", Pi(), ImagUnit()))
    assert X.parse("x2", SPH) == Coord(2)


def test_eval_product_chain():
    j = X.eval_jet(X.parse("x1*sin(x2)"), (0, 2, math.pi / 2, 0))
    assert abs(j.value - 2) < 1e-15
    assert np.allclose(j.partials, [0, 1, 0, 0], atol=1e-15)


def test_eval_complex_gauge_entry():
    j = X.eval_jet(X.parse("cos(x2/2)*exp(i*x3/2)"), (0, 1, math.pi / 2, 0))
    assert abs(j.value - math.cos(math.pi / 4)) < 1e-15
    assert abs(j.partials[2] + 0.5 * math.sin(math.pi / 4)) < 1e-15
    assert abs(j.partials[3] - 0.5j * math.cos(math.pi / 4)) < 1e-15


def test_derivative_singular_sqrt():
    e = X.parse("sqrt(1-2*M/x1)")
    with pytest.raises(X.EvalDomainError, match="derivative is singular"):
        X.eval_jet(e, (0, 2, 1, 0), {"M": 1.0})
    with pytest.raises(X.EvalDomainError, match="negative"):
        X.eval_jet(e, (0, 1, 1, 0), {"M": 1.0})


def test_domain_error_names_subexpression_and_point():
    with pytest.raises(X.EvalDomainError) as info:
        X.eval_jet(X.parse("1+cot(x2)"), (0, 1, 0, 0))
    assert "cot(x2)" in str(info.value)
    assert info.value.point == (0, 1, 0, 0)


def test_constant_value():
    assert X.constant_value("pi/2") == math.pi / 2


# round trip ------------------------------------------------------------------------

leaves = st.one_of(
    st.floats(0, 100, allow_nan=False).map(Num),
    st.integers(0, 3).map(Coord),
    st.sampled_from(["M", "a", "k2"]).map(Param),
    st.just(Pi()),
    st.just(ImagUnit()),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda t: BinOp(*t)),
        st.tuples(st.sampled_from(X.FUNCTION_NAMES), children).map(lambda t: Call(*t)),
    )


exprs = st.recursive(leaves, _extend, max_leaves=12)


@given(exprs)
def test_print_parse_round_trip(e):
    assert X.parse(X.to_source(e)) == e


@given(st.lists(st.sampled_from(["x1", "2", "(", ")", "+", "-", "*", "/", "^", "sin", "pi", "i", ",", "**", "@"]), max_size=12))
def test_fuzz_never_crashes(tokens):
    src = " ".join(tokens)
    try:
        X.parse(src)
    except X.ExprError:
        pass
    if src.count("(") != src.count(")"):
        with pytest.raises(X.ExprError):
            X.parse(src)


# jets against finite differences -----------------------------------------------------


def random_expression(rng, depth=3):
    if depth == 0 or rng.random() < 0.25:
        choice = rng.integers(3)
        if choice == 0:
            return f"x{rng.integers(4)}"
        if choice == 1:
            return f"{rng.uniform(0.2, 2):.4f}"
        return f"({rng.uniform(0.2, 2):.4f}*x{rng.integers(4)})"
    kind = rng.integers(7)
    a = random_expression(rng, depth - 1)
    b = random_expression(rng, depth - 1)
    if kind == 0:
        return f"({a}+{b})"
    if kind == 1:
        return f"({a}-{b})"
    if kind == 2:
        return f"{a}*{b}"
    if kind == 3:
        return f"{a}/(2+sin({b}))"
    if kind == 4:
        return f"{rng.choice(['sin', 'cos'])}({a})"
    if kind == 5:
        return f"exp({a}/4)"
    return f"sqrt(1.5+cos({a}))^3"


def test_two_hundred_random_expressions_against_fd():
    rng = np.random.default_rng(7)
    h = 1e-5
    for _ in range(200):
        e = X.parse(random_expression(rng))
        p = rng.uniform(-1, 1, 4)
        j = X.eval_jet(e, p)
        for k in range(4):
            dp = np.zeros(4)
            dp[k] = h
            fd = (X.evaluate(e, p + dp) - X.evaluate(e, p - dp)) / (2 * h)
            assert abs(j.partials[k] - fd) <= 1e-6 * max(1.0, abs(fd))
