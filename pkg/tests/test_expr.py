import pytest

from nonassoc.builtins import builtin_algebra
from nonassoc.expr import (
    Call,
    ExprSyntaxError,
    Mul,
    Sub,
    Symbol,
    UnknownSymbolError,
    evaluate,
    format_expression,
    parse_expression,
)

SUITE_EXPRESSIONS = [
    "(e1*e2)*e4 - e1*(e2*e4)",
    "nacomm(i1, i4, i5)",
    "comm(e1, e2)",
    "assoc(e1, e2, e4)",
    "u0*u0c",
    "one*e5",
    "1/2*I*e1 - -3*e2 + 2/3",
    "-(e1 + e2)*(e3 - e4)",
    "comm(u1, u1c) + 2*one",
    "((i1*i4)*i5)*eps1 - i1*(i4*(i5*eps1))",
]


def test_shapes():
    tree = parse_expression("(e1*e2)*e4 - e1*(e2*e4)", [])
    assert tree == Sub(Mul(Mul(Symbol("e1"), Symbol("e2")), Symbol("e4")),
                       Mul(Symbol("e1"), Mul(Symbol("e2"), Symbol("e4"))))
    tree = parse_expression("nacomm(i1, i4, i5)", [])
    assert isinstance(tree, Call) and len(tree.args) == 3


@pytest.mark.parametrize("text", SUITE_EXPRESSIONS)
def test_round_trip(text):
    tree = parse_expression(text, [])
    assert parse_expression(format_expression(tree), []) == tree


def test_chain_warning():
    notes = []
    tree = parse_expression("e1*e2*e4", notes)
    assert tree == Mul(Mul(Symbol("e1"), Symbol("e2")), Symbol("e4"))
    assert len(notes) == 1 and "grouping" in notes[0]
    assert format_expression(tree) == "(e1*e2)*e4"
    assert parse_expression(format_expression(tree), notes) == tree and len(notes) == 1


@pytest.mark.parametrize("text, offset", [("e1 ** e2", 3), ("e1 +", 4), ("foo", 0), ("(e1", 3), ("", 0),
                                          ("e1 $ e2", 3), ("1/0", 2)])
def test_syntax_errors(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression(text)
    assert info.value.offset == offset


def test_byte_offsets_count_utf8():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("é + e1 ?")
    assert info.value.offset == 0


@pytest.mark.parametrize("algebra, text, value", [
    ("octonion", "comm(e1,e2)", "2*e3"),
    ("octonion", "(e1*e2)*e4 - e1*(e2*e4)", "-2*e5"),
    ("split_octonion", "u0*u0c", "0"),
    ("octonion", "one*e5", "e5"),
    ("split_octonion", "one", "u0 + u0c"),
    ("quaternion", "i1*i2", "i3"),
    ("sedenion", "eps4*eps5", "-i1"),
])
def test_evaluate(algebra, text, value):
    assert str(evaluate(parse_expression(text, []), builtin_algebra(algebra))) == value


def test_assoc_matches_explicit_grouping():
    o = builtin_algebra("octonion")
    a = evaluate(parse_expression("assoc(e1, e2, e4)"), o)
    b = evaluate(parse_expression("(e1*e2)*e4 - e1*(e2*e4)"), o)
    assert a == b and not a.is_zero()


def test_unknown_symbol_for_algebra():
    with pytest.raises(UnknownSymbolError, match="eps1"):
        evaluate(parse_expression("eps1"), builtin_algebra("octonion"))


def test_arity():
    with pytest.raises(ExprSyntaxError, match="3 arguments"):
        parse_expression("assoc(e1, e2)")
