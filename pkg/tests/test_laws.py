import pytest
from hypothesis import given, settings, strategies as st

from nonassoc.algebra import AlgebraError, mul, norm
from nonassoc.builtins import builtin_algebra, complex_octonion
from nonassoc.laws import (
    check_identity,
    check_leibniz,
    compare_algebras,
    find_signed_isomorphism,
    zero_divisor_scan,
)
from nonassoc.scalars import GaussianRational

small = st.builds(GaussianRational, st.fractions(-5, 5, max_denominator=4), st.fractions(-5, 5, max_denominator=4))


def elements(name):
    alg = builtin_algebra(name)
    return st.lists(small, min_size=alg.dim, max_size=alg.dim).map(alg.element)


@pytest.mark.parametrize("name", ["octonion", "split_octonion", "sedenion", "quaternion", "biquaternion"])
def test_flexible_and_alternative_everywhere(name):
    alg = builtin_algebra(name)
    flex = check_identity(alg, "flexible")
    alt = check_identity(alg, "alternative")
    assert flex.passed and flex.cases_checked == alg.dim**3
    assert alt.passed and alt.cases_checked == 2 * alg.dim**2 + 2 * alg.dim**3


def test_lie_admissibility_witnesses():
    rep = check_identity(builtin_algebra("octonion"), "lie_admissible")
    assert rep.status == "fail"
    assert rep.failures == 168  # frozen from the basis-triple enumeration
    assert 1 <= len(rep.witnesses) <= 10
    w = rep.witnesses[0]
    assert len(w.inputs) == 3 and w.lhs != w.rhs
    assert check_identity(builtin_algebra("quaternion"), "lie_admissible").passed


def test_reports_are_deterministic():
    a = check_identity(builtin_algebra("octonion"), "lie_admissible").to_json(timing=False)
    b = check_identity(builtin_algebra("octonion"), "lie_admissible").to_json(timing=False)
    assert a == b and "elapsed_ms" not in a


def test_unknown_law():
    with pytest.raises(ValueError):
        check_identity(builtin_algebra("octonion"), "commutative")


@settings(max_examples=40, deadline=None)
@given(elements("octonion"), elements("octonion"))
def test_octonion_norm_is_multiplicative(x, y):
    assert norm(mul(x, y)) == mul(norm(x), norm(y))


@settings(max_examples=40, deadline=None)
@given(elements("split_octonion"), elements("split_octonion"))
def test_split_norm_is_multiplicative(x, y):
    assert norm(mul(x, y)) == mul(norm(x), norm(y))


def test_zero_divisors():
    assert zero_divisor_scan(builtin_algebra("octonion")).passed
    rep = zero_divisor_scan(builtin_algebra("split_octonion"))
    assert not rep.passed
    assert ("u0", "u0c") in [w.inputs for w in rep.witnesses]
    with pytest.raises(ValueError):
        zero_divisor_scan(builtin_algebra("octonion"), depth=0)


def test_leibniz_needs_a_closed_subalgebra():
    sed = builtin_algebra("sedenion")
    with pytest.raises(AlgebraError, match="not closed"):
        check_leibniz(sed, ["1", "i1", "i2"], sed.basis("i4"), sed.basis("i5"))


def test_leibniz_fails_where_it_should():
    # over the full octonion block the nonassociative commutator is not a derivation
    sed = builtin_algebra("sedenion")
    rep = check_leibniz(sed, ["1"] + [f"i{n}" for n in range(1, 8)], sed.basis("i1"), sed.basis("i2"))
    assert not rep.passed


def test_signed_isomorphism_of_table_octonions():
    sed = builtin_algebra("sedenion")
    from nonassoc.algebra import subalgebra

    block = subalgebra(sed, ["1"] + [f"i{n}" for n in range(1, 8)], "block")
    m = find_signed_isomorphism(block, builtin_algebra("octonion"))
    assert m == [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 7), (1, 6), (-1, 5)]
    assert compare_algebras(block, builtin_algebra("octonion"), m).passed
    # the literal identification i_n -> e_n is not a homomorphism
    assert not compare_algebras(block, builtin_algebra("octonion")).passed


def test_compare_requires_equal_dimension():
    with pytest.raises(AlgebraError, match="dimension"):
        compare_algebras(builtin_algebra("octonion"), complex_octonion())
