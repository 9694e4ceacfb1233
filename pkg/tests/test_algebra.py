import itertools
import json

import pytest

from nonassoc.algebra import (
    Algebra,
    AlgebraError,
    AlgebraMismatchError,
    associator,
    change_basis,
    commutator,
    conjugate,
    format_element,
    invert_matrix,
    jordan_product,
    load_algebra,
    mul,
    nonassoc_commutator,
    norm,
    quadratic_form,
    scalar_part,
    subalgebra,
)
from nonassoc.builtins import (
    NAMES,
    OCTONION_TRIPLES,
    SPLIT_OCTONION_LABELS,
    builtin_algebra,
    complex_octonion,
    split_basis_matrix,
)
from nonassoc.scalars import HALF, I, GaussianRational


@pytest.fixture
def octo():
    return builtin_algebra("octonion")


def _levi_civita_products():
    # independent construction: e_A e_B = a_ABC e_C - delta_AB
    out = {}
    for a, b, c in OCTONION_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            out[(x, y)] = (1, z)
            out[(y, x)] = (-1, z)
    return out


def test_octonion_table_matches_structure_constants(octo):
    ref = _levi_civita_products()
    for a, b in itertools.product(range(1, 8), repeat=2):
        got = octo.product_of_basis(a, b)
        if a == b:
            assert got == -octo.one()
        else:
            s, c = ref[(a, b)]
            assert got == octo.basis(f"e{c}") * s


def test_octonion_examples(octo):
    e = octo.basis
    assert mul(e("e1"), e("e2")) == e("e3")
    assert mul(e("e5"), e("e1")) == e("e6")
    assert commutator(e("e1"), e("e2")) == e("e3") * 2
    assert associator(e("e1"), e("e2"), e("e4")) == e("e5") * -2
    assert jordan_product(e("e1"), e("e2")).is_zero()
    assert format_element(associator(e("e1"), e("e2"), e("e4"))) == "-2*e5"


def test_nonassoc_commutator_definition(octo):
    g, h1, h2 = octo.basis("e1"), octo.basis("e4"), octo.basis("e5")
    assert nonassoc_commutator(g, h1, h2) == mul(mul(g, h1), h2) - mul(h1, mul(h2, g))


def test_split_octonion_unit_is_not_a_basis_vector():
    s = builtin_algebra("split_octonion")
    assert s.unit_index is None
    assert s.one() == s.basis("u0") + s.basis("u0c")
    for x in s.basis_elements():
        assert mul(s.one(), x) == x == mul(x, s.one())
    assert mul(s.basis("u1"), s.basis("u1c")) == -s.basis("u0")
    assert mul(s.basis("u0"), s.basis("u0c")).is_zero()


def test_conjugation_and_norm(octo):
    x = octo.element({"1": 1, "e1": 2, "e6": GaussianRational(0, 1)})
    assert conjugate(x) == octo.element({"1": 1, "e1": -2, "e6": -I})
    assert quadratic_form(x) == GaussianRational(1 + 4 - 1)
    s = builtin_algebra("split_octonion")
    assert norm(s.basis("u0")).is_zero()
    with pytest.raises(AlgebraError, match="u1"):
        scalar_part(s.basis("u1"))


def test_change_basis_reproduces_split_table(octo):
    derived = change_basis(octo, split_basis_matrix(), SPLIT_OCTONION_LABELS)
    assert derived.same_table(builtin_algebra("split_octonion"))
    assert derived.conjugation_matrix() == builtin_algebra("split_octonion").conjugation_matrix()


def test_change_basis_identity_is_noop(octo):
    eye = [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    assert change_basis(octo, eye, octo.labels).same_table(octo)


def test_invert_matrix():
    m = [[HALF, HALF * I], [HALF, -HALF * I]]
    inv = invert_matrix(m)
    prod = [[sum((m[i][k] * inv[k][j] for k in range(2)), GaussianRational(0)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
    with pytest.raises(AlgebraError, match="singular"):
        invert_matrix([[1, 2], [2, 4]])


def test_subalgebras():
    q = builtin_algebra("quaternion")
    assert q.dim == 4 and q.labels == ("1", "i1", "i2", "i3")
    assert builtin_algebra("biquaternion").dim == 8
    with pytest.raises(AlgebraError, match="leaves the span"):
        subalgebra(builtin_algebra("octonion"), ["1", "e1", "e2"], "broken")


def test_mixing_algebras_is_an_error(octo):
    with pytest.raises(AlgebraMismatchError):
        octo.basis("e1") + builtin_algebra("split_octonion").basis("u1")


def test_identity_law_is_checked():
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    with pytest.raises(AlgebraError):
        Algebra("bad", ["a", "b"], table, 1)


@pytest.mark.parametrize("name", NAMES)
def test_json_round_trip(name):
    alg = builtin_algebra(name)
    text = alg.to_json()
    again = load_algebra(text)
    assert again.same_table(alg)
    assert again.to_json() == text
    assert text.endswith("\n")
    doc = json.loads(text)
    assert list(doc) == sorted(doc)


@pytest.mark.parametrize("text", ["not json", "{}", '{"name": "x", "dim": 2, "labels": ["a"], "table": [], "unit": 0}'])
def test_load_rejects_malformed(text):
    with pytest.raises(AlgebraError):
        load_algebra(text)


def test_complex_octonion_shape():
    c = complex_octonion()
    assert c.dim == 16
    j = c.basis("j")
    assert mul(j, j) == -c.one()
    assert all(mul(j, x) == mul(x, j) for x in c.basis_elements())


def test_unknown_builtin():
    with pytest.raises(AlgebraError, match="unknown algebra"):
        builtin_algebra("trigintaduonion")
