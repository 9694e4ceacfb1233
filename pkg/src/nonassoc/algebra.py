"""Finite-dimensional algebras given by structure constants over Q(i).

An :class:`Algebra` stores, for every ordered pair of basis elements, the
product as a sparse coefficient list.  Nothing here assumes associativity:
every product is a single bilinear table lookup, so the grouping of a
product of three or more factors is always whatever the caller wrote.
"""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .scalars import HALF, ONE, ZERO, GaussianRational, ScalarLike

MINUS_ONE = -ONE

Sparse = tuple[tuple[int, GaussianRational], ...]


class AlgebraError(ValueError):
    """Malformed algebra definition or an operation the algebra cannot do."""


class AlgebraMismatchError(AlgebraError):
    """Elements of different algebras were combined."""


def _sparse(vec: Sequence[GaussianRational]) -> Sparse:
    return tuple((k, c) for k, c in enumerate(vec) if c)


class Algebra:
    """An immutable algebra with basis labels and a product table.

    ``unit`` is the identity element as a coefficient vector.  Most built-ins
    have the identity as a basis element (``unit_index``); the split-octonion
    basis does not, since there ``1 = u0 + u0*``.

    ``conjugation`` is the linear involution used by :meth:`Element.conjugate`,
    given as the image of each basis element.  The default negates every
    basis element except the unit.
    """

    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        table: Sequence[Sequence[Sequence[ScalarLike]]],
        unit: int | Sequence[ScalarLike],
        conjugation: Sequence[Sequence[ScalarLike]] | None = None,
    ):
        dim = len(labels)
        if dim == 0:
            raise AlgebraError("algebra must have at least one basis element")
        if len(set(labels)) != dim:
            raise AlgebraError("basis labels must be distinct")
        if len(table) != dim or any(len(row) != dim for row in table):
            raise AlgebraError(f"table must be {dim}x{dim}")
        coerce = GaussianRational.coerce
        prod = []
        for a, row in enumerate(table):
            prow = []
            for b, entry in enumerate(row):
                if len(entry) != dim:
                    raise AlgebraError(
                        f"product {labels[a]}*{labels[b]} has {len(entry)} coefficients, want {dim}"
                    )
                prow.append(_sparse([coerce(c) for c in entry]))
            prod.append(tuple(prow))
        self.name = name
        self.dim = dim
        self.labels: tuple[str, ...] = tuple(labels)
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        self._prod: tuple[tuple[Sparse, ...], ...] = tuple(prod)

        if isinstance(unit, int):
            if not 0 <= unit < dim:
                raise AlgebraError(f"unit index {unit} out of range")
            self.unit_index: int | None = unit
            unit_vec = [ZERO] * dim
            unit_vec[unit] = ONE
        else:
            if len(unit) != dim:
                raise AlgebraError("unit vector has wrong length")
            unit_vec = [coerce(c) for c in unit]
            nz = [k for k, c in enumerate(unit_vec) if c]
            self.unit_index = nz[0] if len(nz) == 1 and unit_vec[nz[0]] == ONE else None
        self._unit = tuple(unit_vec)

        if conjugation is None:
            conj = []
            for k in range(dim):
                vec = [ZERO] * dim
                vec[k] = ONE if k == self.unit_index else -ONE
                conj.append(vec)
            if self.unit_index is None:
                raise AlgebraError("algebras without a unit basis element need an explicit conjugation")
        else:
            if len(conjugation) != dim or any(len(r) != dim for r in conjugation):
                raise AlgebraError("conjugation must be a dim x dim matrix")
            conj = [[coerce(c) for c in r] for r in conjugation]
        self._conj: tuple[Sparse, ...] = tuple(_sparse(r) for r in conj)

        self._check_identity_law()

    def _check_identity_law(self) -> None:
        one = self.one()
        for k in range(self.dim):
            b = self.basis(k)
            if one * b != b:
                raise AlgebraError(f"identity law fails: 1*{self.labels[k]} = {one * b}")
            if b * one != b:
                raise AlgebraError(f"identity law fails: {self.labels[k]}*1 = {b * one}")

    # construction helpers

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.dim:
                raise AlgebraError(f"basis index {label} out of range for {self.name}")
            return label
        try:
            return self._index[label]
        except KeyError:
            raise AlgebraError(f"unknown basis symbol {label!r} for algebra {self.name}") from None

    def has_label(self, label: str) -> bool:
        return label in self._index

    def basis(self, label: str | int) -> Element:
        k = self.index(label)
        vec = [ZERO] * self.dim
        vec[k] = ONE
        return Element(self, tuple(vec))

    def basis_elements(self) -> list[Element]:
        return [self.basis(k) for k in range(self.dim)]

    def zero(self) -> Element:
        return Element(self, (ZERO,) * self.dim)

    def one(self) -> Element:
        return Element(self, self._unit)

    def scalar(self, c: ScalarLike) -> Element:
        return self.one() * GaussianRational.coerce(c)

    def element(self, coeffs: Mapping[str | int, ScalarLike] | Sequence[ScalarLike]) -> Element:
        vec = [ZERO] * self.dim
        if isinstance(coeffs, Mapping):
            for key, c in coeffs.items():
                vec[self.index(key)] += GaussianRational.coerce(c)
        else:
            if len(coeffs) != self.dim:
                raise AlgebraError(f"expected {self.dim} coefficients, got {len(coeffs)}")
            vec = [GaussianRational.coerce(c) for c in coeffs]
        return Element(self, tuple(vec))

    def product_of_basis(self, a: int, b: int) -> Element:
        vec = [ZERO] * self.dim
        for k, c in self._prod[a][b]:
            vec[k] = c
        return Element(self, tuple(vec))

    def table(self) -> list[list[Element]]:
        return [[self.product_of_basis(a, b) for b in range(self.dim)] for a in range(self.dim)]

    def conjugation_matrix(self) -> list[list[GaussianRational]]:
        rows = []
        for r in self._conj:
            vec = [ZERO] * self.dim
            for k, c in r:
                vec[k] = c
            rows.append(vec)
        return rows

    def same_table(self, other: Algebra) -> bool:
        return (
            self.labels == other.labels
            and self._prod == other._prod
            and self._unit == other._unit
            and self._conj == other._conj
        )

    def __repr__(self):
        return f"<Algebra {self.name} dim={self.dim}>"

    # serialization

    def to_dict(self) -> dict:
        unit = self.unit_index if self.unit_index is not None else [c.to_quad() for c in self._unit]
        return {
            "name": self.name,
            "dim": self.dim,
            "unit": unit,
            "labels": list(self.labels),
            "table": [
                [[c.to_quad() for c in self.product_of_basis(a, b).coeffs] for b in range(self.dim)]
                for a in range(self.dim)
            ],
            "conjugation": [[c.to_quad() for c in row] for row in self.conjugation_matrix()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"


def make_algebra(spec: Mapping) -> Algebra:
    """Build an :class:`Algebra` from the JSON-shaped definition.

    Scalars are ``[re_num, re_den, im_num, im_den]`` quads.  ``unit`` is a
    basis index or a vector of quads; ``conjugation`` is optional.
    """
    try:
        name = spec["name"]
        dim = spec["dim"]
        labels = spec["labels"]
        raw_table = spec["table"]
        raw_unit = spec["unit"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"algebra definition missing field: {exc}") from None
    if not isinstance(dim, int) or dim < 1:
        raise AlgebraError(f"dim must be a positive integer, got {dim!r}")
    if len(labels) != dim:
        raise AlgebraError(f"{len(labels)} labels for dim {dim}")
    if not isinstance(raw_table, list) or len(raw_table) != dim:
        raise AlgebraError("table is not square")
    quad = GaussianRational.from_quad
    try:
        table = []
        for row in raw_table:
            if not isinstance(row, list) or len(row) != dim:
                raise AlgebraError("table is not square")
            table.append([[quad(q) for q in entry] for entry in row])
        unit = raw_unit if isinstance(raw_unit, int) else [quad(q) for q in raw_unit]
        conj = spec.get("conjugation")
        if conj is not None:
            conj = [[quad(q) for q in row] for row in conj]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError(f"malformed scalar in algebra definition: {exc}") from None
    return Algebra(name, labels, table, unit, conj)


def load_algebra(text: str) -> Algebra:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"invalid JSON: {exc}") from None
    return make_algebra(spec)


def from_products(
    name: str,
    labels: Sequence[str],
    products: Mapping[tuple[str, str], Mapping[str, ScalarLike]],
    unit: str | Mapping[str, ScalarLike],
    conjugation: Mapping[str, Mapping[str, ScalarLike]] | None = None,
) -> Algebra:
    """Build an algebra from label-keyed products; missing pairs are zero."""
    idx = {lab: k for k, lab in enumerate(labels)}
    dim = len(labels)

    def vec(m: Mapping[str, ScalarLike]) -> list[GaussianRational]:
        v = [ZERO] * dim
        for lab, c in m.items():
            v[idx[lab]] += GaussianRational.coerce(c)
        return v

    table = [[vec(products.get((a, b), {})) for b in labels] for a in labels]
    unit_arg: int | list[GaussianRational] = idx[unit] if isinstance(unit, str) else vec(unit)
    conj = None if conjugation is None else [vec(conjugation[lab]) for lab in labels]
    return Algebra(name, labels, table, unit_arg, conj)


@dataclass(frozen=True, eq=False)
class Element:
    """A coefficient vector over a specific algebra.  Value semantics."""

    algebra: Algebra
    coeffs: tuple[GaussianRational, ...]

    def _check(self, other: Element) -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError(
                f"cannot combine elements of {self.algebra.name} and {other.algebra.name}"
            )

    def __add__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Element:
        return Element(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (GaussianRational, int, Fraction)):
            c = GaussianRational.coerce(other)
            return Element(self.algebra, tuple(a * c for a in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return other.algebra is self.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.algebra), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[tuple[int, GaussianRational]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def conjugate(self) -> Element:
        return conjugate(self)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{self.algebra.name}: {format_element(self)}>"


def format_element(x: Element) -> str:
    """Render as e.g. ``2*e3 - e5`` or ``(1/2 + I)*u0``; zero is ``0``."""
    parts: list[str] = []
    unit = x.algebra.unit_index
    for k, c in x.support():
        label = x.algebra.labels[k]
        neg = False
        if c.im == 0:
            neg = c.re < 0
            mag = -c.re if neg else c.re
            coef = "" if mag == 1 and k != unit else str(mag)
        elif c.re == 0:
            neg = c.im < 0
            coef = str(GaussianRational(0, -c.im if neg else c.im))
        else:
            coef = f"({c})"
        if k == unit:
            term = coef or "1"
        else:
            term = f"{coef}*{label}" if coef else label
        if parts:
            parts.append(f"- {term}" if neg else f"+ {term}")
        else:
            parts.append(f"-{term}" if neg else term)
    return " ".join(parts) if parts else "0"


# operations


def mul(a: Element, b: Element) -> Element:
    """Bilinear extension of the product table."""
    a._check(b)
    alg = a.algebra
    acc = [ZERO] * alg.dim
    prod = alg._prod
    bsup = b.support()
    for i, ca in a.support():
        row = prod[i]
        for j, cb in bsup:
            entry = row[j]
            if not entry:
                continue
            cab = ca * cb
            for k, c in entry:
                if c is ONE or c == ONE:
                    acc[k] = acc[k] + cab
                elif c == MINUS_ONE:
                    acc[k] = acc[k] - cab
                else:
                    acc[k] = acc[k] + cab * c
    return Element(alg, tuple(acc))


def linear(a: Element, b: Element, alpha: ScalarLike, beta: ScalarLike) -> Element:
    a._check(b)
    return a * GaussianRational.coerce(alpha) + b * GaussianRational.coerce(beta)


def conjugate(a: Element) -> Element:
    alg = a.algebra
    acc = [ZERO] * alg.dim
    for i, c in a.support():
        for k, m in alg._conj[i]:
            acc[k] = acc[k] + c * m
    return Element(alg, tuple(acc))


def norm(a: Element) -> Element:
    """``a * conjugate(a)`` as an element (not reduced to a scalar)."""
    return mul(a, conjugate(a))


def scalar_part(x: Element) -> GaussianRational:
    """Return ``s`` with ``x == s * 1``; raise if ``x`` is not a multiple of 1."""
    alg = x.algebra
    unit = alg._unit
    pivot = next(k for k, c in enumerate(unit) if c)
    s = x.coeffs[pivot] / unit[pivot]
    if alg.one() * s != x:
        residue = x - alg.one() * s
        k, c = residue.support()[0]
        raise AlgebraError(
            f"not a scalar in {alg.name}: component {alg.labels[k]} = {c} (value {x})"
        )
    return s


def quadratic_form(a: Element) -> GaussianRational:
    """Unit component of ``a * conjugate(a)``."""
    return scalar_part(norm(a))


def commutator(a: Element, b: Element) -> Element:
    return mul(a, b) - mul(b, a)


def anticommutator(a: Element, b: Element) -> Element:
    return mul(a, b) + mul(b, a)


def associator(a: Element, b: Element, c: Element) -> Element:
    """``(ab)c - a(bc)``."""
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def jordan_product(a: Element, b: Element) -> Element:
    return anticommutator(a, b) * HALF


def nonassoc_commutator(g: Element, h1: Element, h2: Element) -> Element:
    """``(g h1) h2 - h1 (h2 g)``, grouped exactly so."""
    return mul(mul(g, h1), h2) - mul(h1, mul(h2, g))


# basis change


def invert_matrix(m: Sequence[Sequence[ScalarLike]]) -> list[list[GaussianRational]]:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(m)
    a = [[GaussianRational.coerce(v) for v in row] + [ONE if i == j else ZERO for j in range(n)]
         for i, row in enumerate(m)]
    if any(len(row) != 2 * n for row in a):
        raise AlgebraError("matrix is not square")
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise AlgebraError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def change_basis(
    alg: Algebra,
    matrix: Sequence[Sequence[ScalarLike]],
    new_labels: Sequence[str],
    name: str | None = None,
) -> Algebra:
    """Re-express ``alg`` in the basis ``f_A = sum_B matrix[A][B] * b_B``."""
    n = alg.dim
    if len(matrix) != n or any(len(r) != n for r in matrix) or len(new_labels) != n:
        raise AlgebraError(f"basis change needs a {n}x{n} matrix and {n} labels")
    m = [[GaussianRational.coerce(v) for v in row] for row in matrix]
    minv = invert_matrix(m)
    f = [alg.element(row) for row in m]

    def coords(x: Element) -> list[GaussianRational]:
        # x = sum_B v_B b_B = sum_A w_A f_A  =>  w = v M^-1
        out = []
        for a_ in range(n):
            s = ZERO
            for b, v in x.support():
                if minv[b][a_]:
                    s = s + v * minv[b][a_]
            out.append(s)
        return out

    table = [[coords(mul(f[a], f[b])) for b in range(n)] for a in range(n)]
    unit = coords(alg.one())
    conj = [coords(conjugate(f[a])) for a in range(n)]
    return Algebra(name or alg.name, new_labels, table, unit, conj)


def subalgebra(alg: Algebra, labels: Iterable[str | int], name: str) -> Algebra:
    """Restrict to a span of basis elements; raises unless it is closed."""
    idx = [alg.index(lab) for lab in labels]
    pos = {k: p for p, k in enumerate(idx)}

    def restrict(x: Element, what: str) -> list[GaussianRational]:
        for k, _ in x.support():
            if k not in pos:
                raise AlgebraError(f"{what} leaves the span ({alg.labels[k]} appears)")
        return [x.coeffs[k] for k in idx]

    table = [
        [restrict(alg.product_of_basis(a, b), f"{alg.labels[a]}*{alg.labels[b]}") for b in idx]
        for a in idx
    ]
    unit = restrict(alg.one(), "unit")
    conj = [restrict(conjugate(alg.basis(a)), f"conjugate({alg.labels[a]})") for a in idx]
    return Algebra(name, [alg.labels[k] for k in idx], table, unit, conj)
