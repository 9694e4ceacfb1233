"""The five built-in algebras.

* ``octonion``: generated from the seven structure-constant triples plus
  total antisymmetry and ``e_A^2 = -1``.
* ``split_octonion``: the ``u0, u0*, u_i, u_i*`` table, typed in rule by rule.
* ``sedenion``: the 16-dimensional alternative algebra (complexified
  octonions, not the Cayley-Dickson sedenions) read from
  ``data/sedenion_table.txt`` (basis ``1, i1..i7, i0, eps1..eps7``).
* ``quaternion`` and ``biquaternion``: closed subalgebras of the sedenions.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .algebra import Algebra, AlgebraError, from_products, subalgebra
from .scalars import HALF, I, ONE, ZERO, GaussianRational

OCTONION_TRIPLES = ((1, 2, 3), (5, 1, 6), (6, 2, 4), (4, 3, 5), (4, 7, 1), (6, 7, 3), (5, 7, 2))

OCTONION_LABELS = ("1",) + tuple(f"e{n}" for n in range(1, 8))
SPLIT_OCTONION_LABELS = ("u0", "u0c", "u1", "u2", "u3", "u1c", "u2c", "u3c")
SEDENION_LABELS = (
    ("1",) + tuple(f"i{n}" for n in range(1, 8)) + ("i0",) + tuple(f"eps{n}" for n in range(1, 8))
)
QUATERNION_LABELS = ("1", "i1", "i2", "i3")
BIQUATERNION_LABELS = ("1", "i0", "i1", "i2", "i3", "eps1", "eps2", "eps3")

NAMES = ("quaternion", "octonion", "split_octonion", "biquaternion", "sedenion")


def octonion_structure_constants() -> dict[tuple[int, int], tuple[int, int]]:
    """Map ``(A, B) -> (C, sign)`` with ``e_A e_B = sign * e_C`` for A != B."""
    out: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b, c in OCTONION_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for key, val in (((x, y), (z, 1)), ((y, x), (z, -1))):
                if out.setdefault(key, val) != val:
                    raise AlgebraError(f"inconsistent octonion triples at e{key[0]}e{key[1]}")
    return out


def _octonion() -> Algebra:
    products: dict[tuple[str, str], dict[str, int]] = {}
    for a in OCTONION_LABELS:
        products[("1", a)] = {a: 1}
        products[(a, "1")] = {a: 1}
    for n in range(1, 8):
        products[(f"e{n}", f"e{n}")] = {"1": -1}
    consts = octonion_structure_constants()
    if len(consts) != 42:
        raise AlgebraError("octonion triples do not cover all 42 off-diagonal products")
    for (a, b), (c, sign) in consts.items():
        products[(f"e{a}", f"e{b}")] = {f"e{c}": sign}
    return from_products("octonion", OCTONION_LABELS, products, "1")


_LEVI_CIVITA = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (2, 1, 3): -1, (1, 3, 2): -1, (3, 2, 1): -1}


def _split_octonion() -> Algebra:
    p: dict[tuple[str, str], dict[str, int]] = {}
    for (i, j, k), s in _LEVI_CIVITA.items():
        p[(f"u{i}", f"u{j}")] = {f"u{k}c": s}
        p[(f"u{i}c", f"u{j}c")] = {f"u{k}": s}
    for i in (1, 2, 3):
        ui, uic = f"u{i}", f"u{i}c"
        p[(ui, uic)] = {"u0": -1}
        p[(uic, ui)] = {"u0c": -1}
        p[(ui, "u0c")] = {ui: 1}
        p[(uic, "u0")] = {uic: 1}
        p[("u0", ui)] = {ui: 1}
        p[("u0c", uic)] = {uic: 1}
        # u_i u0 = u_i* u0* = u0* u_i = u0 u_i* = 0
    p[("u0", "u0")] = {"u0": 1}
    p[("u0c", "u0c")] = {"u0c": 1}
    conj = {"u0": {"u0c": 1}, "u0c": {"u0": 1}}
    for lab in SPLIT_OCTONION_LABELS[2:]:
        conj[lab] = {lab: -1}
    return from_products(
        "split_octonion", SPLIT_OCTONION_LABELS, p, {"u0": 1, "u0c": 1}, conjugation=conj
    )


def read_sedenion_table() -> list[list[tuple[int, str]]]:
    """Parse the data file into ``rows[a][b] = (sign, label)`` in file order."""
    text = resources.files("nonassoc").joinpath("data/sedenion_table.txt").read_text("utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    header = lines[0].split()
    if header[0] != "*" or tuple(header[1:]) != SEDENION_LABELS:
        raise AlgebraError("sedenion table header does not match the expected basis order")
    rows = []
    for ln, label in zip(lines[1:], SEDENION_LABELS):
        cells = ln.split()
        if cells[0] != label or len(cells) != 17:
            raise AlgebraError(f"bad sedenion table row for {label}: {ln!r}")
        row = []
        for cell in cells[1:]:
            sign, lab = (-1, cell[1:]) if cell.startswith("-") else (1, cell)
            if lab not in SEDENION_LABELS:
                raise AlgebraError(f"unknown symbol {cell!r} in sedenion table")
            row.append((sign, lab))
        rows.append(row)
    if len(rows) != 16:
        raise AlgebraError("sedenion table must have 16 rows")
    return rows


def _sedenion() -> Algebra:
    rows = read_sedenion_table()
    products = {
        (a, b): {lab: sign}
        for a, row in zip(SEDENION_LABELS, rows)
        for b, (sign, lab) in zip(SEDENION_LABELS, row)
    }
    # i0 plays the role of the complex unit of C (x) O and is left fixed.
    conj = {lab: {lab: 1 if lab in ("1", "i0") else -1} for lab in SEDENION_LABELS}
    return from_products("sedenion", SEDENION_LABELS, products, "1", conjugation=conj)


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> Algebra:
    """Return the shared, immutable instance of a built-in algebra."""
    if name == "octonion":
        return _octonion()
    if name == "split_octonion":
        return _split_octonion()
    if name == "sedenion":
        return _sedenion()
    if name == "quaternion":
        return subalgebra(builtin_algebra("sedenion"), QUATERNION_LABELS, "quaternion")
    if name == "biquaternion":
        return subalgebra(builtin_algebra("sedenion"), BIQUATERNION_LABELS, "biquaternion")
    raise AlgebraError(f"unknown algebra {name!r}; choose from {', '.join(NAMES)}")


def split_basis_matrix() -> list[list[GaussianRational]]:
    """Rows express u0, u0*, u_i, u_i* in the octonion basis ``1, e1..e7``.

    ``u_i = (e_i + i e_{i+3})/2``, ``u_i* = (e_i - i e_{i+3})/2``,
    ``u0 = (1 + i e7)/2``, ``u0* = (1 - i e7)/2``.
    """
    half_i = HALF * I

    def row(entries: dict[int, GaussianRational]) -> list[GaussianRational]:
        r = [ZERO] * 8
        for k, c in entries.items():
            r[k] = c
        return r

    rows = [row({0: HALF, 7: half_i}), row({0: HALF, 7: -half_i})]
    rows += [row({i: HALF, i + 3: half_i}) for i in (1, 2, 3)]
    rows += [row({i: HALF, i + 3: -half_i}) for i in (1, 2, 3)]
    return rows


def complex_octonion(octonions: Algebra | None = None, name: str = "complex_octonion") -> Algebra:
    """Tensor product C (x) O with basis ``1, e_n, j, j*e_n`` (``j^2 = -1``, central).

    ``j`` is a basis element, not the scalar ``I``, so the result is a
    16-dimensional algebra with real structure constants.
    """
    o = octonions or builtin_algebra("octonion")
    if o.unit_index is None:
        raise AlgebraError("complex_octonion needs an octonion basis containing 1")
    imag = [lab for k, lab in enumerate(o.labels) if k != o.unit_index]
    labels = [o.labels[o.unit_index], *imag, "j", *(f"j*{lab}" for lab in imag)]
    n = o.dim
    lift = {}
    for k, lab in enumerate(o.labels):
        lift[(k, 0)] = lab
        lift[(k, 1)] = "j" if k == o.unit_index else f"j*{lab}"
    products: dict[tuple[str, str], dict[str, GaussianRational]] = {}
    for a in range(n):
        for b in range(n):
            ab = o.product_of_basis(a, b)
            for pa in (0, 1):
                for pb in (0, 1):
                    sign = -ONE if pa and pb else ONE
                    out: dict[str, GaussianRational] = {}
                    for k, c in ab.support():
                        out[lift[(k, pa ^ pb)]] = c * sign
                    products[(lift[(a, pa)], lift[(b, pb)])] = out
    conj = {}
    for k, lab in enumerate(o.labels):
        image = o.basis(k).conjugate()
        for part in (0, 1):
            conj[lift[(k, part)]] = {lift[(m, part)]: c for m, c in image.support()}
    return from_products(name, labels, products, labels[0], conjugation=conj)
