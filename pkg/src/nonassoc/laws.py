"""Exhaustive checks of algebraic laws on basis tuples.

Every universal identity here is multilinear, so checking it on all tuples
of basis elements proves it for the whole algebra.  Failures are reported,
never raised.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .algebra import (
    Algebra,
    AlgebraError,
    Element,
    associator,
    commutator,
    mul,
    nonassoc_commutator,
    norm,
)
from .scalars import ONE, GaussianRational

MAX_WITNESSES = 10
MULTILINEAR_NOTE = "basis-exhaustive, multilinear-complete"


@dataclass(frozen=True)
class Witness:
    inputs: tuple[str, ...]
    lhs: Any
    rhs: Any
    key: tuple = ()

    def to_dict(self) -> dict:
        return {"inputs": list(self.inputs), "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass
class LawReport:
    law_id: str
    algebra: str
    status: str
    cases_checked: int
    witnesses: list[Witness] = field(default_factory=list)
    failures: int = 0
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "law_id": self.law_id,
            "algebra": self.algebra,
            "status": self.status,
            "cases_checked": self.cases_checked,
            "failures": self.failures,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "notes": list(self.notes),
        }
        if timing:
            d["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, ensure_ascii=False) + "\n"


class _Collector:
    """Counts cases and keeps the first ``limit`` witnesses in index order."""

    def __init__(self, law_id: str, algebra: str, limit: int):
        self.law_id = law_id
        self.algebra = algebra
        self.limit = limit
        self.cases = 0
        self.failures = 0
        self.witnesses: list[Witness] = []
        self.notes: list[str] = []
        self.t0 = time.perf_counter()

    def check(self, ok: bool, key: tuple, inputs: Sequence[str], lhs, rhs) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            self.witnesses.append(Witness(tuple(inputs), lhs, rhs, key))

    def report(self) -> LawReport:
        ws = sorted(self.witnesses, key=lambda w: w.key)[: self.limit]
        return LawReport(
            law_id=self.law_id,
            algebra=self.algebra,
            status="fail" if self.failures else "pass",
            cases_checked=self.cases,
            witnesses=ws,
            failures=self.failures,
            elapsed=time.perf_counter() - self.t0,
            notes=self.notes,
        )


def merge_reports(law_id: str, reports: Sequence[LawReport], limit: int = MAX_WITNESSES) -> LawReport:
    """Combine reports of one law over several parameter choices."""
    if not reports:
        raise ValueError("nothing to merge")
    witnesses = [w for r in reports for w in r.witnesses]
    failures = sum(r.failures for r in reports)
    notes: list[str] = []
    for r in reports:
        notes.extend(n for n in r.notes if n not in notes)
    return LawReport(
        law_id=law_id,
        algebra=reports[0].algebra,
        status="fail" if failures else "pass",
        cases_checked=sum(r.cases_checked for r in reports),
        witnesses=witnesses[:limit],
        failures=failures,
        elapsed=sum(r.elapsed for r in reports),
        notes=notes,
    )


# identities


LAWS = ("flexible", "lie_admissible", "alternative", "composition")


def check_identity(
    alg: Algebra,
    law: str,
    *,
    max_witnesses: int = MAX_WITNESSES,
    samples: int = 1000,
    seed: int = 0,
) -> LawReport:
    """Check one of :data:`LAWS` on ``alg``.

    ``flexible``: ``(x,y,z) + (z,y,x) = 0`` on all basis triples.
    ``lie_admissible``: the Jacobi sum of commutators vanishes on all triples.
    ``alternative``: ``(x,x,y) = (y,x,x) = 0`` on all pairs and both
    linearizations ``(x,y,z) + (y,x,z) = 0``, ``(x,y,z) + (x,z,y) = 0`` on
    all triples.
    ``composition``: ``N(xy) = N(x) N(y)`` with ``N(x) = x * conj(x)`` on
    ``samples`` random element pairs.
    """
    if law not in LAWS:
        raise ValueError(f"unknown law {law!r}; choose from {', '.join(LAWS)}")
    col = _Collector(law, alg.name, max_witnesses)
    basis = alg.basis_elements()
    labels = alg.labels
    zero = alg.zero()
    n = alg.dim

    if law == "flexible":
        col.notes.append(MULTILINEAR_NOTE)
        for a, b, c in itertools.product(range(n), repeat=3):
            x, y, z = basis[a], basis[b], basis[c]
            lhs = associator(x, y, z)
            rhs = -associator(z, y, x)
            col.check(lhs == rhs, (a, b, c), (labels[a], labels[b], labels[c]), lhs, rhs)
    elif law == "lie_admissible":
        col.notes.append(MULTILINEAR_NOTE)
        comm = [[commutator(basis[a], basis[b]) for b in range(n)] for a in range(n)]
        for a, b, c in itertools.product(range(n), repeat=3):
            x, y, z = basis[a], basis[b], basis[c]
            lhs = commutator(comm[a][b], z) + commutator(comm[c][a], y) + commutator(comm[b][c], x)
            col.check(lhs.is_zero(), (a, b, c), (labels[a], labels[b], labels[c]), lhs, zero)
    elif law == "alternative":
        col.notes.append(MULTILINEAR_NOTE)
        for a, b in itertools.product(range(n), repeat=2):
            x, y = basis[a], basis[b]
            left = associator(x, x, y)
            col.check(left.is_zero(), (0, a, b), ("left", labels[a], labels[b]), left, zero)
            right = associator(y, x, x)
            col.check(right.is_zero(), (1, a, b), ("right", labels[a], labels[b]), right, zero)
        for a, b, c in itertools.product(range(n), repeat=3):
            x, y, z = basis[a], basis[b], basis[c]
            xyz = associator(x, y, z)
            lhs = xyz + associator(y, x, z)
            col.check(lhs.is_zero(), (2, a, b, c), ("left-linear", labels[a], labels[b], labels[c]), lhs, zero)
            lhs = xyz + associator(x, z, y)
            col.check(lhs.is_zero(), (3, a, b, c), ("right-linear", labels[a], labels[b], labels[c]), lhs, zero)
    else:
        col.notes.append(f"randomized: {samples} pairs, seed {seed}")
        if alg.name == "sedenion":
            col.notes.append("derived convention: conjugation fixes 1 and i0, negates the rest")
        rng = random.Random(seed)
        for s in range(samples):
            x = random_element(alg, rng)
            y = random_element(alg, rng)
            lhs = norm(mul(x, y))
            rhs = mul(norm(x), norm(y))
            col.check(lhs == rhs, (s,), (f"sample {s}: x = {x}", f"y = {y}"), lhs, rhs)
    return col.report()


def random_element(alg: Algebra, rng: random.Random, max_num: int = 3, dens: Sequence[int] = (1, 2, 3)) -> Element:
    """Random element with small Gaussian-rational coefficients."""
    def part() -> Fraction:
        return Fraction(rng.randint(-max_num, max_num), rng.choice(dens))

    return alg.element([GaussianRational(part(), part()) for _ in range(alg.dim)])


# subalgebras and Leibniz


@dataclass(frozen=True)
class SubalgebraSpec:
    algebra: str
    indices: tuple[int, ...]

    @classmethod
    def of(cls, alg: Algebra, labels: Iterable[str | int]) -> SubalgebraSpec:
        return cls(alg.name, tuple(alg.index(lab) for lab in labels))


def _span_residue(x: Element, indices: set[int]) -> Element:
    """Part of ``x`` outside the span of the given basis elements."""
    return Element(x.algebra, tuple(c if k not in indices else c * 0 for k, c in enumerate(x.coeffs)))


def check_subalgebra(alg: Algebra, indices: Iterable[str | int], *, max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Pass iff the span of the given basis elements is closed under products.

    Witnesses are escaping products; ``rhs`` is the component outside the span.
    """
    idx = [alg.index(k) for k in indices]
    if not idx:
        raise ValueError("subalgebra needs at least one basis element")
    span = set(idx)
    col = _Collector("subalgebra", alg.name, max_witnesses)
    col.notes.append("span: " + ", ".join(alg.labels[k] for k in idx))
    if _span_residue(alg.one(), span):
        col.notes.append("unit is not in the span")
        col.failures += 1
    for a in idx:
        for b in idx:
            p = alg.product_of_basis(a, b)
            out = _span_residue(p, span)
            col.check(out.is_zero(), (a, b), (alg.labels[a], alg.labels[b]), p, out)
    return col.report()


def check_leibniz(
    alg: Algebra,
    sub: SubalgebraSpec | Iterable[str | int],
    h1: Element,
    h2: Element,
    *,
    elements: Iterable[str | int] | None = None,
    max_witnesses: int = MAX_WITNESSES,
) -> LawReport:
    """Check ``[ab; h1, h2] = a[b; h1, h2] + [a; h1, h2]b`` for basis pairs of ``sub``.

    ``elements`` narrows the pairs to a subset of the subalgebra basis.
    """
    if isinstance(sub, SubalgebraSpec):
        if sub.algebra != alg.name:
            raise AlgebraError(f"subalgebra of {sub.algebra} used with {alg.name}")
        idx = list(sub.indices)
    else:
        idx = [alg.index(k) for k in sub]
    closure = check_subalgebra(alg, idx)
    if not closure.passed:
        w = closure.witnesses[0] if closure.witnesses else None
        detail = f": {w.inputs[0]}*{w.inputs[1]} = {w.lhs}" if w else ""
        raise AlgebraError(f"subalgebra is not closed{detail}")
    domain = idx if elements is None else [alg.index(k) for k in elements]
    if not set(domain) <= set(idx):
        raise AlgebraError("leibniz domain must lie inside the subalgebra")
    col = _Collector("leibniz", alg.name, max_witnesses)
    col.notes.append(MULTILINEAR_NOTE if elements is None else "restricted domain")
    col.notes.append(f"h1 = {h1}, h2 = {h2}")
    nc = {k: nonassoc_commutator(alg.basis(k), h1, h2) for k in domain}
    for a in domain:
        for b in domain:
            x, y = alg.basis(a), alg.basis(b)
            lhs = nonassoc_commutator(mul(x, y), h1, h2)
            rhs = mul(x, nc[b]) + mul(nc[a], y)
            col.check(lhs == rhs, (a, b), (alg.labels[a], alg.labels[b], str(h1), str(h2)), lhs, rhs)
    return col.report()


# zero divisors


def zero_divisor_scan(alg: Algebra, depth: int = 2, *, max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Search products of signed sums of up to ``depth`` basis elements for zero.

    Overall signs are fixed (first coefficient +1), since ``xy = 0`` is
    unchanged by negating either factor.  The report passes when no zero
    divisor is found.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    cands: list[tuple[tuple, str, Element]] = []
    basis = alg.basis_elements()
    for size in range(1, depth + 1):
        for combo in itertools.combinations(range(alg.dim), size):
            for signs in itertools.product((1, -1), repeat=size - 1):
                x = basis[combo[0]]
                text = alg.labels[combo[0]]
                for k, s in zip(combo[1:], signs):
                    x = x + basis[k] if s > 0 else x - basis[k]
                    text += ("+" if s > 0 else "-") + alg.labels[k]
                cands.append(((size, combo, signs), text, x))
    col = _Collector("zero_divisors", alg.name, max_witnesses)
    col.notes.append(f"signed sums of up to {depth} basis elements")
    zero = alg.zero()
    for (ka, ta, x), (kb, tb, y) in itertools.product(cands, repeat=2):
        p = mul(x, y)
        col.check(not p.is_zero(), (ka, kb), (ta, tb), p, zero)
    return col.report()


# comparing algebras


SignedMap = Sequence[tuple[int, int]]


def _apply_map(x: Element, target: Algebra, mapping: SignedMap) -> Element:
    vec = [GaussianRational(0)] * target.dim
    for k, c in x.support():
        sign, j = mapping[k]
        vec[j] = vec[j] + (c if sign > 0 else -c)
    return Element(target, tuple(vec))


def parse_signed_map(a: Algebra, b: Algebra, mapping) -> list[tuple[int, int]]:
    """Accept ``None`` (identity by position), a list of ``(sign, index)`` or a
    dict ``label -> "-label"``."""
    if a.dim != b.dim:
        raise AlgebraError(f"dimension mismatch: {a.name} has {a.dim}, {b.name} has {b.dim}")
    if mapping is None:
        return [(1, k) for k in range(a.dim)]
    if isinstance(mapping, dict):
        out = [None] * a.dim
        for src, dst in mapping.items():
            sign, lab = (-1, dst[1:]) if dst.startswith("-") else (1, dst)
            out[a.index(src)] = (sign, b.index(lab))
        if any(v is None for v in out):
            raise AlgebraError("basis map does not cover every basis element")
        return out
    out = [(int(s), b.index(j)) for s, j in mapping]
    if len(out) != a.dim:
        raise AlgebraError("basis map has wrong length")
    return out


def compare_algebras(a: Algebra, b: Algebra, mapping=None, *, max_witnesses: int = MAX_WITNESSES) -> LawReport:
    """Pass iff the signed basis map ``a -> b`` carries every product of ``a``
    onto the corresponding product of ``b``."""
    m = parse_signed_map(a, b, mapping)
    if sorted(j for _, j in m) != list(range(b.dim)):
        raise AlgebraError("basis map is not a bijection")
    col = _Collector(f"isomorphic:{b.name}", a.name, max_witnesses)
    images = [_apply_map(a.basis(k), b, m) for k in range(a.dim)]
    for x, y in itertools.product(range(a.dim), repeat=2):
        lhs = _apply_map(a.product_of_basis(x, y), b, m)
        rhs = mul(images[x], images[y])
        col.check(lhs == rhs, (x, y), (a.labels[x], a.labels[y]), lhs, rhs)
    return col.report()


def search_sign_maps(
    a: Algebra,
    b: Algebra,
    base: SignedMap,
    free: Sequence[int],
) -> tuple[list[tuple[int, ...]], int]:
    """Try every sign flip of the basis elements ``free`` (indices of ``a``).

    Returns the sign vectors (aligned with ``free``) under which
    :func:`compare_algebras` passes, and the number of candidates tried.
    """
    base = list(base)
    hits = []
    tried = 0
    for signs in itertools.product((1, -1), repeat=len(free)):
        m = list(base)
        for k, s in zip(free, signs):
            m[k] = (m[k][0] * s, m[k][1])
        tried += 1
        if _map_is_homomorphism(a, b, m):
            hits.append(signs)
    return hits, tried


def _map_is_homomorphism(a: Algebra, b: Algebra, m: SignedMap) -> bool:
    images = [_apply_map(a.basis(k), b, m) for k in range(a.dim)]
    for x, y in itertools.product(range(a.dim), repeat=2):
        if _apply_map(a.product_of_basis(x, y), b, m) != mul(images[x], images[y]):
            return False
    return True


def find_signed_isomorphism(a: Algebra, b: Algebra) -> list[tuple[int, int]] | None:
    """Backtracking search for a signed permutation ``a -> b`` fixing the unit.

    Products are checked as soon as both factors and the basis element of
    the product have been assigned, which prunes the 7!*2^7 octonion maps
    to a few thousand nodes.
    """
    if a.dim != b.dim:
        raise AlgebraError(f"dimension mismatch: {a.name} has {a.dim}, {b.name} has {b.dim}")
    if a.unit_index is None or b.unit_index is None:
        raise AlgebraError("signed isomorphism search needs a unit basis element in both algebras")
    n = a.dim
    single = {}
    for x in range(n):
        for y in range(n):
            sup = a.product_of_basis(x, y).support()
            if len(sup) == 1 and sup[0][1] in (ONE, -ONE):
                single[(x, y)] = (1 if sup[0][1] == ONE else -1, sup[0][0])
    order = [k for k in range(n) if k != a.unit_index]
    m: dict[int, tuple[int, int]] = {a.unit_index: (1, b.unit_index)}
    used = {b.unit_index}

    def consistent() -> bool:
        for x in m:
            for y in m:
                if (x, y) not in single:
                    return False
                s, z = single[(x, y)]
                if z not in m:
                    continue
                sx, ix = m[x]
                sy, iy = m[y]
                sz, iz = m[z]
                prod = b.product_of_basis(ix, iy) * (sx * sy)
                if prod != b.basis(iz) * (s * sz):
                    return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        k = order[pos]
        for j in range(n):
            if j in used:
                continue
            for s in (1, -1):
                m[k] = (s, j)
                used.add(j)
                if consistent() and extend(pos + 1):
                    return True
                used.discard(j)
                del m[k]
        return False

    if not extend(0):
        return None
    return [m[k] for k in range(n)]
