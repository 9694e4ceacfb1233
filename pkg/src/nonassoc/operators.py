"""Operators in Q_M (x) O: Weyl-algebra coefficients on split-octonion slots.

A :class:`TensorElement` maps each split-octonion basis label
(``u0, u0c, u1..u3, u1c..u3c``) to a :class:`WeylElement`.  The product
multiplies the operator parts in order and the octonion parts with the
split-octonion table, so it inherits nonassociativity from the second
factor only.
"""

from __future__ import annotations

import time
from typing import Mapping, Sequence

from .builtins import builtin_algebra
from .laws import LawReport, Witness, merge_reports
from .scalars import HALF, I, ONE, ZERO, GaussianRational, ScalarLike
from .weyl import WeylElement, weyl_commutator, weyl_mul

N_DIM = 3


def split_octonions():
    return builtin_algebra("split_octonion")


class TensorElement:
    """Immutable map ``slot label -> WeylElement``; missing slots are zero."""

    __slots__ = ("n", "_c")

    def __init__(self, components: Mapping[str, WeylElement] | None = None, n: int = N_DIM):
        alg = split_octonions()
        clean = {}
        for lab, w in (components or {}).items():
            alg.index(lab)
            if w.n != n:
                raise ValueError(f"component {lab} is {w.n}-dimensional, want {n}")
            if w:
                clean[lab] = w
        self.n = n
        self._c = clean

    @classmethod
    def of(cls, w: WeylElement, slot: str) -> TensorElement:
        return cls({slot: w}, n=w.n)

    @classmethod
    def unit(cls, w: WeylElement) -> TensorElement:
        """``w (x) 1`` with ``1 = u0 + u0*``."""
        return cls({"u0": w, "u0c": w}, n=w.n)

    def component(self, slot: str) -> WeylElement:
        split_octonions().index(slot)
        return self._c.get(slot, WeylElement.zero(self.n))

    def components(self) -> dict[str, WeylElement]:
        order = split_octonions().labels
        return {lab: self._c[lab] for lab in order if lab in self._c}

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def _combine(self, other: TensorElement, sign: int) -> TensorElement:
        if not isinstance(other, TensorElement):
            raise TypeError(f"expected TensorElement, got {type(other).__name__}")
        out = dict(self._c)
        for lab, w in other._c.items():
            base = out.get(lab, WeylElement.zero(self.n))
            out[lab] = base + w if sign > 0 else base - w
        return TensorElement(out, n=self.n)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return TensorElement({k: -w for k, w in self._c.items()}, n=self.n)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        c = GaussianRational.coerce(other)
        return TensorElement({k: w * c for k, w in self._c.items()}, n=self.n)

    def __rmul__(self, other):
        c = GaussianRational.coerce(other)
        return TensorElement({k: w * c for k, w in self._c.items()}, n=self.n)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __str__(self):
        parts = [f"({w})*{lab}" for lab, w in self.components().items()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TensorElement({self})"


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    """``(A (x) u)(B (x) v) = AB (x) uv``, extended bilinearly."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    alg = split_octonions()
    out: dict[str, WeylElement] = {}
    for u, wa in a._c.items():
        iu = alg.index(u)
        for v, wb in b._c.items():
            uv = alg.product_of_basis(iu, alg.index(v)).support()
            if not uv:
                continue
            prod = weyl_mul(wa, wb)
            for k, c in uv:
                lab = alg.labels[k]
                term = prod if c == ONE else prod * c
                out[lab] = out[lab] + term if lab in out else term
    return TensorElement(out, n=a.n)


def tensor_commutator(a: TensorElement, b: TensorElement) -> TensorElement:
    return tensor_mul(a, b) - tensor_mul(b, a)


def tensor_anticommutator(a: TensorElement, b: TensorElement) -> TensorElement:
    return tensor_mul(a, b) + tensor_mul(b, a)


def tensor_nonassoc_commutator(L: TensorElement, h1: TensorElement, h2: TensorElement) -> TensorElement:
    """``(L h1) h2 - h1 (h2 L)``."""
    return tensor_mul(tensor_mul(L, h1), h2) - tensor_mul(h1, tensor_mul(h2, L))


# the supersymmetric construction


def D(j: int, n: int = N_DIM) -> WeylElement:
    """``-p_j + i V_{,j}``."""
    return -WeylElement.p(n, j) + V_(j, n=n) * I


def Dbar(j: int, n: int = N_DIM) -> WeylElement:
    """``p_j + i V_{,j}``."""
    return WeylElement.p(n, j) + V_(j, n=n) * I


def V_(*js: int, n: int = N_DIM) -> WeylElement:
    """Derivative symbol ``V_{,j1 j2 ...}`` from 1-based indices."""
    mu = [0] * n
    for j in js:
        mu[j - 1] += 1
    return WeylElement.V(*mu)


def build_supercharges(n: int = N_DIM) -> tuple[TensorElement, TensorElement]:
    """``Q = sum_j D_j (x) u_j*`` and ``Qbar = sum_j Dbar_j (x) u_j``."""
    if n != 3:
        raise ValueError("the split-octonion supercharges need n = 3")
    Q = TensorElement({f"u{j}c": D(j, n) for j in (1, 2, 3)}, n=n)
    Qbar = TensorElement({f"u{j}": Dbar(j, n) for j in (1, 2, 3)}, n=n)
    return Q, Qbar


def hamiltonian_split(n: int = N_DIM) -> TensorElement:
    """``1/2 [p^2 + sum (V_{,j})^2] (x) 1 + 1/2 sum V_{,jj} (x) (u0* - u0)``."""
    kinetic = WeylElement.zero(n)
    lap = WeylElement.zero(n)
    for j in range(1, n + 1):
        kinetic = kinetic + WeylElement.p(n, j, 2) + weyl_mul(V_(j, n=n), V_(j, n=n))
        lap = lap + V_(j, j, n=n)
    kinetic = kinetic * HALF
    lap = lap * HALF
    return TensorElement({"u0": kinetic - lap, "u0c": kinetic + lap}, n=n)


def embed(L0: WeylElement, L0star: WeylElement | None = None) -> TensorElement:
    """``L0 u0 + L0* u0*``; ``L0*`` defaults to ``L0``."""
    return TensorElement({"u0": L0, "u0c": L0 if L0star is None else L0star}, n=L0.n)


def commutator_form_rhs(L0: WeylElement, L0star: WeylElement | None = None) -> TensorElement:
    """``sum_j [D_j Dbar_j, L0*] u0* + [Dbar_j D_j, L0] u0``."""
    n = L0.n
    L0star = L0 if L0star is None else L0star
    a = WeylElement.zero(n)
    b = WeylElement.zero(n)
    for j in range(1, n + 1):
        a = a + weyl_commutator(weyl_mul(D(j, n), Dbar(j, n)), L0star)
        b = b + weyl_commutator(weyl_mul(Dbar(j, n), D(j, n)), L0)
    return TensorElement({"u0c": a, "u0": b}, n=n)


DEFAULT_CATALOG_TEXT = ("1", "x1", "p1", "x1*p1", "V[1,0,0]")


def default_catalog() -> list[WeylElement]:
    from .weyl import parse_weyl

    return [parse_weyl(t, N_DIM) for t in DEFAULT_CATALOG_TEXT]


CONVENTIONS = ("printed", "h1h2")


def example1_checks(
    catalog: Sequence[WeylElement],
    hamiltonian: TensorElement | None = None,
    convention: str = "printed",
) -> dict[str, LawReport]:
    """Run every Example-1 identity and return one report per identity.

    ``convention`` selects the Hamilton-equation comparison:
    ``printed`` checks ``[L, H] = [L; h, h]``; ``h1h2`` checks
    ``[L, h1 h2] = [L; h, h]``, i.e. ``2 [L, H]`` with ``H = (1/2) h1 h2``.
    """
    if not catalog:
        raise ValueError("catalog must not be empty")
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    Q, Qbar = build_supercharges()
    H = hamiltonian if hamiltonian is not None else hamiltonian_split()
    h = Q + Qbar
    zero = TensorElement()
    texts = [str(w) for w in catalog]
    reports: dict[str, LawReport] = {}

    def run(name: str, cases):
        t0 = time.perf_counter()
        witnesses, count, fails = [], 0, 0
        for key, inputs, lhs, rhs in cases:
            count += 1
            if lhs != rhs:
                fails += 1
                witnesses.append(Witness(tuple(inputs), lhs, rhs, key))
        witnesses.sort(key=lambda w: w.key)
        reports[name] = LawReport(
            law_id=f"example1.{name}",
            algebra="Q_M(x)split_octonion",
            status="fail" if fails else "pass",
            cases_checked=count,
            witnesses=witnesses[:10],
            failures=fails,
            elapsed=time.perf_counter() - t0,
            notes=["exact normal-form identity"],
        )

    def nilpotent():
        yield (0,), ("{Q,Q}",), tensor_anticommutator(Q, Q), zero
        yield (1,), ("{Qbar,Qbar}",), tensor_anticommutator(Qbar, Qbar), zero

    def hamiltonian_cases():
        half_square = tensor_mul(h, h) * HALF
        half_anti = tensor_anticommutator(Qbar, Q) * HALF
        yield (0,), ("(1/2)(Q+Qbar)^2", "H"), half_square, H
        yield (1,), ("(1/2){Qbar,Q}", "H"), half_anti, H

    run("nilpotency", nilpotent())
    run("hamiltonian_split", hamiltonian_cases())

    cache = {}

    def nc(L: TensorElement, key) -> TensorElement:
        if key not in cache:
            cache[key] = tensor_nonassoc_commutator(L, h, h)
        return cache[key]

    def vanishing():
        for k, L0 in enumerate(catalog):
            L = embed(L0)
            yield (k, 0), ("[L;Q,Q]", texts[k]), tensor_nonassoc_commutator(L, Q, Q), zero
            yield (k, 1), ("[L;Qbar,Qbar]", texts[k]), tensor_nonassoc_commutator(L, Qbar, Qbar), zero

    def commutator_form():
        for k, L0 in enumerate(catalog):
            L = embed(L0)
            full = nc(L, k)
            split = tensor_nonassoc_commutator(L, Q, Qbar) + tensor_nonassoc_commutator(L, Qbar, Q)
            yield (k, 0), ("[L;h,h] = [L;Q,Qbar] + [L;Qbar,Q]", texts[k]), full, split
            yield (k, 1), ("[L;h,h] = commutator form", texts[k]), full, commutator_form_rhs(L0)

    def leibniz():
        for a, A0 in enumerate(catalog):
            for b, B0 in enumerate(catalog):
                A, B = embed(A0), embed(B0)
                AB = tensor_mul(A, B)
                lhs = tensor_nonassoc_commutator(AB, h, h)
                rhs = tensor_mul(A, nc(B, b)) + tensor_mul(nc(A, a), B)
                yield (a, b), ("[AB;h,h]", texts[a], texts[b]), lhs, rhs

    def hamilton():
        for k, L0 in enumerate(catalog):
            L = embed(L0)
            lhs = tensor_commutator(L, H)
            if convention == "h1h2":
                lhs = lhs * 2
            yield (k,), ("[L,H]" if convention == "printed" else "[L,h1h2]", texts[k]), lhs, nc(L, k)

    run("vanishing", vanishing())
    run("commutator_form", commutator_form())
    run("leibniz", leibniz())
    run(f"hamilton_{convention}", hamilton())
    return reports


def verify_example1(
    catalog: Sequence[WeylElement],
    hamiltonian: TensorElement | None = None,
    convention: str = "printed",
) -> LawReport:
    """All Example-1 identities folded into one report."""
    reports = example1_checks(catalog, hamiltonian, convention)
    merged = merge_reports("example1", list(reports.values()))
    merged.notes.append(f"hamilton convention: {convention}")
    return merged


def corrupted_hamiltonian() -> TensorElement:
    """``hamiltonian_split`` with the sign of the ``V_{,jj}`` term flipped."""
    H = hamiltonian_split()
    return TensorElement({"u0": H.component("u0c"), "u0c": H.component("u0")})


def scalar_tensor(c: ScalarLike, n: int = N_DIM) -> TensorElement:
    return TensorElement.unit(WeylElement.scalar(n, c))


__all__ = [
    "TensorElement",
    "tensor_mul",
    "tensor_commutator",
    "tensor_anticommutator",
    "tensor_nonassoc_commutator",
    "build_supercharges",
    "hamiltonian_split",
    "embed",
    "commutator_form_rhs",
    "example1_checks",
    "verify_example1",
    "default_catalog",
    "corrupted_hamiltonian",
    "D",
    "Dbar",
    "V_",
    "ZERO",
]
