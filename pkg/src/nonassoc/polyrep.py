"""Differential-operator representation used to cross-check the rewrite engine.

Each operator acts on polynomials in ``x1..xn`` with a concrete potential
substituted for the ``V`` symbols and ``p_j = -i d/dx_j``.  Products are
formed by composing actions, never by normal ordering, so agreement with
:mod:`nonassoc.weyl` is an independent confirmation.

Polynomials are small sparse dicts over Gaussian rationals; sympy is only
used to differentiate the concrete potential.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy as sp

from .builtins import builtin_algebra
from .scalars import HALF, GaussianRational
from .weyl import WeylElement


class Poly:
    """Sparse polynomial ``{exponent tuple: GaussianRational}``; hashable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], GaussianRational] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._hash = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return Poly(out)

    def scale(self, c: GaussianRational) -> Poly:
        return Poly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        out: dict[tuple[int, ...], GaussianRational] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out[k] + v1 * v2 if k in out else v1 * v2
        return Poly(out)

    def diff(self, j: int, times: int = 1) -> Poly:
        out = {}
        for k, v in self.terms.items():
            e = k[j]
            if e < times:
                continue
            factor = 1
            for t in range(times):
                factor *= e - t
            k2 = list(k)
            k2[j] -= times
            out[tuple(k2)] = v * factor
        return Poly(out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            mono = "*".join(f"x{j + 1}^{e}" if e > 1 else f"x{j + 1}" for j, e in enumerate(k) if e)
            parts.append(f"({v})*{mono}" if mono else f"({v})")
        return " + ".join(parts)


def from_sympy(expr, gens) -> Poly:
    p = sp.Poly(expr, *gens, domain="QQ_I")
    out = {}
    for exps, c in p.terms():
        re, im = sp.re(c), sp.im(c)
        out[tuple(exps)] = GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return Poly(out)


class PolyRep:
    """Acts with :class:`WeylElement` s on polynomials, given a concrete V."""

    def __init__(self, potential: str | sp.Expr, n: int, max_test_degree: int = 4):
        self.n = n
        gens = sp.symbols(" ".join(f"x{j}" for j in range(1, n + 1)))
        self.gens = gens if isinstance(gens, tuple) else (gens,)
        self.V = sp.sympify(potential, locals={str(g): g for g in self.gens})
        self._dV: dict[tuple[int, ...], Poly] = {}
        self._cache: dict = {}
        self.test_polys = [
            Poly({exps: GaussianRational(1)})
            for exps in itertools.product(range(max_test_degree + 1), repeat=n)
            if sum(exps) <= max_test_degree
        ]

    def derivative_of_V(self, mu: tuple[int, ...]) -> Poly:
        """Exact partial derivative of the concrete potential (via sympy)."""
        if mu not in self._dV:
            expr = self.V
            for g, k in zip(self.gens, mu):
                if k:
                    expr = sp.diff(expr, g, k)
            self._dV[mu] = from_sympy(expr, self.gens)
        return self._dV[mu]

    def act(self, w: WeylElement, f: Poly) -> Poly:
        """Apply a normal-ordered operator: differentiate, then multiply."""
        if w.n != self.n:
            raise ValueError("dimension mismatch")
        key = (w, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = Poly()
        for (alpha, vs, beta), c in w.terms():
            g = f
            for j, k in enumerate(beta):
                if k:
                    g = g.diff(j, k)
            if g.is_zero:
                continue
            mono = Poly({alpha: c * _MINUS_I_POW[sum(beta) % 4]})
            for mu in vs:
                mono = mono * self.derivative_of_V(mu)
            out = out + mono * g
        self._cache[key] = out
        return out

    def apply_word(self, word: tuple[WeylElement, ...], f: Poly) -> Poly:
        """``word[0](word[1](...word[-1](f)))`` with suffix memoization."""
        if not word:
            return f
        key = (word, f)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        inner = self.apply_word(word[1:], f)
        out = inner if inner.is_zero else self.act(word[0], inner)
        self._cache[key] = out
        return out


_MINUS_I_POW = (GaussianRational(1), GaussianRational(0, -1), GaussianRational(-1), GaussianRational(0, 1))


class OpWord:
    """Linear combination of operator words ``A1 A2 ... Ak`` (rightmost acts first)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[WeylElement, ...], GaussianRational] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def atom(cls, w: WeylElement) -> OpWord:
        return cls({(w,): GaussianRational(1)})

    def __add__(self, other: OpWord) -> OpWord:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, GaussianRational(0)) + v
        return OpWord(out)

    def scale(self, c: GaussianRational) -> OpWord:
        return OpWord({k: v * c for k, v in self.terms.items()})

    def compose(self, other: OpWord) -> OpWord:
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, GaussianRational(0)) + v1 * v2
        return OpWord(out)

    def apply(self, rep: PolyRep, f: Poly) -> Poly:
        out = Poly()
        for word, c in self.terms.items():
            g = rep.apply_word(word, f)
            if not g.is_zero:
                out = out + g.scale(c)
        return out


class OracleTensor:
    """Split-octonion slots holding :class:`OpWord` s; products compose actions."""

    def __init__(self, slots: Mapping[str, OpWord] | None = None):
        self.slots = {k: v for k, v in (slots or {}).items() if v.terms}

    @classmethod
    def lift(cls, components: Mapping[str, WeylElement]) -> OracleTensor:
        return cls({lab: OpWord.atom(w) for lab, w in components.items() if w})

    def __add__(self, other: OracleTensor) -> OracleTensor:
        out = dict(self.slots)
        for k, v in other.slots.items():
            out[k] = out[k] + v if k in out else v
        return OracleTensor(out)

    def scale(self, c) -> OracleTensor:
        c = GaussianRational.coerce(c)
        return OracleTensor({k: v.scale(c) for k, v in self.slots.items()})

    def __sub__(self, other: OracleTensor) -> OracleTensor:
        return self + other.scale(-1)

    def __mul__(self, other: OracleTensor) -> OracleTensor:
        alg = builtin_algebra("split_octonion")
        out: dict[str, OpWord] = {}
        for u, a in self.slots.items():
            for v, b in other.slots.items():
                uv = alg.product_of_basis(alg.index(u), alg.index(v)).support()
                if not uv:
                    continue
                ab = a.compose(b)
                for k, c in uv:
                    lab = alg.labels[k]
                    term = ab.scale(c)
                    out[lab] = out[lab] + term if lab in out else term
        return OracleTensor(out)


def same_action(rep: PolyRep, lhs: Mapping[str, OpWord], rhs: Mapping[str, OpWord],
                polys: Iterable[Poly] | None = None) -> tuple[bool, str]:
    """Compare two slot maps on every test polynomial.

    Returns ``(ok, detail)`` where ``detail`` names the first mismatch.
    """
    empty = OpWord()
    for slot in sorted(set(lhs) | set(rhs)):
        a, b = lhs.get(slot, empty), rhs.get(slot, empty)
        for f in polys if polys is not None else rep.test_polys:
            if a.apply(rep, f) != b.apply(rep, f):
                return False, f"slot {slot}, test polynomial {f}"
    return True, ""


def weyl_matches_composition(rep: PolyRep, result: WeylElement, factors: Sequence[WeylElement]) -> bool:
    """Does the normal-ordered ``result`` act like ``factors[0] o factors[1] o ...``?"""
    word = OpWord({tuple(factors): GaussianRational(1)})
    direct = OpWord.atom(result)
    return all(word.apply(rep, f) == direct.apply(rep, f) for f in rep.test_polys)


EXAMPLE1_POTENTIAL = "x1**2*x2 + x3"


def example1_oracle_checks(catalog: Sequence[WeylElement], potential: str = EXAMPLE1_POTENTIAL,
                           convention: str = "printed", max_test_degree: int = 4,
                           hamiltonian=None) -> dict[str, tuple[bool, str]]:
    """Re-run the Example-1 identities in the differential representation.

    Both sides of each identity are built by composing actions.  The
    symbolic results from :mod:`nonassoc.operators` are also compared with
    their composed counterparts, so a normal-ordering bug shows up either as
    an identity failure here or as a symbolic/oracle mismatch.
    """
    from . import operators as ops

    rep = PolyRep(potential, ops.N_DIM, max_test_degree)
    Q, Qbar = ops.build_supercharges()
    H = hamiltonian if hamiltonian is not None else ops.hamiltonian_split()
    q, qb = OracleTensor.lift(Q.components()), OracleTensor.lift(Qbar.components())
    hh = q + qb
    Ho = OracleTensor.lift(H.components())
    zero = OracleTensor()

    def nc(L, a, b):
        return (L * a) * b - a * (b * L)

    results: dict[str, tuple[bool, str]] = {}

    def record(name, ok, detail):
        prev_ok, prev = results.get(name, (True, ""))
        results[name] = (prev_ok and ok, prev or detail)

    def cmp(name, a: OracleTensor, b: OracleTensor, label: str):
        ok, detail = same_action(rep, a.slots, b.slots)
        record(name, ok, f"{label}: {detail}" if not ok else "")

    def cmp_symbolic(name, sym, oracle: OracleTensor, label: str):
        ok, detail = same_action(rep, OracleTensor.lift(sym.components()).slots, oracle.slots)
        record(name, ok, f"{label} (symbolic vs composed): {detail}" if not ok else "")

    cmp("nilpotency", q * q + q * q, zero, "{Q,Q}")
    cmp("nilpotency", qb * qb + qb * qb, zero, "{Qbar,Qbar}")
    cmp("hamiltonian_split", (hh * hh).scale(HALF), Ho, "(1/2)(Q+Qbar)^2")
    cmp("hamiltonian_split", (qb * q + q * qb).scale(HALF), Ho, "(1/2){Qbar,Q}")

    lifted = [OracleTensor.lift(ops.embed(L0).components()) for L0 in catalog]
    for k, (L0, L) in enumerate(zip(catalog, lifted)):
        text = str(L0)
        cmp("vanishing", nc(L, q, q), zero, f"[L;Q,Q] L0={text}")
        cmp("vanishing", nc(L, qb, qb), zero, f"[L;Qbar,Qbar] L0={text}")
        full = nc(L, hh, hh)
        cmp("commutator_form", full, nc(L, q, qb) + nc(L, qb, q), f"split L0={text}")
        a0 = OpWord()
        b0 = OpWord()
        l0 = OpWord.atom(L0)
        for j in range(1, ops.N_DIM + 1):
            d, db = OpWord.atom(ops.D(j)), OpWord.atom(ops.Dbar(j))
            ddb, dbd = d.compose(db), db.compose(d)
            a0 = a0 + ddb.compose(l0) + l0.compose(ddb).scale(GaussianRational(-1))
            b0 = b0 + dbd.compose(l0) + l0.compose(dbd).scale(GaussianRational(-1))
        cmp("commutator_form", full, OracleTensor({"u0c": a0, "u0": b0}), f"commutator form L0={text}")
        cmp_symbolic("commutator_form", ops.tensor_nonassoc_commutator(ops.embed(L0), Q + Qbar, Q + Qbar),
                     full, f"[L;h,h] L0={text}")
        lhs = L * Ho - Ho * L
        if convention == "h1h2":
            lhs = lhs.scale(2)
        cmp(f"hamilton_{convention}", lhs, full, f"L0={text}")
    for a, A in enumerate(lifted):
        for b, B in enumerate(lifted):
            lhs = nc(A * B, hh, hh)
            rhs = A * nc(B, hh, hh) + nc(A, hh, hh) * B
            cmp("leibniz", lhs, rhs, f"A0={catalog[a]}, B0={catalog[b]}")
    return results
