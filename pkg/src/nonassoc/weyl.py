"""Normal-ordered operators in x, p and formal potential derivatives.

A monomial is ``coeff * x^alpha * V[mu_1] * ... * V[mu_r] * p^beta`` where
``V[mu]`` stands for the partial derivative of a potential V with
multi-index ``mu``.  x's and V's commute with each other; moving a
momentum to the right uses

    p_j x_k  = x_k p_j - i delta_jk
    p_j V[mu] = V[mu] p_j - i V[mu + e_j]

(hbar = 1, p = -i d/dx).  In one dimension ``V[1]``, ``V[2]``, ... are read
as U', U'', ...
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .scalars import ONE, ZERO, I, GaussianRational, ScalarLike

Key = tuple[tuple[int, ...], tuple[tuple[int, ...], ...], tuple[int, ...]]

MINUS_I = -I


class ClosureError(ArithmeticError):
    """A derivative symbol beyond the allowed order was produced."""


class WeylParseError(ValueError):
    pass


def _degree(key: Key) -> int:
    x, v, p = key
    return sum(x) + len(v) + sum(p)


def _sort_key(key: Key):
    # graded lexicographic on (x_exp, sorted V symbols, p_exp)
    return (_degree(key), key)


class WeylElement:
    """An immutable sum of normal-ordered monomials in ``n`` variables."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Key, GaussianRational] | None = None):
        self.n = n
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[k] = c
        self._terms: dict[Key, GaussianRational] = clean
        self._hash = None

    # constructors

    @classmethod
    def scalar(cls, n: int, c: ScalarLike) -> WeylElement:
        c = GaussianRational.coerce(c)
        return cls(n, {((0,) * n, (), (0,) * n): c})

    @classmethod
    def one(cls, n: int) -> WeylElement:
        return cls.scalar(n, ONE)

    @classmethod
    def zero(cls, n: int) -> WeylElement:
        return cls(n)

    @classmethod
    def x(cls, n: int, j: int, power: int = 1) -> WeylElement:
        """Position ``x_j`` (1-based)."""
        e = [0] * n
        e[j - 1] = power
        return cls(n, {(tuple(e), (), (0,) * n): ONE})

    @classmethod
    def p(cls, n: int, j: int, power: int = 1) -> WeylElement:
        """Momentum ``p_j`` (1-based)."""
        e = [0] * n
        e[j - 1] = power
        return cls(n, {((0,) * n, (), tuple(e)): ONE})

    @classmethod
    def V(cls, *mu: int) -> WeylElement:
        """Derivative symbol ``V[mu]``; the dimension is ``len(mu)``."""
        if len(mu) == 1 and isinstance(mu[0], (tuple, list)):
            mu = tuple(mu[0])
        if sum(mu) < 1 or any(m < 0 for m in mu):
            raise ValueError(f"derivative multi-index must be nonnegative with |mu| >= 1, got {mu}")
        n = len(mu)
        return cls(n, {((0,) * n, (tuple(mu),), (0,) * n): ONE})

    # access

    def terms(self) -> list[tuple[Key, GaussianRational]]:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coefficient(self, key: Key) -> GaussianRational:
        return self._terms.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def max_derivative_order(self) -> int:
        return max((sum(mu) for (_, v, _) in self._terms for mu in v), default=0)

    def map_coefficients(self, f) -> WeylElement:
        return WeylElement(self.n, {k: f(c) for k, c in self._terms.items()})

    def drop_symbols(self) -> WeylElement:
        """Set every V symbol to zero."""
        return WeylElement(self.n, {k: c for k, c in self._terms.items() if not k[1]})

    # arithmetic

    def _same(self, other: WeylElement) -> None:
        if not isinstance(other, WeylElement):
            raise TypeError(f"expected WeylElement, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"cannot combine {self.n}- and {other.n}-dimensional operators")

    def __add__(self, other: WeylElement) -> WeylElement:
        self._same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return WeylElement(self.n, out)

    def __sub__(self, other: WeylElement) -> WeylElement:
        self._same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) - c
        return WeylElement(self.n, out)

    def __neg__(self) -> WeylElement:
        return WeylElement(self.n, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return weyl_mul(self, other)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return WeylElement(self.n, {k: v * c for k, v in self._terms.items()})

    def __rmul__(self, other):
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return WeylElement(self.n, {k: v * c for k, v in self._terms.items()})

    def __pow__(self, k: int) -> WeylElement:
        out = WeylElement.one(self.n)
        for _ in range(k):
            out = weyl_mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_weyl(self)

    def __repr__(self):
        return f"WeylElement({format_weyl(self)!r})"


# normal ordering


def _differentiate(key_fv: tuple[tuple[int, ...], tuple[tuple[int, ...], ...]], j: int, max_order: int | None):
    """d/dx_j of ``x^alpha * prod V[mu]``; yields ``(factor, (alpha', vs'))``."""
    alpha, vs = key_fv
    if alpha[j]:
        a = list(alpha)
        a[j] -= 1
        yield alpha[j], (tuple(a), vs)
    for pos, mu in enumerate(vs):
        m = list(mu)
        m[j] += 1
        if max_order is not None and sum(m) > max_order:
            raise ClosureError(
                f"rewrite p_{j + 1} V{list(mu)} needs V{m}, beyond order {max_order}"
            )
        rest = vs[:pos] + (tuple(m),) + vs[pos + 1:]
        yield 1, (alpha, tuple(sorted(rest)))


def _left_p(j: int, terms: dict[Key, GaussianRational], max_order: int | None) -> dict[Key, GaussianRational]:
    """``p_j * (sum f p^r)`` = ``sum f p^(r+e_j) - i (d_j f) p^r``."""
    out: dict[Key, GaussianRational] = {}
    for (alpha, vs, beta), c in terms.items():
        b = list(beta)
        b[j] += 1
        k = (alpha, vs, tuple(b))
        out[k] = out.get(k, ZERO) + c
        ci = c * MINUS_I
        for factor, (a2, v2) in _differentiate((alpha, vs), j, max_order):
            k = (a2, v2, beta)
            out[k] = out.get(k, ZERO) + ci * factor
    return {k: c for k, c in out.items() if c}


def weyl_mul(a: WeylElement, b: WeylElement, max_order: int | None = None) -> WeylElement:
    """Product in normal order.

    ``max_order`` caps the order of derivative symbols the rewrite may create;
    exceeding it raises :class:`ClosureError`.
    """
    a._same(b)
    n = a.n
    out: dict[Key, GaussianRational] = {}
    cache: dict[tuple[int, ...], dict[Key, GaussianRational]] = {}
    for (alpha, vs, beta), ca in a._terms.items():
        moved = cache.get(beta)
        if moved is None:
            moved = dict(b._terms)
            for j in range(n):
                for _ in range(beta[j]):
                    moved = _left_p(j, moved, max_order)
            cache[beta] = moved
        for (alpha2, vs2, beta2), cb in moved.items():
            key = (
                tuple(x + y for x, y in zip(alpha, alpha2)),
                tuple(sorted(vs + vs2)),
                beta2,
            )
            out[key] = out.get(key, ZERO) + ca * cb
    return WeylElement(n, out)


def weyl_commutator(a: WeylElement, b: WeylElement, max_order: int | None = None) -> WeylElement:
    return weyl_mul(a, b, max_order) - weyl_mul(b, a, max_order)


def weyl_anticommutator(a: WeylElement, b: WeylElement, max_order: int | None = None) -> WeylElement:
    return weyl_mul(a, b, max_order) + weyl_mul(b, a, max_order)


# text form


def _coef_text(c: GaussianRational) -> tuple[bool, str]:
    """Return ``(negative, magnitude_text)``; magnitude 1 gives ``""``."""
    if c.is_real():
        neg = c.re < 0
        mag = -c.re if neg else c.re
        if mag == 1:
            return neg, ""
        return neg, str(mag) if mag.denominator == 1 else f"({mag})"
    if c.re == 0:
        neg = c.im < 0
        mag = -c.im if neg else c.im
        if mag == 1:
            return neg, "I"
        return neg, f"{mag}*I" if mag.denominator == 1 else f"({mag})*I"
    return False, f"({c})"


def _factors(key: Key) -> list[str]:
    alpha, vs, beta = key
    out = []
    for j, e in enumerate(alpha, 1):
        if e:
            out.append(f"x{j}" if e == 1 else f"x{j}^{e}")
    for mu in vs:
        out.append("V[" + ",".join(map(str, mu)) + "]")
    for j, e in enumerate(beta, 1):
        if e:
            out.append(f"p{j}" if e == 1 else f"p{j}^{e}")
    return out


def format_weyl(w: WeylElement) -> str:
    """Canonical text, e.g. ``(1/2)*x1^2*V[1,0,0]*p2 - I``."""
    parts = []
    for key, c in w.terms():
        neg, coef = _coef_text(c)
        facs = _factors(key)
        if coef and facs:
            body = coef + "*" + "*".join(facs)
        elif facs:
            body = "*".join(facs)
        else:
            body = coef or "1"
        if parts:
            parts.append(("- " if neg else "+ ") + body)
        else:
            parts.append(("-" if neg else "") + body)
    return " ".join(parts) if parts else "0"


_TOKEN = re.compile(
    r"""\s*(?:
      (?P<num>\d+(?:/\d+)?)
    | (?P<imag>I)
    | (?P<var>[xp])(?P<idx>\d+)
    | V\[(?P<mu>[\d,\s]+)\]
    | (?P<op>[-+*^()])
    )""",
    re.VERBOSE,
)


def parse_weyl(text: str, n: int) -> WeylElement:
    """Parse the text form back into a :class:`WeylElement`.

    Factors are multiplied left to right with :func:`weyl_mul`, so any
    ordering is accepted, e.g. ``p1*x1`` parses to ``x1*p1 - I``.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WeylParseError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        tokens.append((m, pos))
        pos = m.end()
    p = _Parser(tokens, n, text)
    result = p.expr()
    if p.i != len(tokens):
        raise WeylParseError(f"unexpected token at offset {tokens[p.i][1]}")
    return result


class _Parser:
    def __init__(self, tokens, n, text):
        self.t = tokens
        self.i = 0
        self.n = n
        self.text = text

    def peek_op(self):
        if self.i < len(self.t):
            return self.t[self.i][0].group("op")
        return None

    def expr(self) -> WeylElement:
        sign = ONE
        if self.peek_op() in ("+", "-"):
            sign = -ONE if self.peek_op() == "-" else ONE
            self.i += 1
        out = self.term() * sign
        while self.peek_op() in ("+", "-"):
            op = self.peek_op()
            self.i += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> WeylElement:
        out = self.power()
        while self.peek_op() == "*":
            self.i += 1
            out = weyl_mul(out, self.power())
        return out

    def power(self) -> WeylElement:
        base = self.atom()
        if self.peek_op() == "^":
            self.i += 1
            if self.i >= len(self.t) or not self.t[self.i][0].group("num"):
                raise WeylParseError("exponent must be a nonnegative integer")
            e = self.t[self.i][0].group("num")
            if "/" in e:
                raise WeylParseError("exponent must be a nonnegative integer")
            self.i += 1
            base = base ** int(e)
        return base

    def atom(self) -> WeylElement:
        if self.i >= len(self.t):
            raise WeylParseError("unexpected end of input")
        m, pos = self.t[self.i]
        self.i += 1
        n = self.n
        if m.group("num"):
            return WeylElement.scalar(n, Fraction(m.group("num")))
        if m.group("imag"):
            return WeylElement.scalar(n, I)
        if m.group("var"):
            j = int(m.group("idx"))
            if not 1 <= j <= n:
                raise WeylParseError(f"index {j} out of range at offset {pos}")
            return WeylElement.x(n, j) if m.group("var") == "x" else WeylElement.p(n, j)
        if m.group("mu") is not None:
            mu = tuple(int(v) for v in m.group("mu").split(","))
            if len(mu) != n:
                raise WeylParseError(f"derivative index needs {n} entries at offset {pos}")
            return WeylElement.V(*mu)
        if m.group("op") == "(":
            inner = self.expr()
            if self.peek_op() != ")":
                raise WeylParseError(f"missing ')' for '(' at offset {pos}")
            self.i += 1
            return inner
        if m.group("op") == "-":
            return -self.power()
        raise WeylParseError(f"unexpected {m.group(0).strip()!r} at offset {pos}")


def monomial(n: int, coeff: ScalarLike = 1, x: Iterable[int] | None = None,
             v: Iterable[Iterable[int]] = (), p: Iterable[int] | None = None) -> WeylElement:
    """Build a single normal-ordered monomial directly from exponents."""
    key = (
        tuple(x) if x is not None else (0,) * n,
        tuple(sorted(tuple(mu) for mu in v)),
        tuple(p) if p is not None else (0,) * n,
    )
    return WeylElement(n, {key: GaussianRational.coerce(coeff)})
