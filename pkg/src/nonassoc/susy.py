"""One-dimensional matrix supersymmetric quantum mechanics.

Symbolic part: 2x2 matrices of one-variable Weyl operators with the
superpotential derivatives ``U' = V[1]``, ``U'' = V[2]``, ``U''' = V[3]``.

Numeric part: partner Hamiltonians ``H_-/+ = p^2/2 + V_-/+`` with
``V_-/+ = U'^2/8 +/- U''/4``, discretized by central differences on a
Dirichlet box and diagonalized with LAPACK's tridiagonal bisection.
``H_-`` is the top-left block (``sigma_z = diag(1, -1)``).
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .laws import LawReport, Witness
from .scalars import HALF, I, GaussianRational
from .weyl import ClosureError, WeylElement, weyl_mul

# symbolic layer


def _w(c) -> WeylElement:
    return WeylElement.scalar(1, c)


P = WeylElement.p(1, 1)
X = WeylElement.x(1, 1)
U1, U2, U3 = WeylElement.V(1), WeylElement.V(2), WeylElement.V(3)


class MatrixOperator:
    """2x2 matrix of one-dimensional :class:`WeylElement` entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[WeylElement]]):
        rows = tuple(tuple(r) for r in entries)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("MatrixOperator is 2x2")
        self.entries = rows

    @classmethod
    def constant(cls, m: Sequence[Sequence[int]]) -> MatrixOperator:
        return cls([[_w(v) for v in row] for row in m])

    @classmethod
    def times(cls, w: WeylElement, m: MatrixOperator) -> MatrixOperator:
        """``w * m`` for a constant matrix ``m``."""
        return cls([[weyl_mul(w, e) for e in row] for row in m.entries])

    def __getitem__(self, rc: tuple[int, int]) -> WeylElement:
        r, c = rc
        return self.entries[r][c]

    def __add__(self, other: MatrixOperator) -> MatrixOperator:
        return MatrixOperator([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: MatrixOperator) -> MatrixOperator:
        return MatrixOperator([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def scale(self, c) -> MatrixOperator:
        return MatrixOperator([[a * GaussianRational.coerce(c) for a in r] for r in self.entries])

    def mul(self, other: MatrixOperator, max_order: int | None = None) -> MatrixOperator:
        out = []
        for r in range(2):
            row = []
            for c in range(2):
                acc = WeylElement.zero(1)
                for k in range(2):
                    acc = acc + weyl_mul(self.entries[r][k], other.entries[k][c], max_order)
                row.append(acc)
            out.append(row)
        return MatrixOperator(out)

    def __eq__(self, other):
        return isinstance(other, MatrixOperator) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "[[" + "], [".join(", ".join(str(e) for e in r) for r in self.entries) + "]]"


SIGMA_PLUS = MatrixOperator.constant([[0, 1], [0, 0]])
SIGMA_MINUS = MatrixOperator.constant([[0, 0], [1, 0]])
SIGMA_Z = MatrixOperator.constant([[1, 0], [0, -1]])
IDENTITY = MatrixOperator.constant([[1, 0], [0, 1]])
ZERO_MATRIX = MatrixOperator.constant([[0, 0], [0, 0]])


def build_matrix_supercharges() -> tuple[MatrixOperator, MatrixOperator]:
    """``Q = (p - i U'/2) sigma+``, ``Qbar = (p + i U'/2) sigma-``."""
    half_i = HALF * I
    Q = MatrixOperator.times(P - U1 * half_i, SIGMA_PLUS)
    Qbar = MatrixOperator.times(P + U1 * half_i, SIGMA_MINUS)
    return Q, Qbar


def matrix_hamiltonian(sigma_z_sign: int = 1) -> MatrixOperator:
    """``(p^2 + U'^2/4)/2 * 1 + (U''/4) sigma_z``."""
    scalar = (weyl_mul(P, P) + weyl_mul(U1, U1) * Fraction(1, 4)) * HALF
    return MatrixOperator.times(scalar, IDENTITY) + MatrixOperator.times(U2 * Fraction(sigma_z_sign, 4), SIGMA_Z)


def _commutator(a: MatrixOperator, b: MatrixOperator, max_order=None) -> MatrixOperator:
    return a.mul(b, max_order) - b.mul(a, max_order)


def _anticommutator(a: MatrixOperator, b: MatrixOperator, max_order=None) -> MatrixOperator:
    return a.mul(b, max_order) + b.mul(a, max_order)


def check_matrix_susy_algebra(sigma_z_sign: int = 1, max_order: int | None = None) -> LawReport:
    """Verify the supercharge algebra with exact normal forms.

    ``sigma_z_sign = -1`` flips the ``sigma_z`` term of H (negative control).
    ``max_order`` caps the derivative order the rewrite may produce; with
    ``max_order=2`` the ``p U'' -> U'' p - i U'''`` step is unavailable.
    """
    t0 = time.perf_counter()
    Q, Qbar = build_matrix_supercharges()
    H = matrix_hamiltonian(sigma_z_sign)
    cases: list[tuple[str, Callable[[], tuple[MatrixOperator, MatrixOperator]]]] = [
        ("{sigma-,sigma+} = 1", lambda: (_anticommutator(SIGMA_MINUS, SIGMA_PLUS), IDENTITY)),
        ("[sigma+,sigma-] = sigma_z", lambda: (_commutator(SIGMA_PLUS, SIGMA_MINUS), SIGMA_Z)),
        ("Q^2 = 0", lambda: (Q.mul(Q, max_order), ZERO_MATRIX)),
        ("Qbar^2 = 0", lambda: (Qbar.mul(Qbar, max_order), ZERO_MATRIX)),
        ("{Qbar,Q} = 2H", lambda: (_anticommutator(Qbar, Q, max_order), H.scale(2))),
        ("(Q Qbar + Qbar Q)/2 = H", lambda: ((Q.mul(Qbar, max_order) + Qbar.mul(Q, max_order)).scale(HALF), H)),
        ("[Q,H] = 0", lambda: (_commutator(Q, H, max_order), ZERO_MATRIX)),
        ("[Qbar,H] = 0", lambda: (_commutator(Qbar, H, max_order), ZERO_MATRIX)),
    ]
    witnesses = []
    for k, (name, fn) in enumerate(cases):
        try:
            lhs, rhs = fn()
        except ClosureError as exc:
            witnesses.append(Witness((name, "rewrite did not close"), str(exc), "-", (k,)))
            continue
        for r in range(2):
            for c in range(2):
                if lhs[r, c] != rhs[r, c]:
                    witnesses.append(Witness((name, f"entry ({r + 1},{c + 1})"), lhs[r, c], rhs[r, c], (k, r, c)))
    failures = len({w.key[0] for w in witnesses})
    notes = ["exact normal-form identity", "H_- is the top-left block, sigma_z = diag(1,-1)"]
    if sigma_z_sign != 1:
        notes.append("negative control: sigma_z term sign flipped")
    if max_order is not None:
        notes.append(f"negative control: derivative order capped at {max_order}")
    return LawReport(
        law_id="appendixA.susy_algebra",
        algebra="Q_M(1d)(x)Mat2",
        status="fail" if witnesses else "pass",
        cases_checked=len(cases),
        witnesses=witnesses[:10],
        failures=failures,
        elapsed=time.perf_counter() - t0,
        notes=notes,
    )


def matrix_oracle_checks(potential: str) -> dict[str, bool]:
    """The same identities in the polynomial representation with a concrete U."""
    from .polyrep import OpWord, PolyRep

    rep = PolyRep(potential, 1, max_test_degree=6)
    Q, Qbar = build_matrix_supercharges()
    H = matrix_hamiltonian()

    def lift(m: MatrixOperator):
        return [[OpWord.atom(m[r, c]) for c in range(2)] for r in range(2)]

    def mul(a, b):
        return [[a[r][0].compose(b[0][c]) + a[r][1].compose(b[1][c]) for c in range(2)] for r in range(2)]

    def add(a, b, s=1):
        return [[a[r][c] + b[r][c].scale(GaussianRational(s)) for c in range(2)] for r in range(2)]

    def equal(a, b) -> bool:
        return all(
            a[r][c].apply(rep, f) == b[r][c].apply(rep, f)
            for r in range(2) for c in range(2) for f in rep.test_polys
        )

    q, qb, h = lift(Q), lift(Qbar), lift(H)
    zero = lift(ZERO_MATRIX)
    two_h = [[h[r][c].scale(GaussianRational(2)) for c in range(2)] for r in range(2)]
    return {
        "Q^2 = 0": equal(mul(q, q), zero),
        "Qbar^2 = 0": equal(mul(qb, qb), zero),
        "{Qbar,Q} = 2H": equal(add(mul(qb, q), mul(q, qb)), two_h),
        "[Q,H] = 0": equal(add(mul(q, h), mul(h, q), -1), zero),
        "[Qbar,H] = 0": equal(add(mul(qb, h), mul(h, qb), -1), zero),
    }


# numeric layer


@dataclass(frozen=True)
class Superpotential:
    """A named superpotential with analytic first and second derivatives."""

    name: str
    expression: str
    U: Callable[[np.ndarray], np.ndarray]
    dU: Callable[[np.ndarray], np.ndarray]
    d2U: Callable[[np.ndarray], np.ndarray]

    def check_derivatives(self, points: Sequence[float] = (-1.3, -0.2, 0.4, 2.1), step: float = 1e-4,
                          rtol: float = 1e-5) -> bool:
        """Central-difference spot check of ``dU`` and ``d2U`` against ``U``."""
        x = np.asarray(points, dtype=float)
        fd1 = (self.U(x + step) - self.U(x - step)) / (2 * step)
        fd2 = (self.dU(x + step) - self.dU(x - step)) / (2 * step)
        return bool(np.allclose(fd1, self.dU(x), rtol=rtol, atol=rtol)
                    and np.allclose(fd2, self.d2U(x), rtol=rtol, atol=rtol))


SUPERPOTENTIALS = {
    "quadratic": Superpotential("quadratic", "x^2", lambda x: x**2, lambda x: 2 * x, lambda x: 2 + 0 * x),
    "linear": Superpotential("linear", "2x", lambda x: 2 * x, lambda x: 2 + 0 * x, lambda x: 0 * x),
    "cubic": Superpotential("cubic", "x^3", lambda x: x**3, lambda x: 3 * x**2, lambda x: 6 * x),
    "zero": Superpotential("zero", "0", lambda x: 0 * x, lambda x: 0 * x, lambda x: 0 * x),
}


def partner_potentials(U: Superpotential) -> tuple[Callable, Callable]:
    """``(V_-, V_+)`` with ``V_-/+ = U'^2/8 +/- U''/4``."""

    def v_minus(x):
        x = np.asarray(x, dtype=float)
        return U.dU(x) ** 2 / 8 + U.d2U(x) / 4

    def v_plus(x):
        x = np.asarray(x, dtype=float)
        return U.dU(x) ** 2 / 8 - U.d2U(x) / 4

    return v_minus, v_plus


@dataclass(frozen=True)
class Tridiagonal:
    diag: np.ndarray
    off: np.ndarray
    grid: np.ndarray
    h: float

    @property
    def n(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


def discretize(V: Callable, domain: tuple[float, float], N: int) -> Tridiagonal:
    """``p^2/2 + V`` on ``N`` interior points of ``domain`` with Dirichlet ends."""
    if N < 3:
        raise ValueError(f"need N >= 3 grid points, got {N}")
    a, b = float(domain[0]), float(domain[1])
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise ValueError(f"domain must be a finite interval, got {domain}")
    h = (b - a) / (N + 1)
    x = a + h * np.arange(1, N + 1)
    with np.errstate(all="ignore"):
        v = np.asarray(V(x), dtype=float) * np.ones(N)
    if not np.all(np.isfinite(v)):
        bad = x[~np.isfinite(v)][0]
        raise ValueError(f"potential is not finite at x = {bad}")
    diag = 1.0 / h**2 + v
    off = np.full(N - 1, -0.5 / h**2)
    return Tridiagonal(diag, off, x, h)


def lowest_eigenvalues(H: Tridiagonal, k: int) -> list[float]:
    """The ``k`` smallest eigenvalues, ascending (Sturm-sequence bisection)."""
    if k < 1 or k > H.n:
        raise ValueError(f"k must be in 1..{H.n}, got {k}")
    if H.n == 1:
        return [float(H.diag[0])]
    vals = eigh_tridiagonal(H.diag, H.off, eigvals_only=True, select="i",
                            select_range=(0, k - 1), lapack_driver="stebz")
    return [float(v) for v in np.sort(vals)]


@dataclass
class SpectrumReport:
    superpotential: str
    domain: tuple[float, float]
    N: int
    k: int
    tol: float
    minus: list[float]
    plus: list[float]
    pairing_kind: str
    pairs: list[tuple[float, float]]
    unpaired: float | None
    max_pairing_error: float
    status: str
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["domain"] = list(self.domain)
        d["pairs"] = [list(p) for p in self.pairs]
        if not timing:
            d.pop("elapsed")
        else:
            d["elapsed_ms"] = round(d.pop("elapsed") * 1000, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True) + "\n"


def _pairing(lower: Sequence[float], upper: Sequence[float], shift: int):
    pairs = [(lower[j], upper[j + shift]) for j in range(len(lower) - shift)]
    err = max((abs(a - b) for a, b in pairs), default=0.0)
    return pairs, err


def spectral_pairing_report(U: Superpotential, domain: tuple[float, float] = (-10.0, 10.0),
                            N: int = 2000, k: int = 6, tol: float = 1e-3) -> SpectrumReport:
    """Compare the spectra of ``H_-`` and ``H_+``.

    Three pairings are tried: ``H_+`` holds an extra lowest level (its
    ground state is unpaired), ``H_-`` does, or the spectra match one to
    one.  The first shifted pairing whose unpaired level is within ``tol``
    of zero and whose other levels agree within ``tol`` wins; otherwise a
    one-to-one match within ``tol`` passes; otherwise the report fails and
    carries the best pairing found.
    """
    t0 = time.perf_counter()
    v_minus, v_plus = partner_potentials(U)
    minus = lowest_eigenvalues(discretize(v_minus, domain, N), k)
    plus = lowest_eigenvalues(discretize(v_plus, domain, N), k)
    candidates = []
    pairs, err = _pairing(minus, plus, 1)
    candidates.append(("plus_ground_unpaired", [(a, b) for a, b in pairs], plus[0], err))
    pairs, err = _pairing(plus, minus, 1)
    candidates.append(("minus_ground_unpaired", [(b, a) for a, b in pairs], minus[0], err))
    pairs, err = _pairing(minus, plus, 0)
    candidates.append(("one_to_one", pairs, None, err))

    chosen, status = None, "fail"
    for kind, pairs, lone, err in candidates:
        if lone is not None and abs(lone) < tol and err < tol:
            chosen, status = (kind, pairs, lone, err), "pass"
            break
    if chosen is None and candidates[2][3] < tol:
        chosen, status = candidates[2], "pass"
    if chosen is None:
        chosen = min(candidates, key=lambda c: c[3])
    kind, pairs, lone, err = chosen
    return SpectrumReport(
        superpotential=U.name,
        domain=(float(domain[0]), float(domain[1])),
        N=N,
        k=k,
        tol=tol,
        minus=minus,
        plus=plus,
        pairing_kind=kind,
        pairs=pairs,
        unpaired=lone,
        max_pairing_error=err,
        status=status,
        notes=["H_- = p^2/2 + U'^2/8 + U''/4 is the top-left block; H_+ has -U''/4",
               "pairs are (H_- level, H_+ level)"],
        elapsed=time.perf_counter() - t0,
    )
