import math

import numpy as np
import pytest

from nonassoc.scalars import HALF, I
from nonassoc.susy import (
    SUPERPOTENTIALS,
    build_matrix_supercharges,
    check_matrix_susy_algebra,
    discretize,
    lowest_eigenvalues,
    matrix_hamiltonian,
    matrix_oracle_checks,
    partner_potentials,
    spectral_pairing_report,
)
from nonassoc.weyl import WeylElement


def test_supercharge_entries():
    Q, Qbar = build_matrix_supercharges()
    p, u1 = WeylElement.p(1, 1), WeylElement.V(1)
    assert Q[0, 1] == p - u1 * (HALF * I)
    assert Q[1, 0].is_zero() and Q[0, 0].is_zero() and Q[1, 1].is_zero()
    assert Qbar[1, 0] == p + u1 * (HALF * I)


def test_hamiltonian_diagonal():
    H = matrix_hamiltonian()
    assert H[0, 1].is_zero() and H[1, 0].is_zero()
    assert H[0, 0] - H[1, 1] == WeylElement.V(2) * HALF


def test_algebra_and_controls():
    assert check_matrix_susy_algebra().passed
    flipped = check_matrix_susy_algebra(sigma_z_sign=-1)
    assert "{Qbar,Q} = 2H" in {w.inputs[0] for w in flipped.witnesses}
    capped = check_matrix_susy_algebra(max_order=2)
    assert {w.inputs for w in capped.witnesses} == {
        ("[Q,H] = 0", "rewrite did not close"),
        ("[Qbar,H] = 0", "rewrite did not close"),
    }


@pytest.mark.parametrize("potential", ["x**2", "x**3"])
def test_polynomial_oracle(potential):
    assert all(matrix_oracle_checks(potential).values())


@pytest.mark.parametrize("name", sorted(SUPERPOTENTIALS))
def test_catalog_derivatives(name):
    assert SUPERPOTENTIALS[name].check_derivatives()


def test_partner_potentials():
    xs = np.linspace(-3, 3, 7)
    vm, vp = partner_potentials(SUPERPOTENTIALS["quadratic"])
    assert np.allclose(vp(xs), xs**2 / 2 - 0.5) and np.allclose(vm(xs), xs**2 / 2 + 0.5)
    vm, vp = partner_potentials(SUPERPOTENTIALS["linear"])
    assert np.allclose(vp(xs), 0.5) and np.allclose(vm(xs), 0.5)
    vm, vp = partner_potentials(SUPERPOTENTIALS["zero"])
    assert np.allclose(vp(xs), 0) and np.allclose(vm(xs), 0)


def test_discretize_free_three_points():
    H = discretize(lambda x: 0 * x, (0.0, 4.0), 3)
    h = 1.0
    assert H.h == h
    assert np.array_equal(H.diag, np.full(3, 1 / h**2))
    assert np.array_equal(H.off, np.full(2, -1 / (2 * h**2)))
    d = H.dense()
    assert np.array_equal(d, d.T)


def test_discretize_errors():
    with pytest.raises(ValueError, match="N >= 3"):
        discretize(lambda x: x, (0, 1), 2)
    with pytest.raises(ValueError, match="not finite"):
        discretize(lambda x: 1 / x, (-1, 1), 3)
    with pytest.raises(ValueError):
        discretize(lambda x: x, (0, math.inf), 10)


def test_eigenvalue_oracles():
    ho = lowest_eigenvalues(discretize(lambda x: x**2 / 2, (-10, 10), 2000), 4)
    assert abs(ho[0] - 0.5) < 1e-4
    assert np.allclose(ho, [0.5, 1.5, 2.5, 3.5], atol=1e-3)
    box = lowest_eigenvalues(discretize(lambda x: 0 * x, (0, 1), 4000), 3)
    assert np.allclose(box, [(n * math.pi) ** 2 / 2 for n in (1, 2, 3)], rtol=1e-5)
    with pytest.raises(ValueError):
        lowest_eigenvalues(discretize(lambda x: 0 * x, (0, 1), 3), 4)


def test_eigenvalues_match_dense_solver():
    H = discretize(lambda x: x**4, (-3, 3), 200)
    assert np.allclose(lowest_eigenvalues(H, 5), np.linalg.eigvalsh(H.dense())[:5], atol=1e-10)


def test_pairing_refinement_is_monotone():
    errs = [spectral_pairing_report(SUPERPOTENTIALS["quadratic"], N=n).max_pairing_error for n in (500, 1000, 2000)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-3


def test_pairing_kinds():
    zero = spectral_pairing_report(SUPERPOTENTIALS["zero"], N=300)
    assert zero.status == "pass" and zero.pairing_kind == "one_to_one" and zero.max_pairing_error == 0
    flipped = spectral_pairing_report(SUPERPOTENTIALS["quadratic"], N=2000)
    assert flipped.pairing_kind == "plus_ground_unpaired"
    cubic = spectral_pairing_report(SUPERPOTENTIALS["cubic"], N=1000)
    assert cubic.pairing_kind == "one_to_one" and cubic.unpaired is None


def test_report_json_is_stable():
    a = spectral_pairing_report(SUPERPOTENTIALS["quadratic"], N=500).to_json(timing=False)
    b = spectral_pairing_report(SUPERPOTENTIALS["quadratic"], N=500).to_json(timing=False)
    assert a == b and a.endswith("\n")
