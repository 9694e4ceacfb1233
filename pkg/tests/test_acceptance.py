"""Acceptance criteria, one test per criterion (6 is split into its parts).

Each test records a PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary and ``python tests/test_acceptance.py`` prints them
directly.
"""

from __future__ import annotations

import io
import json
import sys
import time
from contextlib import redirect_stdout

import pytest

from nonassoc import cli
from nonassoc.algebra import change_basis, norm
from nonassoc.builtins import SPLIT_OCTONION_LABELS, builtin_algebra, split_basis_matrix
from nonassoc.laws import check_identity, compare_algebras, zero_divisor_scan
from nonassoc.operators import default_catalog, example1_checks
from nonassoc.polyrep import example1_oracle_checks
from nonassoc.suites import example2_report, example3_report, sedenion_sign_map
from nonassoc.susy import SUPERPOTENTIALS, check_matrix_susy_algebra, matrix_oracle_checks, spectral_pairing_report

from reference_tables import SEDENION_COLUMNS, SEDENION_ROWS, SPLIT_COLUMNS, SPLIT_ROWS, rows

RESULTS: list[str] = []


def record(cid: str, ok: bool, detail: str) -> None:
    line = f"criterion {cid}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _cli_json(*argv: str) -> tuple[int, dict]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, json.loads(buf.getvalue())


def _table_mismatches(doc: dict, columns: list[str], ref: dict[str, list[str]]) -> list[str]:
    bad = []
    if doc["labels"] != columns:
        bad.append(f"column order {doc['labels']}")
    for r, lab in enumerate(doc["labels"]):
        for c, cell in enumerate(doc["table"][r]):
            if cell != ref[lab][columns.index(doc["labels"][c])]:
                bad.append(f"{lab}*{doc['labels'][c]} = {cell}, expected {ref[lab][c]}")
    return bad


# 1


def test_criterion_1_table_fidelity():
    t0 = time.perf_counter()
    code_s, sed = _cli_json("tables", "sedenion", "--format", "json")
    code_o, split = _cli_json("tables", "split_octonion", "--format", "json")
    elapsed = time.perf_counter() - t0
    bad = _table_mismatches(sed, SEDENION_COLUMNS, rows(SEDENION_ROWS))
    bad += _table_mismatches(split, SPLIT_COLUMNS, rows(SPLIT_ROWS))
    cells = sum(len(r) for r in sed["table"])
    ok = code_s == 0 and code_o == 0 and not bad and cells == 256 and elapsed < 1.0
    record("1", ok, f"sedenion {cells} cells, split 64 cells, {len(bad)} mismatches, {elapsed:.3f}s (< 1 s)"
           + (f"; first: {bad[0]}" if bad else ""))


# 2


def test_criterion_2_basis_change_and_sign_search():
    octo = builtin_algebra("octonion")
    split = builtin_algebra("split_octonion")
    derived = change_basis(octo, split_basis_matrix(), SPLIT_OCTONION_LABELS)
    entries = sum(
        derived.product_of_basis(a, b).coeffs == split.product_of_basis(a, b).coeffs
        for a in range(8) for b in range(8)
    )
    mapping, hits, tried = sedenion_sign_map()
    from nonassoc.builtins import complex_octonion

    sed_ok = mapping is not None and compare_algebras(builtin_algebra("sedenion"), complex_octonion(), mapping).passed
    ok = entries == 64 and tried == 128 and len(hits) == 1 and sed_ok
    record("2", ok, f"split basis change {entries}/64 entries; sign search {len(hits)} hit of {tried}, "
                    f"sedenion = C(x)O under it: {sed_ok}")


# 3


def test_criterion_3_myung_conditions():
    t0 = time.perf_counter()
    flex_o = check_identity(builtin_algebra("octonion"), "flexible")
    flex_s = check_identity(builtin_algebra("sedenion"), "flexible")
    lie_o = check_identity(builtin_algebra("octonion"), "lie_admissible")
    lie_q = check_identity(builtin_algebra("quaternion"), "lie_admissible")
    lie_b = check_identity(builtin_algebra("biquaternion"), "lie_admissible")
    elapsed = time.perf_counter() - t0
    ok = (flex_o.passed and flex_o.cases_checked == 512 and flex_s.passed and flex_s.cases_checked == 4096
          and not lie_o.passed and len(lie_o.witnesses) >= 1 and lie_q.passed and lie_b.passed and elapsed < 5)
    record("3", ok, f"flexible octonion {flex_o.status} ({flex_o.cases_checked}), sedenion {flex_s.status} "
                    f"({flex_s.cases_checked}); lie-admissible octonion {lie_o.status} "
                    f"({len(lie_o.witnesses)} witnesses), quaternion {lie_q.status}, biquaternion {lie_b.status}; "
                    f"{elapsed:.2f}s (< 5 s)")


# 4, 5


def test_criterion_4_quaternion_leibniz():
    rep = example2_report()
    record("4", rep.passed and rep.cases_checked == 27, f"{rep.cases_checked} equalities, {rep.failures} failures")


def test_criterion_5_biquaternion_leibniz():
    rep = example3_report()
    record("5", rep.passed and rep.cases_checked == 108, f"{rep.cases_checked} equalities, {rep.failures} failures")


# 6


@pytest.fixture(scope="module")
def example1():
    t0 = time.perf_counter()
    catalog = default_catalog()
    symbolic = example1_checks(catalog, convention="printed")
    oracle = example1_oracle_checks(catalog, convention="printed")
    return symbolic, oracle, time.perf_counter() - t0


@pytest.mark.parametrize(
    "part, symbolic_keys, oracle_keys",
    [
        ("6a", ["vanishing"], ["vanishing"]),
        ("6b", ["commutator_form"], ["commutator_form"]),
        ("6c", ["leibniz"], ["leibniz"]),
        ("6d", ["hamiltonian_split", "nilpotency"], ["hamiltonian_split", "nilpotency"]),
        ("6e", ["hamilton_printed"], ["hamilton_printed"]),
    ],
    ids=["6a", "6b", "6c", "6d", "6e"],
)
def test_criterion_6_example1(example1, part, symbolic_keys, oracle_keys):
    symbolic, oracle, elapsed = example1
    sym_ok = all(symbolic[k].passed for k in symbolic_keys)
    orc_ok = all(oracle[k][0] for k in oracle_keys)
    detail = ", ".join(f"{k}: {symbolic[k].status} ({symbolic[k].cases_checked} cases)" for k in symbolic_keys)
    detail += f"; oracle {'agrees' if orc_ok else 'fails: ' + '; '.join(oracle[k][1] for k in oracle_keys)}"
    if not sym_ok:
        w = next(w for k in symbolic_keys for w in symbolic[k].witnesses)
        detail += f"; witness {w.inputs}: lhs {w.lhs} | rhs {w.rhs}"
    detail += f"; suite {elapsed:.2f}s (< 10 s)"
    record(part, sym_ok and orc_ok and elapsed < 10, detail)


# 7


def test_criterion_7_matrix_susy():
    rep = check_matrix_susy_algebra()
    control = check_matrix_susy_algebra(sigma_z_sign=-1)
    control_hit = any(w.inputs[0] == "{Qbar,Q} = 2H" for w in control.witnesses)
    oracles = {u: all(matrix_oracle_checks(u).values()) for u in ("x**2", "x**3")}
    ok = rep.passed and rep.cases_checked == 8 and not control.passed and control_hit and all(oracles.values())
    record("7", ok, f"algebra {rep.status} ({rep.cases_checked} identities); flipped sigma_z "
                    f"{control.status} on {{Qbar,Q}} = 2H: {control_hit}; oracle U=x^2,x^3: {oracles}")


# 8


def test_criterion_8_partner_spectra():
    t0 = time.perf_counter()
    rep = spectral_pairing_report(SUPERPOTENTIALS["quadratic"], (-10.0, 10.0), 2000, 6, 1e-3)
    elapsed = time.perf_counter() - t0
    analytic_plus = max(abs(e - n) for n, e in enumerate(rep.plus))
    analytic_minus = max(abs(e - (n + 1)) for n, e in enumerate(rep.minus))
    ok = (rep.status == "pass" and rep.pairing_kind == "plus_ground_unpaired" and abs(rep.unpaired) < 1e-3
          and rep.max_pairing_error < 1e-3 and analytic_plus < 1e-3 and analytic_minus < 1e-3 and elapsed < 30)
    record("8", ok, f"E0 = {rep.unpaired:.2e}, pairing error {rep.max_pairing_error:.2e}, analytic errors "
                    f"H+ {analytic_plus:.2e} H- {analytic_minus:.2e}; {elapsed:.2f}s (< 30 s)")


# 9


def test_criterion_9_composition():
    reps = {n: check_identity(builtin_algebra(n), "composition", samples=1000)
            for n in ("octonion", "split_octonion", "sedenion")}
    split = builtin_algebra("split_octonion")
    u0 = split.basis("u0")
    null_ok = not u0.is_zero() and norm(u0).is_zero()
    octo_zd = zero_divisor_scan(builtin_algebra("octonion"), depth=2)
    ok = all(r.passed and r.cases_checked == 1000 for r in reps.values()) and null_ok and octo_zd.passed
    record("9", ok, ", ".join(f"{n} {r.status} ({r.cases_checked} pairs)" for n, r in reps.items())
           + f"; N(u0) = {norm(u0)}; octonion zero divisors at depth 2: {octo_zd.failures}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
