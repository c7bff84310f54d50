"""Acceptance suite: ten criteria, every comparison exact.

Each criterion prints one pass/fail line per sub-check (run pytest -s
to see them); a criterion fails when any sub-check is not exactly met.
The same checks back the `torsionlab verify-paper` command.
"""

import pytest

from torsionlab.verify import (
    check_complex,
    check_hypercomplex,
    check_hyperparacomplex,
    check_invariant_suite,
    check_lagrangian,
    check_master_crosscheck,
    check_metric_full_group,
    check_product_tangent,
    check_symplectic,
    check_unitary,
)

CRITERIA = [
    ("criterion-01-symplectic", check_symplectic),
    ("criterion-02-complex", check_complex),
    ("criterion-03-unitary", check_unitary),
    ("criterion-04-metric-full-group", check_metric_full_group),
    ("criterion-05-hypercomplex", check_hypercomplex),
    ("criterion-06-hyperparacomplex", check_hyperparacomplex),
    ("criterion-07-product-tangent", check_product_tangent),
    ("criterion-08-lagrangian-symplectic", check_lagrangian),
    ("criterion-09-invariant-suite", check_invariant_suite),
    ("criterion-10-oracle-equivalence", check_master_crosscheck),
]


@pytest.mark.parametrize("label,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(label, fn):
    results = fn()
    assert results, f"{label}: no checks ran"
    failures = []
    for r in results:
        mark = "PASS" if r["ok"] else "FAIL"
        line = f"[{mark}] {label}: {r['name']}"
        if r["detail"]:
            line += f" -- {r['detail']}"
        print(line)
        if not r["ok"]:
            failures.append(r["name"])
    assert not failures, f"{label} failed: {failures}"
