"""Acceptance gate: the ten headline criteria, one pass/fail line each.

Run with ``pytest -v tests/test_acceptance.py -s`` to see the per-criterion
lines; each criterion is a single test with its tolerance pinned inline.
"""
from __future__ import annotations

import json
import math
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from ratbern import (
    CORPUS,
    FamilySpec,
    PHI_CORPUS,
    WViolation,
    apply_grid,
    bernstein_of_phi,
    bound_omega1,
    bound_omega2,
    central_moment,
    delta_n,
    from_weight_polynomial,
    make,
    mamedov_cap,
    mamedov_ratio,
    monomial_moment,
    monomial_moment_direct,
    monomial_moment_grid,
    omega1,
    phi_delta_bound,
    power_to_scaled,
    q_divergence_profile,
    second_moment_remainder,
    shifted_sum_pair,
    sqrt_nodes_gamma_bound_exact,
    voronovskaja_sample,
)
from ratbern.operator import RationalBernsteinOperator

from .conftest import corpus_operators, random_exact_operator, random_float_operator

GRID = np.linspace(0.0, 1.0, 1001)


def _report(num: int, label: str, ok: bool):
    print(f"{'PASS' if ok else 'FAIL'}: criterion {num} - {label}")
    assert ok, f"criterion {num} failed: {label}"


def test_criterion_1_worked_example():
    """Q = 1 + x^2, n = 4: nodes (0, 1/4, 3/7, 2/3, 1), exact and float."""
    exact_poly = power_to_scaled((Fraction(1), Fraction(0), Fraction(1)), 3)
    exact_op = from_weight_polynomial(exact_poly.coeffs)
    expected = (Fraction(0), Fraction(1, 4), Fraction(3, 7), Fraction(2, 3), Fraction(1))
    ok = exact_op.nodes == expected
    # closed form x_k = (k/(n-2)) ((n-1)(n-2) + (k-1)(k-2)) / (n(n-1) + k(k-1))
    n = 4
    for k in range(1, n):
        closed = (
            Fraction(k, n - 2)
            * ((n - 1) * (n - 2) + (k - 1) * (k - 2))
            / (n * (n - 1) + k * (k - 1))
        )
        ok = ok and exact_op.nodes[k] == closed
    float_op = from_weight_polynomial(power_to_scaled((1.0, 0.0, 1.0), 3).coeffs)
    ok = ok and all(
        abs(a - float(b)) <= 1e-14 for a, b in zip(float_op.nodes, expected)
    )
    _report(1, "worked-example nodes (0, 1/4, 3/7, 2/3, 1)", ok)


def test_criterion_2_classical_reduction():
    """Constant Q reproduces the classical operator to 1e-12 on the grid."""
    funcs = {
        "e0": lambda t: 1.0,
        "e1": lambda t: t,
        "e2": lambda t: t * t,
        "exp": math.exp,
    }
    ok = True
    for n in (2, 8, 32, 64):
        op = make(FamilySpec("classical", n))
        for f in funcs.values():
            direct = np.zeros_like(GRID)
            for k in range(n + 1):
                direct += f(k / n) * math.comb(n, k) * GRID**k * (1 - GRID) ** (n - k)
            ok = ok and np.abs(apply_grid(op, f, GRID) - direct).max() <= 1e-12
        moment = monomial_moment_grid(op, 2, GRID)
        ok = ok and np.abs(moment - GRID * (1 - GRID) / n).max() <= 1e-13
    _report(2, "classical reduction and x(1-x)/n second moment", ok)


def test_criterion_3_moment_oracle_equivalence():
    """Closed form equals direct summation: 200 random operators, s <= 6."""
    ok = True
    rng = random.Random(20240812)
    for _ in range(100):
        op = random_exact_operator(rng, rng.randrange(2, 33))
        for s in range(2, 7):
            for x in (Fraction(1, 3), Fraction(4, 5)):
                if monomial_moment(op, s, x) != monomial_moment_direct(op, s, x):
                    ok = False
    for _ in range(100):
        op = random_float_operator(rng, rng.randrange(2, 33))
        for s in range(2, 7):
            for x in (0.25, 0.7):
                closed = monomial_moment(op, s, x)
                direct = monomial_moment_direct(op, s, x)
                if abs(closed - direct) > 1e-10 * max(abs(direct), 1e-30):
                    ok = False
    _report(3, "moment oracle equivalence on 200 random operators", ok)


def test_criterion_4_inequality_certificates():
    """All moment and error certificates, slack >= -1e-10, corpus-wide."""
    ok = True
    tol = 1e-10
    for name, op in corpus_operators().items():
        d = float(delta_n(op))
        m2 = monomial_moment_grid(op, 2, GRID)
        m3 = monomial_moment_grid(op, 3, GRID)
        c4 = np.asarray([float(central_moment(op, 4, float(x))) for x in GRID[::10]])
        x10 = GRID[::10]
        ok = ok and (d * GRID * (1 - GRID) - np.abs(m2)).min() >= -tol
        ok = ok and m3.min() >= -tol and (3 * m2 - m3).min() >= -tol
        cap4 = d * np.asarray([float(central_moment(op, 2, float(x))) for x in x10])
        cap4 = cap4 * (6 * x10**2 - 15 * x10 + 12 + d)
        ok = ok and (cap4 - c4).min() >= -tol
        for s in range(2, 7):
            ok = ok and monomial_moment_grid(op, s, GRID).min() >= -tol
        for r in range(1, 5):
            for x in GRID[::25]:
                a, b = shifted_sum_pair(op, r, float(x))
                ok = ok and abs(a - b) <= 1e-10 * max(1.0, abs(a))
        for f in CORPUS.values():
            for x in GRID[::50]:
                ok = ok and bound_omega1(op, f, float(x)).slack >= -tol
                ok = ok and bound_omega2(op, f, float(x)).slack >= -tol
        assert ok, name
    for pname, phi in PHI_CORPUS.items():
        for n in range(4, 129):
            op = from_weight_polynomial(bernstein_of_phi(phi, n - 1).coeffs)
            ok = ok and float(delta_n(op)) <= phi_delta_bound(phi, n) + tol
        assert ok, pname
    _report(4, "inequality certificates hold with slack >= -1e-10", ok)


def test_criterion_5_convergence_sqrt_family():
    """sqrt-nodes, f = sin(pi x): sup error decreasing, below the certificate."""
    ok = True
    f = CORPUS["sin_pi"]
    errors = []
    for n in (16, 64, 256, 1024):
        op = make(FamilySpec("sqrt_nodes", n))
        d = delta_n(op)
        ok = ok and d == 1.0 / math.sqrt(n)
        fvals = np.sin(np.pi * GRID)
        err = np.abs(apply_grid(op, f.eval, GRID) - fvals)
        bound = (1.0 + np.sqrt(GRID * (1 - GRID))) * omega1(f, math.sqrt(d))
        ok = ok and (bound - err).min() >= -1e-10
        errors.append(err.max())
    ok = ok and all(b < a for a, b in zip(errors, errors[1:]))
    _report(5, "sqrt-nodes convergence sweep with certificate", ok)


def test_criterion_6_w_threshold():
    """Kink weight passes (W) iff a > 1/2, every even sample degree 2..64."""
    ok = True
    for m in range(2, 65, 2):
        for a in (0.3, 0.45, 0.5):
            result = make(FamilySpec("phi_abs", m + 1, a=a))
            ok = ok and isinstance(result, WViolation) and result.index == m // 2
        for a in (0.51, 0.75, 1.0):
            result = make(FamilySpec("phi_abs", m + 1, a=a))
            ok = ok and isinstance(result, RationalBernsteinOperator)
    _report(6, "condition-(W) threshold at a = 1/2", ok)


def test_criterion_7_q_divergence():
    """Normalized Q stays 1 at x=0, collapses geometrically at x=0.5."""
    rows = {(r["n"], r["x"]): r["value"] for r in q_divergence_profile([16, 64], [0.0, 0.5])}
    ok = rows[(16, 0.0)] == 1.0 and rows[(64, 0.0)] == 1.0
    ok = ok and rows[(64, 0.5)] <= 0.75**63 and rows[(64, 0.5)] <= 1.4e-8
    op = make(FamilySpec("sqrt_nodes", 64))
    for k, g in enumerate(op.gamma):
        ok = ok and g <= math.comb(63, k) * 2.0**-k * (1 + 1e-12)
    ok = ok and sqrt_nodes_gamma_bound_exact(64)
    _report(7, "Q-divergence profile and gamma cap", ok)


def test_criterion_8_voronovskaja():
    """Ratio diagnostics: e2 ratio 1, exp asymptotics, fourth-moment cap."""
    ok = True
    interior = GRID[(GRID > 0) & (GRID < 1)]
    for op in corpus_operators().values():
        for x in interior[::25]:
            sample = voronovskaja_sample(op, CORPUS["e2"], float(x))
            ok = ok and abs(sample.ratio - 1.0) <= 1e-12
        for x in np.linspace(0.01, 0.99, 25):
            x = float(x)
            ok = ok and mamedov_ratio(op, x) <= mamedov_cap(op, x) + 1e-10
    op256 = make(FamilySpec("classical", 256))
    sample = voronovskaja_sample(op256, CORPUS["exp"], 0.5)
    ok = ok and abs(sample.ratio - math.exp(0.5) / 2.0) <= 0.02
    sweep = [
        mamedov_ratio(make(FamilySpec("sqrt_nodes", n)), 0.5) for n in (16, 64, 256)
    ]
    ok = ok and sweep[0] > sweep[1] > sweep[2]
    _report(8, "Voronovskaja ratio and Mamedov criterion", ok)


def test_criterion_9_never_a_polynomial():
    """Exact division: nonzero remainder off the classical family, zero on it."""
    rng = random.Random(20240813)
    non_classical = [
        from_weight_polynomial((Fraction(1), Fraction(3), Fraction(4), Fraction(2))),
        make(FamilySpec("one_plus_x_squared", 6), exact=True),
        make(FamilySpec("one_plus_x_squared", 12), exact=True),
        random_exact_operator(rng, 7),
        random_exact_operator(rng, 11),
    ]
    ok = all(any(c != 0 for c in second_moment_remainder(op)) for op in non_classical)
    for n in (4, 12):
        ok = ok and second_moment_remainder(make(FamilySpec("classical", n), exact=True)) == []
    _report(9, "never-a-polynomial remainder test", ok)


def test_criterion_10_cli_contract(tmp_path):
    """Exit codes 0/1/2 on the fixture specs, byte-identical reruns."""
    valid = tmp_path / "valid.json"
    valid.write_text(json.dumps({"mode": "power_poly", "n": 4, "payload": [1, 0, 1]}))
    violating = tmp_path / "violating.json"
    violating.write_text(
        json.dumps({"mode": "family", "n": 3, "payload": {"kind": "phi_abs", "a": 0.4}})
    )
    malformed = tmp_path / "malformed.json"
    malformed.write_text("{broken")

    def run(*args):
        return subprocess.run(
            [sys.executable, "-m", "ratbern.cli", *args], capture_output=True, text=True
        )

    ok = run("build", "--spec", str(valid)).returncode == 0
    ok = ok and run("certify", "--spec", str(valid), "--grid", "101").returncode == 0
    ok = ok and run("build", "--spec", str(violating)).returncode == 2
    ok = ok and run(
        "converge", "--spec", str(violating), "--f", "e2", "--n-list", "3"
    ).returncode == 2
    for cmd in (
        ("build", "--spec", str(malformed)),
        ("certify", "--spec", str(malformed)),
        ("converge", "--spec", str(malformed), "--f", "e2", "--n-list", "4"),
        ("voronovskaja", "--spec", str(malformed), "--f", "e2", "--x", "0.5", "--n-list", "4"),
    ):
        ok = ok and run(*cmd).returncode == 1
    args = ("certify", "--spec", str(valid), "--suite", "all", "--grid", "101")
    ok = ok and run(*args).stdout == run(*args).stdout
    _report(10, "CLI exit-code table and determinism", ok)
