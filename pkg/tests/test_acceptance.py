"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import os
import time
from fractions import Fraction
from math import gcd

import numpy as np

from genusgauge.dedekind import big_g, big_n, g_roots_table, twice_g_sign_table, twice_g_table
from genusgauge.fixtures import load_fixtures, replay
from genusgauge.floer import SpincQLabel, Which, d_lens_2k1, d_lens_2k1_twist_diff, delta_lens, q_bundle_d, s1s2_d
from genusgauge.identities import IDENTITIES, IdentityGrid, verify_identities
from genusgauge.obstruct import (
    HomologySphere,
    lens_feasible,
    mbound_check,
    region,
    rho_bound,
    rho_q_bundle,
    rp2_test,
    spin_check,
    spin_cor,
)
from genusgauge.scan import run_scan

half = Fraction(1, 2)
WORKERS = os.cpu_count() or 1


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_1_two_g_equals_n(capsys):
    start = time.perf_counter()
    rep = run_scan("two_g_equals_n", workers=WORKERS)
    elapsed = time.perf_counter() - start
    ok = rep.complete and rep.ok and rep.checked > 0 and elapsed < 60
    report(capsys, 1, ok, f"{rep.summary_line()} in {elapsed:.1f}s")


def test_2_three_formulas_agree(capsys):
    evaluations, worst, mismatches = 0, 0.0, 0
    for k in range(1, 201):
        p = 2 * k
        i_values = np.arange(-p, 2 * p)
        for q in range(1, p, 2):
            if gcd(q, k) != 1:
                continue
            by_def = twice_g_table(k, q, i_values)
            by_sign = twice_g_sign_table(k, q, i_values)
            by_roots = g_roots_table(k, q, i_values)
            mismatches += int(np.count_nonzero(by_def != by_sign))
            dev = max(np.abs(by_roots.real - by_def / 2).max(), np.abs(by_roots.imag).max())
            worst = max(worst, float(dev))
            evaluations += i_values.size
    ok = mismatches == 0 and worst <= 1e-9
    report(capsys, 2, ok, f"{evaluations} evaluations, exact mismatches {mismatches}, worst roots deviation {worst:.2e}")


def test_3_identities(capsys):
    rep = verify_identities(IdentityGrid(k_max=60, j_max=60))
    missing = [name for name in IDENTITIES if rep.checked.get(name, 0) == 0]
    first = rep.counterexamples[0] if rep.counterexamples else None
    ok = rep.ok and not missing
    report(capsys, 3, ok, f"{rep.total_checked} checks over {len(rep.checked)} identities, "
                          f"counterexamples {len(rep.counterexamples)}, missing {missing}, first {first}")


def test_4_point_values(capsys):
    bad = []

    def expect(label, got, want):
        if got != want:
            bad.append((label, got, want))

    expect("G(2,1)", big_g(1, 1), half)
    expect("N(2,1)", big_n(1, 1), 1)
    for k in range(1, 51):
        for s in range(k):
            # twisting by k shifts d on L(2k, 1) by k/2 - s
            direct = d_lens_2k1(k, s + k) - d_lens_2k1(k, s)
            expect(("twist", k, s), direct, Fraction(k, 2) - s)
            expect(("twist diff", k, s), d_lens_2k1_twist_diff(k, s), direct)
    for h in range(1, 21):
        expect(("bundle bot t1", h), q_bundle_d(h, 0, SpincQLabel.T1, Which.BOT), half)
    for n in range(1, 51):
        expect(("s1s2 top", n), s1s2_d(n, Which.TOP), Fraction(n, 2))
        expect(("s1s2 bot", n), s1s2_d(n, Which.BOT), Fraction(-n, 2))
    for h in range(1, 11):
        for e in range(-40, 41, 2):
            expect(("rho", h, e), rho_q_bundle(h, e), Fraction(-e, 2))
    report(capsys, 4, not bad, f"mismatches {bad[:3]}")


def test_5_bundle_consistency(capsys):
    rep = run_scan("tdbundle_consistency", {"h_max": 20, "e_max": 40}, workers=WORKERS)
    report(capsys, 5, rep.complete and rep.ok and rep.checked > 0, rep.summary_line())


def test_6_feasibility(capsys):
    results = {
        "L(4,1) has no essential RP2": not lens_feasible(2, 1, 1, 0).feasible,
        "L(4,1) twist test obstructs RP2": rp2_test([Fraction(-3, 4), 0, Fraction(1, 4), 0], 2) is False,
        "Klein bottle in L(4,1) with no extra summands":
            lens_feasible(2, 1, 2, 0).feasible and lens_feasible(2, 1, 2, 0).certificate["counts"] == [0, 0],
        "S4 region at h=1 is {-2, 2}": [e for h, e, _ in region(HomologySphere(), 1)] == [-2, 2],
        "rho=4 forces h >= 2": not rho_bound(4, 1, 0).feasible and rho_bound(4, 2, 0).feasible,
        "rho=4, e=0 and k_c=1 force h >= 3":
            not rho_bound(4, 2, 0, k_c=1).feasible and rho_bound(4, 3, 0, k_c=1).feasible,
    }
    failed = [name for name, ok in results.items() if not ok]
    report(capsys, 6, not failed, f"{len(results)} cases, failed {failed}")


def test_7_cross_coherence(capsys):
    # lens_feasible sees (k, q) only through N and mbound_check only through Delta,
    # so the (h, e) grid is run once per distinct (N, Delta) with real calls
    keys = {}
    pairs = 0
    for k in range(1, 101):
        for q in range(1, 2 * k, 2):
            if gcd(q, k) != 1:
                continue
            pairs += 1
            keys.setdefault((big_n(k, q), delta_lens(k, q)), (k, q))
    disagreements = []
    for (_, delta), (k, q) in keys.items():
        for h in range(1, 13):
            for e in range(-40, 41):
                if lens_feasible(k, q, h, e).feasible != mbound_check(delta, h, e).feasible:
                    disagreements.append((k, q, h, e))
    congruence = run_scan("congruence_coherence", {"max_p": 500}, workers=WORKERS)
    spin_gaps = []
    for sigma in range(0, 7):
        for b_minus in range(0, 7 - sigma):
            b_plus = sigma + b_minus
            for h in range(1, 7):
                for e in range(-60, 61):
                    if spin_check(sigma, b_plus, b_minus, h, e).feasible and not spin_cor(sigma, b_plus, b_minus, h, e).feasible:
                        spin_gaps.append((sigma, b_plus, b_minus, h, e))
    ok = not disagreements and congruence.complete and congruence.ok and not spin_gaps
    report(capsys, 7, ok, f"{pairs} lens pairs in {len(keys)} (N, Delta) classes, disagreements {len(disagreements)}; "
                          f"{congruence.summary_line()}; spin gaps {len(spin_gaps)}")


def test_8_fixture_replay(capsys):
    results = replay(load_fixtures())
    paper = [r for r in results if r.fixture.tag == "PUBLISHED"]
    failed = [r.fixture.name for r in results if not r.passed]
    names = {r.fixture.name for r in paper}
    ok = not failed and {"non-simple Delta e=0", "surgery d-table"} <= names
    report(capsys, 8, ok, f"{len(results)} fixtures ({len(paper)} from published values), failed {failed}")
