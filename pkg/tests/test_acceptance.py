"""One test per acceptance criterion; each prints a PASS/FAIL line.

Criterion 3 runs the M = 121 search (several minutes on one core) and
carries the ``slow`` marker, so ``-m "not slow"`` leaves it out.
"""
import time
from collections import Counter
from fractions import Fraction

import pytest

from burau_image.chains import (
    n_value,
    reductive_factor,
    search,
    verify_candidates,
)
from burau_image.invariants import (
    freeness_suite,
    homomorphism_suite,
    integrality_suite,
    number_theory_suite,
    pingpong_suite,
    power_suite,
)
from burau_image.quaternionic import elementary_det

from .conftest import record_acceptance


def summary(r):
    first = f"; first failure: {r.failures[0]}" if r.failures else ""
    return f"{r.name}: {r.samples} samples, {len(r.failures)} failures{first}"


def report(capsys, n, ok, detail):
    record_acceptance(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}", capsys)
    assert ok, detail


@pytest.fixture(scope="module")
def m50_run():
    t0 = time.perf_counter()
    res = search(50)
    ver = verify_candidates(res.candidates, lift=True)
    return res, ver, time.perf_counter() - t0


def test_criterion_1_exact_rf(capsys):
    def compute():
        rf = reductive_factor(Fraction(31, 46), -1, Fraction(-38, 43), 1)
        n1, n2 = n_value(31, 46), n_value(-38, 43)
        return rf, n1, n2, rf * rf >= max(n1, n2)

    reps = 200
    t0 = time.perf_counter()
    for _ in range(reps):
        rf, n1, n2, ineq = compute()
    per_call = (time.perf_counter() - t0) / reps
    # independent oracle for b^4 det g[a/b]
    oracle = (46**4 * elementary_det(Fraction(31, 46)), 43**4 * elementary_det(Fraction(-38, 43)))
    ok = rf == 3081 and (n1, n2) == (7434453, 8173893) == oracle and ineq and per_call < 1e-3
    report(capsys, 1, ok, f"rf = {rf}, rf^2 = {rf * rf} >= max({n1}, {n2}); {per_call * 1e6:.0f} us per evaluation")


def test_criterion_2_search_m50(capsys, m50_run):
    res, ver, seconds = m50_run
    hits = [c for c in ver.certificates if c.counterexample and (c.rd, c.mrf) == (40, 3081)]
    all_certified = all(c.counterexample for c in ver.certificates)
    ok = ver.raw_count >= 1 and all_certified and bool(hits)
    report(capsys, 2, ok,
           f"M=50: {ver.raw_count} verified biminimal chains, {len(hits)} with (rd, Mrf) = (40, 3081), "
           f"all in U with M12 != 0: {all_certified}; search + verify {seconds:.1f}s")


@pytest.mark.slow
def test_criterion_3_search_m121(capsys):
    t0 = time.perf_counter()
    res = search(121)
    t1 = time.perf_counter()
    ver = verify_candidates(res.candidates)
    t2 = time.perf_counter()
    min_rd = ver.min_rd()
    orbits, orbits_sym = ver.orbit_count(), ver.orbit_count(with_symmetries=True)
    sextants = Counter(len(c.sextant) for c in ver.certificates)
    record_acceptance(
        f"{'PASS' if sextants == Counter({1: ver.raw_count}) else 'FAIL'} criterion 9 (M=121 chains): "
        f"sextant hit counts {dict(sextants)}", capsys)
    record_acceptance(
        f"{'PASS' if orbits_sym == 9 else 'NOT MET'} criterion 3 soft target (9 after orbit dedup): "
        f"{orbits} classes under inversion, {orbits_sym} under inversion and both sign symmetries", capsys)
    ok = ver.raw_count >= 9 and min_rd == 22 and all(c.counterexample for c in ver.certificates)
    report(capsys, 3, ok,
           f"M=121: {ver.raw_count} verified biminimal chains ({ver.rejected} rejected), min rd {min_rd}; "
           f"search {t1 - t0:.0f}s, verify {t2 - t1:.0f}s")
    assert sextants == Counter({1: ver.raw_count})


def test_criterion_4_homomorphisms(capsys):
    r = homomorphism_suite(1000, seed=0, max_len=12)
    report(capsys, 4, r.ok, summary(r))


def test_criterion_5_freeness(capsys):
    t0 = time.perf_counter()
    r = freeness_suite(500, seed=0, max_len=8, height=5)
    dt = time.perf_counter() - t0
    report(capsys, 5, r.ok and dt < 60, f"{summary(r)} in {dt:.1f}s")


def test_criterion_6_pingpong(capsys):
    r = pingpong_suite(200, seed=0)
    report(capsys, 6, r.ok, summary(r))


def test_criterion_7_number_theory(capsys):
    r = number_theory_suite(1000, seed=0, height=30)
    report(capsys, 7, r.ok, summary(r))


def test_criterion_8_powers(capsys):
    r = power_suite(seed=0, rationals=10)
    report(capsys, 8, r.ok, summary(r))


def test_criterion_9_integrality_and_sextants(capsys, m50_run):
    r = integrality_suite(1000, seed=0)
    _, ver, _ = m50_run
    hits = [len(c.sextant) for c in ver.certificates]
    lifts = all(c.burau_lift is not None for c in ver.certificates)
    ok = r.ok and bool(hits) and all(h == 1 for h in hits) and lifts
    report(capsys, 9, ok, f"{summary(r)}; M=50 chains: sextant hits {hits}, Burau lifts found: {lifts}")
