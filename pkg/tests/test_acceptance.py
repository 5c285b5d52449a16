"""End-to-end acceptance checks, one test group per criterion.

Each test records a PASS/FAIL line through the `criterion` fixture; the lines
are repeated in the terminal summary. Tolerances are pinned as constants.
Known discrepancies run as strict xfails: the check executes, fails, and the
suite errors if it ever starts passing.
"""

import os
import random
import time
from dataclasses import astuple
from pathlib import Path

import pytest

from expdioph import fermat, oracle
from expdioph.baker import KC_TABLE, SMALL_C, kc_bound, th3_bound_suite
from expdioph.cli import EXPECTED, TH3_FIGURES, TH3_Z_FINAL, WIEFERICH_MAX, th3_checks
from expdioph.sieve import pipeline as P
from expdioph.sieve import rows as R
from expdioph.sieve.lt2z import search_x1y1_Z_lt_2z

KC_BAND = 0.05          # K_c may sit at most 5% below the table
COUNT_BAND = 0.02       # stage counts within 2%
CAP_BAND = 0.10         # bound caps at most 10% below the figure
STEP2_REFERENCE = 3026
SMALL_COUNTS = {"bigx": (526, 1322, 700), "x1": (235, 629, 351)}
RUNS = Path(__file__).resolve().parent.parent / "runs"


def _hits(res):
    return {astuple(h) for h in res}


# 1


def test_criterion_1_exceptional_lists(criterion):
    t = time.time()
    rep = oracle.verify_exceptional_list(16)
    dt = time.time() - t
    counts = {(r["a"], r["b"], r["c"]): len(r["solutions"]) for r in rep.records}
    shape = all(n == (3 if (a, b, c) == (3, 5, 2) else 2) for (a, b, c), n in counts.items())
    ok = rep.passed and shape and dt < 60
    criterion(1, ok, f"{len(counts)} triples, counts exact={shape}, {dt:.2f}s")
    assert ok, rep.failures


# 2


def test_criterion_2_fixed_lines(criterion):
    rep = oracle.order_table(k_values=())
    criterion(2, rep.passed, "eight fixed lines reproduced" if rep.passed else "; ".join(rep.failures))
    assert rep.passed


@pytest.mark.xfail(strict=True, reason="2^k + 1 line: scan gives e = k for both entries, listed as k + 1")
def test_criterion_2_parametric_line(criterion):
    rep = oracle.order_table()
    bad = [f for f in rep.failures]
    criterion(2, rep.passed, f"parametric line: {len(bad)} of 14 k-values differ (computed k, listed k+1)")
    assert rep.passed


# 3


def test_criterion_3_kc(criterion):
    t = time.time()
    vals = {c: kc_bound(c) for c in SMALL_C}
    dt = time.time() - t
    ok = all((1 - KC_BAND) * KC_TABLE[c] <= v <= KC_TABLE[c] for c, v in vals.items()) and dt < 1
    criterion(3, ok, ", ".join(f"{c}:{v:.1f}" for c, v in vals.items()) + f" in {dt:.3f}s")
    assert ok


# 4


def _within(got, want):
    return abs(got - want) <= COUNT_BAND * want


def test_criterion_4_stage_lists(criterion):
    cells = {(r.z, r.X) for r in R.bigx_large_rows()}
    ok_pairs = len(cells) == 25 and cells == set(R.REFERENCE_C1)
    detail = [f"pairs={len(cells)} exact={ok_pairs}"]
    ok = ok_pairs
    for branch, want in SMALL_COUNTS.items():
        _, st = P.build_units(branch, "small")
        got = (st["rows"], st["rows_t"], st["rows_z"])
        ok &= all(_within(g, w) for g, w in zip(got, want))
        detail.append(f"{branch} {'/'.join(map(str, got))}")
    criterion(4, ok, ", ".join(detail))
    assert ok


@pytest.mark.xfail(strict=True, reason="large-c big-x Step 2 count differs from the reference 3026")
def test_criterion_4_step2_count(criterion):
    counts = {}
    for mode in ("reference", "union"):
        units, _ = P.build_units("bigx", "large", c1_mode=mode)
        counts[mode], _ = P.run_units("bigx", "large", units, workers=1)
    ok = any(_within(n, STEP2_REFERENCE) for n in counts.values())
    criterion(4, ok, f"step-2 candidates {counts['reference']} (reference c ranges), "
                     f"{counts['union']} (widest ranges) vs {STEP2_REFERENCE}")
    assert ok


# 5


def test_criterion_5_bigx_large(criterion):
    t = time.time()
    res = P.run_pipeline("bigx", "large", workers=1)
    dt = time.time() - t
    ok = _hits(res.solutions) == EXPECTED[("bigx", "large")] and dt < 3600
    criterion(5, ok, f"big-x large-c: {res.stats['candidates']} candidates, "
                     f"{len(res.solutions)} solutions, {dt:.0f}s")
    assert ok


def test_criterion_5_bigx_small(criterion):
    t = time.time()
    res = P.run_pipeline("bigx", "small", workers=P.default_workers())
    dt = time.time() - t
    ok = _hits(res.solutions) == EXPECTED[("bigx", "small")] and dt < 8 * 3600
    criterion(5, ok, f"big-x small-c: {len(res.solutions)} solutions, {dt:.0f}s")
    assert ok


def test_criterion_5_x1_small(criterion):
    t = time.time()
    res = P.run_pipeline("x1", "small", workers=P.default_workers())
    lt = search_x1y1_Z_lt_2z()
    dt = time.time() - t
    got = _hits(res.solutions) | _hits(lt.hits)
    ok = got == EXPECTED[("x1", "small")]
    criterion(5, ok, f"x=y=1 small-c with Z<2z: {len(got)} tuples, {dt:.0f}s")
    assert ok


# 6

X1_LARGE_Z = (2, 19)
X1_LARGE_Z2_C = 2000
SPOT_UNITS = 25


def test_criterion_6_x1_large_restricted(criterion):
    """Resumes the checkpoint under runs/ (computing whatever is missing), then
    re-runs a random sample of units from scratch against the stored records."""
    path = Path(os.environ.get("EXPDIOPH_X1_LARGE_CHECKPOINT", RUNS / "x-eq-1_large-c.jsonl"))
    units, _ = P.build_units("x1", "large", z_range=X1_LARGE_Z, z2_c_max=X1_LARGE_Z2_C)
    t = time.time()
    n, hits = P.run_units("x1", "large", units, checkpoint=str(path))
    dt = time.time() - t
    done = P.load_checkpoint(str(path), P._header("x1", "large", units))
    complete = {u.key() for u in units} <= set(done)
    rng = random.Random(20240611)
    spot_ok = True
    for u in rng.sample(units, SPOT_UNITS):
        spot_ok &= P.run_unit("x1", "large", u) == done[u.key()]
    ok = complete and spot_ok and not hits
    criterion(6, ok, f"{len(units)} units (z in [3,19], z=2 with c<=2000), {n} candidates, "
                     f"{len(hits)} solutions, resume {dt:.0f}s, {SPOT_UNITS} units recomputed={spot_ok}")
    assert ok


# 7


def test_criterion_7_wieferich(criterion):
    out, ok = [], True
    t = time.time()
    for c, lim in WIEFERICH_MAX.items():
        V, Z = fermat.wieferich_max(c, 6 * 10**5 - 1)
        ok &= V <= lim
        out.append(f"{c}: V={V} at Z={Z}")
    dt = time.time() - t
    ok &= dt < 600
    criterion(7, ok, ", ".join(out) + f" in {dt:.1f}s")
    assert ok


# 8


def _th3_rows():
    rows = []
    for c in (17, 257, 65537):
        rows += th3_checks(c, th3_bound_suite(c))
    return rows


def test_criterion_8_caps(criterion):
    t = time.time()
    rows = [r for r in _th3_rows() if (r["c"], r["cap"]) != (17, "min_cap_large_gcd")]
    final = max(th3_bound_suite(c)["Z_cap_final"] for c in (17, 257, 65537))
    dt = time.time() - t
    ok = all(r["passed"] for r in rows) and (1 - CAP_BAND) * TH3_Z_FINAL <= final <= TH3_Z_FINAL and dt < 1
    criterion(8, ok, f"{len(rows)} caps within band, final Z cap {final} <= {TH3_Z_FINAL}, {dt:.3f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="c = 17 min{z, Z} cap computes to 12, figure is 10")
def test_criterion_8_c17_min_cap(criterion):
    r = next(r for r in _th3_rows() if (r["c"], r["cap"]) == (17, "min_cap_large_gcd"))
    criterion(8, r["passed"], f"c=17 min cap {r['value']} vs figure {r['figure']}")
    assert r["passed"]


# 9


def test_criterion_9_fermat_pipeline(criterion):
    t = time.time()
    detail, ok = [], True
    for c in fermat.FERMAT_C:
        stages = fermat.th3_pipeline(c)
        v = fermat.verdict(stages)
        ok &= v == "only (2, c-2)"
        by = {s.name: s for s in stages}
        if "bounds" in by:
            ok &= by["bounds"].detail["threshold_cap10"] <= 21
        if "z>Z" in by:
            rows = by["z>Z"].detail["rows"]
            ok &= all(r["witness"] for r in rows if r["tabulated"])
        detail.append(f"{c}: {v}")
    tab = [fermat.jacobi_sieve_check(c, Z) for (c, Z) in fermat.JACOBI_TABLE]
    ok &= len(tab) == 7 and all(tab)
    dt = time.time() - t
    ok &= dt < 1800
    criterion(9, ok, ", ".join(detail) + f", 7 table rows witnessed, {dt:.1f}s")
    assert ok


# 10


def test_criterion_10_property_suites(criterion):
    import test_arith
    import test_baker
    import test_fermat
    import test_oracle

    suites = [
        test_arith.test_lte_matches_direct_valuation_odd,
        test_arith.test_lte_matches_direct_valuation_two,
        test_arith.test_ext_order_laws,
        test_baker.test_madic_bound_is_never_beaten,
        test_fermat.test_odd_coordinate_is_power_of_two_mod_c,
        test_oracle.test_planted_solution_order_invariant,
    ]
    t = time.time()
    for s in suites:
        s()  # each runs its own 1000 generated cases
    inv = oracle.verify_known_solution_invariants(16)
    abp = oracle.abp_check()
    dt = time.time() - t
    ok = inv.passed and abp.passed and dt < 300
    criterion(10, ok, f"{len(suites)} randomized suites x 1000 cases, known-solution invariants "
                      f"{inv.passed}, abp empty {abp.passed}, {dt:.0f}s")
    assert ok
