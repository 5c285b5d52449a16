import math
from dataclasses import astuple

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expdioph.baker import kc_value
from expdioph.oracle import step2_bruteforce
from expdioph.sieve import rows as R
from expdioph.sieve.pipeline import build_units
from expdioph.sieve.candidates import (
    Candidate,
    bigx_large_candidates,
    bigx_small_candidates,
    divisors_of_power,
    x1_small_candidates,
)
from expdioph.sieve.resolve import Hit, kernel_lattice, lattice_points, power_of, resolve, resolve_scan


# rows


def test_large_rows_counts():
    assert len(R.bigx_large_rows()) == 25
    assert len(R.x1_large_rows()) == 18
    assert max(r.z for r in R.x1_large_rows()) == 19


def test_large_rows_cover_reference_cells():
    cells = {(r.z, r.X) for r in R.bigx_large_rows()}
    assert cells == set(R.REFERENCE_C1)


def test_admissible_large():
    assert [c for c in range(11, 30) if R.admissible_large(c)] == [
        11, 12, 13, 15, 17, 18, 19, 20, 21, 22, 23, 24, 26, 28, 29]


def test_small_rows_counts():
    rows = R.bigx_small_rows()
    assert len(rows) == 526
    assert len(R.x1_small_rows()) == 235


def test_divisors_of_power():
    assert divisors_of_power(6, 2) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert divisors_of_power(6, 2, 3, 12) == [3, 4, 6, 9]


# candidates


BRUTE_CELLS = [(11, 3, 2), (13, 3, 2), (12, 4, 3), (17, 4, 3), (11, 5, 4), (21, 3, 3), (23, 3, 2)]


@pytest.mark.parametrize("c,z,X", BRUTE_CELLS)
def test_generator_matches_bruteforce(c, z, X):
    got = sorted(astuple(k) for k in bigx_large_candidates(z, X, c))
    ref = sorted(step2_bruteforce(c, z, X, R.kc_closed(c)))
    assert got == ref


def test_planted_solution_is_generated():
    # 5 + 3^3 = 2^5 must reach the resolver
    ks = list(bigx_small_candidates(2, 5, 3, 3, kc_value(2)))
    assert Candidate(5, 1, 3, -1, 2, 1, 3, 5, 8) in ks


def test_x1_candidates_sum_to_power():
    for k in x1_small_candidates(3, 3, 0, 858 * 3):
        assert k.a + k.b == 27 and k.x == k.y == 1


# resolution


FIXTURES = [
    (Candidate(5, 1, 3, -1, 2, 1, 1, 3, 2), 60, [(1, 3, 5), (3, 1, 7)]),
    (Candidate(13, 1, 3, -1, 2, 1, 1, 4, 4), 60, [(1, 5, 8)]),
    (Candidate(7, 1, 2, -1, 3, 1, 1, 2, 3), 60, [(2, 5, 4)]),
    (Candidate(5, 1, 3, -1, 2, 1, 1, 3, 1), 60, []),
    (Candidate(5, 1, 3, -1, 2, 1, 1, 3, 4), 60, []),
]


@pytest.mark.parametrize("cand,Z1,expected", FIXTURES)
def test_resolve_fixtures(cand, Z1, expected):
    for f in (resolve, resolve_scan):
        hits = f(cand, Z1)
        assert [(h.X, h.Y, h.Z) for h in hits] == expected
        for h in hits:
            assert h.a**h.X + h.b**h.Y == h.c**h.Z


def test_resolve_agrees_with_scan_on_real_candidates():
    units, _ = build_units("x1", "small", c_range=(2, 14))
    seen = 0
    for u in units[::7]:
        for k in list(x1_small_candidates(u.c, u.z, u.t, u.Z1))[:3]:
            Z1 = min(u.Z1, 250)
            assert resolve(k, Z1) == resolve_scan(k, Z1)
            seen += 1
    assert seen >= 100


def test_power_of():
    assert power_of(3**500, 3) == 500
    assert power_of(3**500 + 1, 3) is None
    assert power_of(2, 3) is None


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 60)), min_size=1, max_size=3))
def test_kernel_lattice_is_exact(conds):
    hX, s, hY = kernel_lattice(conds)
    assert 0 <= s < hY
    Xs, Ys = lattice_points(hX, s, hY, 40, 40)
    got = set(zip(Xs.tolist(), Ys.tolist()))
    want = {(X, Y) for X in range(1, 41) for Y in range(1, 41)
            if all((u * X + v * Y) % m == 0 for u, v, m in conds)}
    assert got == want
