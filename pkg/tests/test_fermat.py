import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expdioph.arith import PreconditionError, ext_order
from expdioph.fermat import (
    FERMAT_C,
    JACOBI_TABLE,
    E_of,
    ab_from_Z,
    beta,
    gauss_pow,
    jacobi_sieve_check,
    min_threshold,
    th3_pipeline,
    verdict,
    wieferich_max,
    wieferich_V,
    zsmall_enumerate,
)
from expdioph.baker import FERMAT_E


def test_ab_examples():
    assert ab_from_Z(17, 2) == (15, 8)
    assert ab_from_Z(17, 3) == (47, 52)
    assert ab_from_Z(5, 3) == (11, 2)
    with pytest.raises(PreconditionError):
        ab_from_Z(7, 2)


@pytest.mark.parametrize("c", FERMAT_C)
def test_sum_of_squares_identity(c):
    for Z in range(1, 1001, 37):
        a, b = ab_from_Z(c, Z)
        assert a * a + b * b == c**Z


@pytest.mark.parametrize("c", FERMAT_C)
def test_binomial_congruences(c):
    # (m + i)^Z = i^Z + Z m i^(Z-1) modulo m^2 = c - 1
    m = 2 ** FERMAT_E[c]
    for Z in range(1, 300):
        a, b = ab_from_Z(c, Z)
        assert a % (c - 1) in (1, c - 2)
        assert b % (c - 1) in ((Z * m) % (c - 1), (-Z * m) % (c - 1))


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(FERMAT_C), st.integers(1, 1000))
def test_odd_coordinate_is_power_of_two_mod_c(c, Z):
    a, b = ab_from_Z(c, Z)
    assert a * a + b * b == c**Z
    r = pow(2, Z - 1, c)
    assert a % c in (r, c - r)
    # hence its extended order mod c is E(e, Z)
    assert ext_order(a, c).order == E_of(FERMAT_E[c], Z)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FERMAT_C), st.integers(0, 400), st.sampled_from([3, 5, 7, 9, 15, 17**3, 10**9 + 7]))
def test_modular_power_matches_exact(c, Z, M):
    w = gauss_pow(beta(c), Z)
    assert gauss_pow(beta(c), Z, M) == w.mod(M)


def test_E_of_matches_order():
    # E(Z) is the extended order of the unit -beta/conj(beta) raised to Z - 1
    for e in (1, 2, 4, 8):
        for Z in range(1, 60):
            assert 2 * e % E_of(e, Z) == 0
    assert E_of(2, 2) == 4 and E_of(2, 3) == 2 and E_of(8, 9) == 2
    # E_c(2) for Fermat primes c = 2^(2e) + 1 is 2e
    for c, e in FERMAT_E.items():
        assert ext_order(2, c).order == 2 * e


def test_zsmall_stage():
    for c in FERMAT_C:
        assert zsmall_enumerate(c).passed


def test_wieferich_values():
    assert wieferich_max(17, 25000) == (5, 20800)
    assert wieferich_V(17, 20800) == 5
    assert wieferich_max(257, 60000)[0] == 3


def test_jacobi_table_entries_hold():
    for (c, Z), (d, side) in JACOBI_TABLE.items():
        assert jacobi_sieve_check(c, Z) == (d, side)


def test_threshold_monotone():
    assert min_threshold(17, 10, 3000) <= min_threshold(17, 12, 3000)


@pytest.mark.slow
@pytest.mark.parametrize("c", FERMAT_C)
def test_pipeline_verdict(c):
    stages = th3_pipeline(c)
    assert verdict(stages) == "only (2, c-2)"
