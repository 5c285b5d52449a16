"""Explicit lower bounds for linear forms in two logarithms, and the Z-bounds built on them.

Every evaluator works in interval arithmetic (mpmath.iv, 50 digits) and
returns the upper endpoint, so results are never below the exact value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
from mpmath import iv

from .arith import PreconditionError, big_c, c_prime, is_perfect_power

iv.dps = 50

SMALL_C = (2, 3, 5, 6, 7, 10, 14)
KC_TABLE = {2: 13100, 3: 7400, 5: 1900, 6: 12500, 7: 1100, 10: 3600, 14: 2000}

def I(x) -> "iv.mpf":
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    return iv.mpf(x)


def hi(x) -> float:
    """Upper endpoint as a float, rounded up."""
    v = x.b if hasattr(x, "b") else mpmath.mpf(x)
    f = float(v)
    return f if f >= v else math.nextafter(f, math.inf)


def lo(x) -> float:
    v = x.a if hasattr(x, "a") else mpmath.mpf(x)
    f = float(v)
    return f if f <= v else math.nextafter(f, -math.inf)


def ilog(n) -> "iv.mpf":
    return iv.log(I(n))


def _check_height(H, M: int) -> None:
    if hi(I(H)) < lo(ilog(M)) * (1 - 1e-15):
        raise PreconditionError("height must be >= log M")


def bu_madic_bound(M: int, g: int, H1, H2, b1: int, b2: int) -> float:
    """Upper bound for nu_M(alpha1^b1 - alpha2^b2) (two-log M-adic estimate)."""
    if M < 2 or g < 1 or b1 < 1 or b2 < 1:
        raise PreconditionError("malformed query")
    _check_height(H1, M)
    _check_height(H2, M)
    h1, h2 = I(H1), I(H2)
    lm = ilog(M)
    bp = I(b1) / h2 + I(b2) / h1
    br = iv.log(bp) + iv.log(lm) + I("0.64")
    m = iv.mpf([max(br.a, 4 * lm.a), max(br.b, 4 * lm.b)])
    return hi(I("53.6") * g * h1 * h2 / lm**4 * m**2)


def bl_padic_bound(D: int, p: int, f: int, g: int, H1, H2, b1: int, b2: int) -> float:
    """Upper bound for nu_pi of a two-term form over a number field of degree D."""
    if D < 1 or f < 1 or g < 1 or b1 < 1 or b2 < 1:
        raise PreconditionError("malformed query")
    _check_height(H1, p)
    _check_height(H2, p)
    h1, h2 = I(H1), I(H2)
    lp = ilog(p)
    bp = I(b1) / h2 + I(b2) / h1
    terms = [iv.log(bp) + iv.log(lp) + I("0.4"), I(10) * f / D * lp, I(10)]
    m = iv.mpf([max(t.a for t in terms), max(t.b for t in terms)])
    return hi(I(24) * D * D * p * g * h1 * h2 / (I(f) ** 2 * (p - 1) * lp**4) * m**2)


def lmn_complex_bound(D: int, height, log_abs, k: int) -> float:
    """Magnitude of the lower bound for log|alpha^k - 1| with |alpha| = 1."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    Ha = I(D) * I(height) + 22 * I(log_abs)
    Ha = iv.mpf([max(Ha.a, 40), max(Ha.b, 40)])
    terms = [iv.log(I(k) / 25) + I("2.35") + I("10.2") / D, I(34) / D, I("0.1") / iv.sqrt(I(D) / 2)]
    Bc = iv.mpf([max(t.a for t in terms), max(t.b for t in terms)])
    return hi(I(9) / 8 * D * D * Ha * Bc**2)


def kappa(c: int) -> "iv.mpf":
    if c % 4 == 2:
        return I(1)
    return ilog(c) / ilog(c - 1)


def fixed_point(F, start: float, max_iter: int = 1000) -> float:
    """Iterate t <- F(t) downward from an overestimate; returns an upper bound."""
    t = start
    for _ in range(max_iter):
        nt = F(t)
        if nt >= t:
            return t if nt - t < 1e-9 * t else _bad(t, nt)
        if t - nt < 1e-12 * t:
            return nt
        t = nt
    raise ArithmeticError("fixed-point iteration did not converge")


def _bad(t, nt):
    raise ArithmeticError(f"start {t} is not an overestimate ({nt})")


@dataclass
class KcProfile:
    c: int
    cp: int
    C: int
    kappa: float
    first_case: float
    second_case: Optional[float]
    value: float


def kc_profile(c: int) -> KcProfile:
    if c < 2 or (c > 2 and is_perfect_power(c)):
        raise PreconditionError("c must be >= 2 and not a perfect power")
    C = big_c(c)
    lc, lC = ilog(c), ilog(C)
    k = kappa(c)
    lam = 2 * iv.exp(I("0.64")) * lC / lc
    A = I("53.6") * k * lc**2 / lC**4
    edge = I(C) ** 4 / lam
    first = min(hi(edge), hi(I("857.6") * k * lc**2 / lC**2))
    # T < A log^2(lam T) with lam T > C^4
    second = fixed_point(lambda t: hi(A * iv.log(lam * I(t)) ** 2), 1e12)
    feasible = lo(edge) < second
    value = max(first, second) if feasible else first
    return KcProfile(c, c_prime(c), C, hi(k), first, second if feasible else None, value)


def kc_bound(c: int) -> float:
    """K_c with Z < K_c log a log b / log^2 c."""
    return kc_profile(c).value


def kc_value(c: int) -> float:
    """The constant used by the sieves: table entry for the seven small c."""
    if c in KC_TABLE:
        return float(KC_TABLE[c])
    return kc_bound(c)


def x1y1_bound(c: int, z: int) -> Optional[int]:
    """Z bound when x = y = 1, or None for the pairs the estimate does not cover."""
    if (c == 2 and z <= 3) or (c == 3 and z == 2):
        return None
    return math.ceil(858 * z) - 1


# two-log refinement with explicit interpolation parameters


def log_ratio(c: int, M: int) -> Union[Fraction, "iv.mpf"]:
    """log c / log M, exactly when both are powers of one integer."""
    rc, kc = is_perfect_power(c) or (c, 1)
    rm, km = is_perfect_power(M) or (M, 1)
    if rc == rm:
        return Fraction(kc, km)
    return ilog(c) / ilog(M)


def modulus_for(c: int, z: int, t: int) -> tuple:
    C = big_c(c)
    if t >= z - 1:
        return (4, "C1") if c == 2 else (C, "C2")
    return C ** (z - t), "C3"


def _floor_certain(x) -> Optional[int]:
    if isinstance(x, Fraction):
        return math.floor(x)
    a, b = mpmath.floor(x.a), mpmath.floor(x.b)
    return int(a) if a == b else None


@dataclass
class StrongParams:
    c: int
    z: int
    X: int
    t: int
    ell: int
    Zu: int
    k: Fraction
    L: int
    M: int
    case: str
    a1: object
    a2: object
    K: int
    R1: int
    R2: int
    S1: int
    S2: int
    R: int
    S: int
    gamma: Fraction
    Z2: int


def strong_params(c: int, z: int, X: int, t: int, ell: int, Zu: int, k: Fraction, L: int) -> Optional[StrongParams]:
    if not (0 <= t <= z) or L < 2 or k <= 0 or X < 1 or ell < 3:
        raise PreconditionError("malformed parameters")
    if is_perfect_power(big_c(c)) and big_c(c) > 4:
        raise PreconditionError("C must be a prime power")
    M, case = modulus_for(c, z, t)
    rho = log_ratio(c, M)
    a1 = z * rho
    a2 = a1 / X
    Kf = _floor_certain((k if isinstance(a1, Fraction) else I(k)) * L * a1 * a2)
    if Kf is None:
        return None
    K = Kf + 1
    # a2 / a1 = 1 / X exactly
    R1 = math.isqrt(L // X) + 1
    R2 = math.isqrt((K - 1) * L // X) + 1
    S1 = math.isqrt(L * X) + 1
    S2 = math.isqrt((K - 1) * L * X) + 1
    R, S = R1 + R2 - 1, S1 + S2 - 1
    gamma = Fraction(1, 2) - Fraction(K * L, 6 * R * S)
    z2 = iv.sqrt(I(k)) * L * z * 2 * I(a1) / X
    Z2 = int(mpmath.floor(z2.b)) + 1
    return StrongParams(c, z, X, t, ell, Zu, k, L, M, case, a1, a2, K, R1, R2, S1, S2, R, S, gamma, Z2)


def strong_applied_refine(p: Optional[StrongParams]) -> Optional[int]:
    """Z bound from one (k, L) choice, or None when the criterion is not certain."""
    if p is None or p.K < 3:
        return None
    K, L = p.K, p.L
    lM = ilog(p.M)
    eps = I(3) / 2 + iv.log((1 + iv.sqrt(I(K - 1))) * iv.sqrt(I(K)) / (2 * K - 2))
    B = (iv.log(lM) + iv.log(I(p.Zu) / p.z)
         + iv.log(I(p.X) / ilog(p.ell + 1) + 1 / ilog(p.ell - 1))
         - iv.log(I(p.k)) / 2 + eps)
    f1 = 3 * iv.log(I(K * L)) / lM
    f2 = (K - 1) * B / lM
    f3 = I(p.gamma) * L * p.R * I(p.a1)
    f4 = I(p.gamma) * L * p.S * I(p.a2)
    if not (K * (L - 1) > (f1 + f2 + f3 + f4).b):
        return None
    if p.case == "C1":
        base = 2 * K * L - 1
    elif p.case == "C2":
        base = K * L - 1
    else:
        base = K * L * (p.z - p.t) - 1
    return max(base, p.Z2)


def _fast_bound(c: int, z: int, X: int, t: int, ell: int, Zu: int, k: float, L: int) -> Optional[float]:
    """Float estimate of strong_applied_refine, generous near the acceptance edge."""
    M, case = modulus_for(c, z, t)
    lM = math.log(M)
    a1 = z * math.log(c) / lM
    a2 = a1 / X
    K = math.floor(k * L * a1 * a2 * (1 + 1e-12)) + 1
    if K < 3:
        return None
    R = math.isqrt(L // X) + math.isqrt((K - 1) * L // X) + 1
    S = math.isqrt(L * X) + math.isqrt((K - 1) * L * X) + 1
    gamma = 0.5 - K * L / (6 * R * S)
    eps = 1.5 + math.log((1 + math.sqrt(K - 1)) * math.sqrt(K) / (2 * K - 2))
    B = (math.log(lM) + math.log(Zu / z) + math.log(X / math.log(ell + 1) + 1 / math.log(ell - 1))
         - 0.5 * math.log(k) + eps)
    rhs = 3 * math.log(K * L) / lM + (K - 1) * B / lM + gamma * L * (R * a1 + S * a2)
    if K * (L - 1) < rhs * (1 - 1e-9):
        return None
    base = {"C1": 2 * K * L - 1, "C2": K * L - 1}.get(case, K * L * (z - t) - 1)
    return max(base, math.sqrt(k) * L * z * 2 * a1 / X + 1)


def strong_applied_search(c: int, z: int, X: int, t: int, ell: int, Zu: int, rounds: int = 3) -> int:
    """Least certified bound over k = k0/15 (1..60) and L in 2..35, iterated."""
    for _ in range(rounds):
        ranked = []
        for L in range(2, 36):
            for k0 in range(1, 61):
                f = _fast_bound(c, z, X, t, ell, Zu, k0 / 15, L)
                if f is not None and f < Zu + 2:
                    ranked.append((f, k0, L))
        ranked.sort()
        best = Zu
        for f, k0, L in ranked:
            if f > best + 2:
                break
            r = strong_applied_refine(strong_params(c, z, X, t, ell, Zu, Fraction(k0, 15), L))
            if r is not None and r < best:
                best = r
        if best >= Zu:
            break
        Zu = best
    return Zu


def strong_applied_search_exhaustive(c: int, z: int, X: int, t: int, ell: int, Zu: int, rounds: int = 3) -> int:
    """Same search certifying every grid point; slow reference for the ranked version."""
    for _ in range(rounds):
        best = Zu
        for L in range(2, 36):
            for k0 in range(1, 61):
                r = strong_applied_refine(strong_params(c, z, X, t, ell, Zu, Fraction(k0, 15), L))
                if r is not None and r < best:
                    best = r
        if best >= Zu:
            break
        Zu = best
    return Zu


# bounds for Fermat-prime c = m^2 + 1

T1 = Fraction(536, 10) * 2 * 16
T2 = Fraction(537, 10) * 2 * 16 * Fraction(9, 4)
T3 = 24 * 4 * 4
FERMAT_E = {5: 1, 17: 2, 257: 4, 65537: 8}


def _fermat_e(c: int) -> int:
    if c not in (17, 257, 65537):
        raise PreconditionError("c must be 17, 257 or 65537")
    return FERMAT_E[c]


def complex_baker_zbound(c: int, chi) -> int:
    """Largest Z allowed by the complex two-log estimate when Z > chi z, Z odd."""
    _fermat_e(c)
    chi = I(chi)
    if not chi.a > 2:
        raise PreconditionError("chi must exceed 2")
    coef = I(9) / (1 - 2 / chi) * (1 + 22 * iv.pi / ilog(c))

    def F(Z):
        lz = iv.log(I(Z)) + I("4.3")
        m = iv.mpf([max(lz.a, 17), max(lz.b, 17)])
        return hi(coef * m**2 + 1)

    Zs = fixed_point(F, 1e15)
    n = math.ceil(Zs) - 1
    while n + 1 < F(n + 1):
        n += 1
    return n


def delta_const(c: int, parity_even: bool, which: str) -> "iv.mpf":
    """max{t1 E^j, 2.2e4 log^2 c / E^(3-j)} with E at its extreme value."""
    e = _fermat_e(c)
    Eu = 2 * e if parity_even else e
    l2 = ilog(c) ** 2
    if which == "delta":
        a, b = I(T1) * Eu**3, I(22000) * l2
    else:
        a, b = I(T1) * Eu**2, I(22000) * l2 / 4
    return iv.mpf([max(a.a, b.a), max(a.b, b.b)])


def min_cap_large_gcd(c: int) -> int:
    """Largest min{z,Z} compatible with c^(min/3) <= Delta' = c^j < const * min."""
    D = delta_const(c, True, "prime")
    best = 0
    for m in range(1, 200):
        j = -(-m // 3)
        if c**j < hi(D * m):
            best = m
    return best


def _min_bound(c: int, T, parity_even: bool, z_le_Z: bool) -> int:
    """Solve the min{z,Z} inequality of the non-Archimedean estimate over Z[i]."""
    e = _fermat_e(c)
    lc = ilog(c)
    A = I(T3) * c * e / ((c - 1) * lc**2)
    D0 = delta_const(c, parity_even, "delta")
    k0 = I("2") * iv.exp(I("0.4"))
    direct = hi(25 * I(T3) * c * e / (c - 1))
    if z_le_Z:
        g = lambda m: hi(A * iv.log(k0 * T * D0 * I(m) * m) ** 2)
        start = fixed_point(g, 1e12)
        return int(math.floor(max(direct, start)))
    cap1 = min(direct, hi(I(c) ** 5 / (4 * k0) - 1))
    g = lambda m: hi(A * iv.log(k0 * D0 * I(m) * (m + 1)) ** 2)
    start = fixed_point(g, 1e12)
    return int(math.floor(max(cap1, start)))


def th3_bound_suite(c: int) -> dict:
    e = _fermat_e(c)
    out = {"c": c, "min_cap_large_gcd": min_cap_large_gcd(c)}
    # z <= Z, Z even: z bounded, and Z < 4z
    z_even = _min_bound(c, I(4), True, True)
    out["Z_cap_Z_le_z"] = max(_min_bound(c, None, True, False), _min_bound(c, None, False, False))
    out["Z_cap_even"] = max(4 * z_even, out["Z_cap_Z_le_z"])
    chi = {257: Fraction(229, 100), 65537: Fraction(224, 100)}.get(c)
    if chi is not None:
        z_odd = _min_bound(c, I(T2) * e, False, True)
        out["z_cap_odd"] = z_odd
        # Z > chi z from the complex estimate; otherwise Z <= chi z or Z <= z
        out["Z_cap_odd"] = max(complex_baker_zbound(c, chi), math.floor(chi * z_odd), out["Z_cap_Z_le_z"])
        out["chi"] = float(chi)
    out["Z_cap_chi200"] = complex_baker_zbound(c, 200)
    # past Z > 200 min{z, Z} the exponent Z is odd, which c = 17 never allows
    out["Z_cap_final"] = max(200 * out["min_cap_large_gcd"], out["Z_cap_chi200"] if c != 17 else 0)
    return out
