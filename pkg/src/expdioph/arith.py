"""Exact integer primitives: valuations, extended orders, LTE, Jacobi, CRT."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

import gmpy2
from sympy import factorint, isprime


class PreconditionError(ValueError):
    pass


class NoSolution(ValueError):
    pass


@dataclass(frozen=True)
class ExtOrder:
    modulus: int
    base: int
    order: int
    sign: int


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def iroot(n: int, k: int) -> Optional[int]:
    """Exact k-th root of n >= 0, or None."""
    if n < 0:
        return None
    r, exact = gmpy2.iroot(n, k)
    return int(r) if exact else None


def factor(n: int) -> dict:
    return factorint(n)


def _mult_order(A: int, M: int) -> int:
    # order divides lambda(M); strip prime factors while the power stays 1
    lam = 1
    for p, e in factor(M).items():
        if p == 2 and e >= 3:
            t = 2 ** (e - 2)
        else:
            t = (p - 1) * p ** (e - 1)
        lam = lcm(lam, t)
    n = lam
    for p in factor(lam):
        while n % p == 0 and pow(A, n // p, M) == 1:
            n //= p
    return n


def _ext_order_factored(A: int, M: int) -> Tuple[int, int]:
    n = _mult_order(A % M, M)
    if n % 2 == 0 and pow(A, n // 2, M) == M - 1:
        return n // 2, -1
    return n, 1


def _ext_order_scan(A: int, M: int) -> Tuple[int, int]:
    x = A % M
    E = 1
    while x not in (1, M - 1):
        x = x * A % M
        E += 1
    return E, (1 if x == 1 else -1)


def ext_order(A: int, M: int, method: str = "auto") -> ExtOrder:
    """Least E with A^E = +-1 (mod M), with the sign that occurs."""
    if M < 2:
        raise PreconditionError("modulus must be >= 2")
    if gcd(A, M) != 1:
        raise PreconditionError(f"gcd({A}, {M}) != 1")
    if M <= 2:
        return ExtOrder(M, A, 1, 1)
    if method == "scan" or (method == "auto" and M >= 2**64):
        E, s = _ext_order_scan(A, M)
    else:
        E, s = _ext_order_factored(A, M)
    return ExtOrder(M, A, E, s)


def ext_order_power(A: int, M: int, k: int) -> int:
    if k < 1:
        raise PreconditionError("k must be >= 1")
    E = ext_order(A, M).order
    return E // gcd(E, k)


def val(M: int, A) -> int:
    """M-adic valuation; rational arguments need prime M."""
    if M < 2:
        raise PreconditionError("base must be >= 2")
    if isinstance(A, Fraction) and A.denominator != 1:
        if not isprime(M):
            raise PreconditionError("rational argument needs a prime base")
        return val(M, A.numerator) - val(M, A.denominator)
    A = int(A)
    if A == 0:
        raise PreconditionError("valuation of zero is undefined")
    A = abs(A)
    v = 0
    while A % M == 0:
        A //= M
        v += 1
    return v


def lte(p: int, U: int, V: int, N: int) -> int:
    """nu_p(U^N - V^N) via lifting the exponent; hypotheses are checked."""
    if not isprime(p):
        raise PreconditionError("p must be prime")
    if N < 1:
        raise PreconditionError("N must be >= 1")
    if gcd(U, V) != 1:
        raise PreconditionError("U, V not coprime")
    if U == V:
        raise PreconditionError("U^N - V^N = 0")
    if p == 2:
        if (U - V) % 4:
            raise PreconditionError("need U = V (mod 4)")
    elif (U - V) % p:
        raise PreconditionError("need U = V (mod p)")
    if U % p == 0:
        raise PreconditionError("p divides U and V")
    return val(p, U - V) + val(p, N)


def s_part(A: int, S: Iterable[int]) -> int:
    if A == 0:
        raise PreconditionError("A must be nonzero")
    out = 1
    for p in S:
        out *= p ** val(p, A)
    return out


def jacobi(a: int, d: int) -> int:
    if d < 1 or d % 2 == 0:
        raise PreconditionError("d must be odd and positive")
    a %= d
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if d % 8 in (3, 5):
                t = -t
        a, d = d, a
        if a % 4 == 3 and d % 4 == 3:
            t = -t
        a %= d
    return t if d == 1 else 0


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Tuple[int, int]:
    """Merge x = r1 (m1), x = r2 (m2); moduli need not be coprime."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        raise NoSolution("inconsistent congruences")
    m = m1 // g * m2
    if m1 == 1:
        return r2 % m, m
    k = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % m, m


def crt(pairs: Sequence[Tuple[int, int]]) -> int:
    """Least x >= 0 with x = r_i (mod m_i); pairs are (residue, modulus)."""
    if not pairs:
        raise PreconditionError("need at least one congruence")
    r, m = 0, 1
    for ri, mi in pairs:
        if mi < 1:
            raise PreconditionError("moduli must be >= 1")
        r, m = crt_pair(r, m, ri % mi, mi)
    return r


def solve_linear(a: int, b: int, m: int) -> Optional[Tuple[int, int]]:
    """Solutions of a*y = b (mod m) as (r, step), or None."""
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g:
        return None
    m2 = m // g
    if m2 == 1:
        return 0, 1
    return (b // g) * pow(a // g, -1, m2) % m2, m2


def is_perfect_power(A: int) -> Optional[Tuple[int, int]]:
    """(r, k) with r^k = A and k >= 2 maximal, or None."""
    if A < 1:
        raise PreconditionError("A must be >= 1")
    if A == 1:
        return (1, 2)
    for k in range(A.bit_length(), 1, -1):
        r = iroot(A, k)
        if r is not None and r > 1:
            return (r, k)
    return None


def c_prime(c: int) -> int:
    return 4 if c == 2 else c


def big_c(c: int) -> int:
    """c, or c/2 when c > 2 and c = 2 (mod 4)."""
    return c // 2 if c > 2 and c % 4 == 2 else c


def reduce_triple(a: int, b: int, c: int, d: int) -> Tuple[int, int]:
    if d <= 2 or c % d:
        raise PreconditionError("need d | c and d > 2")
    if min(a, b, c) <= 1 or gcd(a, b) != 1 or gcd(a, c) != 1 or gcd(b, c) != 1:
        raise PreconditionError("a, b, c must be > 1 and pairwise coprime")
    ea = ext_order(a, d).order
    eb = ext_order(b, d).order
    g = gcd(ea, eb)
    return a ** (ea // g), b ** (eb // g)
