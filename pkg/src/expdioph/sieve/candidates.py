"""Candidate tuples (a, b, c, x, y, z, Delta') from residue-class enumeration of b."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Iterator, List, Tuple

from ..arith import big_c, c_prime, crt, factor, iroot, lcm
from .rows import iroot_floor, kc_closed, tau

SIGNS_BIGX = ((1, -1), (-1, 1), (-1, -1))
SIGNS_X1 = ((1, -1), (-1, 1))
SLACK = 1e-12


@dataclass(frozen=True)
class Candidate:
    a: int
    da: int
    b: int
    db: int
    c: int
    x: int
    y: int
    z: int
    Dp: int


def divisors_of_power(C: int, z: int, lo: float = 0, hi: float = math.inf) -> List[int]:
    """Divisors d of C^z with lo <= d < hi, ascending."""
    out = [1]
    for p, e in factor(C).items():
        nxt = []
        for d in out:
            q = d
            for _ in range(e * z + 1):
                if q >= hi:
                    break
                nxt.append(q)
                q *= p
        out = nxt
    return sorted(d for d in out if d >= lo)


def halved(c: int) -> bool:
    return c > 2 and c % 4 == 2


def iota(z: int, D1: float, Dv: int) -> int:
    # flooring the log a hair high only lowers iota, which keeps the sieve sound
    return max(2, z - math.floor(math.log2(D1 / Dv) + 1e-9))


def mod4_sign(h: int) -> int:
    return 1 if h % 4 == 1 else -1


def eff_ok(h: int, io: int) -> bool:
    """h = delta_{h,4} (mod 2^iota)."""
    return (h - mod4_sign(h)) % (1 << io) == 0


def b_progressions(c: int, z: int, ell: int, db: int, D1: float, Dv: int) -> Iterator[Tuple[int, int]]:
    """(start, step) pairs covering b = db (mod ell), refined mod 2^iota when C = c/2.

    Stepping by lcm(ell, 2^iota) keeps every b on its own 2-adic class; stepping
    by ell alone would leave the class after one step.
    """
    if not halved(c):
        yield db % ell, ell
        return
    io = iota(z, D1, Dv)
    m = 1 << io
    for sb in (1, -1):
        try:
            r = crt([(db, ell), (sb, m)])
        except ValueError:
            continue
        yield r, lcm(ell, m)


def max_power_le(base: int, bound: int) -> int:
    """Largest n >= 0 with base^n <= bound."""
    n, v = 0, base
    while v <= bound:
        v *= base
        n += 1
    return n


def bigx_cell(c: int, z: int, X: int, Dv: int, Du: float) -> Iterator[Candidate]:
    """All Step-2 tuples for one (c, z, X, Delta') cell with Delta_u = Du."""
    C, cz = big_c(c), c**z
    Cz = C**z
    b1, _ = iroot_floor(cz, X)
    ell = lcm(c_prime(c), Cz // Dv)
    half = halved(c)
    io = iota(z, Du, Dv) if half else 0
    for da, db in SIGNS_BIGX:
        for start, step in b_progressions(c, z, ell, db, Du, Dv):
            for b in range(start, b1 + 1, step):
                if b <= 1 or not b**X < cz:
                    continue
                xmax = min(X, max_power_le(b + 1, cz))
                for x in range(1, xmax + 1):
                    for y in range(1, X + 1):
                        if max(x, y) != X or gcd(x, y) != 1:
                            continue
                        r = cz - b**y
                        if r <= 0:
                            continue
                        a = iroot(r, x)
                        if a is None or a <= b or (a - da) % ell:
                            continue
                        if not Cz / gcd(a - da, b - db) < Du * (1 + SLACK):
                            continue
                        if half and not eff_ok(a, io):
                            continue
                        yield Candidate(a, da, b, db, c, x, y, z, Dv)


def bigx_large_candidates(z: int, X: int, c: int) -> Iterator[Candidate]:
    Kc = kc_closed(c)
    Du = Kc * z
    for Dv in divisors_of_power(big_c(c), z, 1, Du):
        yield from bigx_cell(c, z, X, Dv, Du)


def bigx_small_candidates(c: int, z: int, X: int, t: int, Kc: float) -> Iterator[Candidate]:
    Du = Kc * z
    Dv = big_c(c) ** t
    if Dv < Du * (1 + SLACK):
        yield from bigx_cell(c, z, X, Dv, Du)


def x1_cell(c: int, z: int, Z1: int, Dv: int) -> Iterator[Candidate]:
    """Tuples with a + b = c^z for one Delta'; every gate is kept when in doubt."""
    C, cz = big_c(c), c**z
    Cz = C**z
    b1 = cz // 2
    ell = lcm(c_prime(c), Cz // Dv)
    half = halved(c)
    tc = tau(c, c_prime(c) - 1) * Z1
    lead = z * (math.log(C) - 0.5 * math.log(c))
    lc = math.log(c)
    for da, db in SIGNS_X1:
        for start, step in b_progressions(c, z, ell, db, tc, Dv):
            for b in range(start, b1 + 1, step):
                if b <= 1:
                    continue
                tb = lc / math.log(b) * Z1
                # (C/sqrt c)^z / sqrt(tau_b Z1) < Dv < tau_b Z1
                if not (lead - 0.5 * math.log(tb) < math.log(Dv) + 1e-9 and Dv < tb * (1 + SLACK)):
                    continue
                if half and not eff_ok(b, iota(z, tb, Dv)):
                    continue
                yield Candidate(cz - b, da, b, db, c, 1, 1, z, Dv)


def x1_large_dvs(c: int, z: int, Z1: int) -> List[int]:
    C = big_c(c)
    tcz = tau(c, c_prime(c) - 1) * Z1
    Du = math.floor(tcz * (1 + SLACK))
    Dl = math.ceil(math.exp(z * (math.log(C) - 0.5 * math.log(c))) / math.sqrt(tcz) * (1 - 1e-9))
    return divisors_of_power(C, z, Dl, Du)


def x1_large_candidates(c: int, z: int, Z1: int) -> Iterator[Candidate]:
    for Dv in x1_large_dvs(c, z, Z1):
        yield from x1_cell(c, z, Z1, Dv)


def x1_small_candidates(c: int, z: int, t: int, Z1: int) -> Iterator[Candidate]:
    yield from x1_cell(c, z, Z1, big_c(c) ** t)
