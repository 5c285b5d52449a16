"""Brute-force ground truth, kept apart from the sieve code it is used to check.

Nothing here uses the fast paths in arith or sieve: orders come from scanning
powers, roots from repeated division, candidates from a plain loop over b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import factorint


@dataclass(frozen=True, order=True)
class Solution:
    x: int
    y: int
    z: int


@dataclass
class Report:
    name: str
    passed: bool
    records: List[dict] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)


def _log_of(n: int, base: int) -> Optional[int]:
    """k >= 1 with base^k = n, by division."""
    if n < base:
        return None
    k = 0
    while n % base == 0:
        n //= base
        k += 1
    return k if n == 1 else None


def count_solutions(a: int, b: int, c: int, z_max: int) -> List[Solution]:
    """Every (x, y, z) with a^x + b^y = c^z and z <= z_max."""
    if min(a, b, c) < 2 or z_max < 1:
        raise ValueError("need a, b, c > 1 and z_max >= 1")
    out = []
    cz = 1
    for z in range(1, z_max + 1):
        cz *= c
        by, y = b, 1
        while by < cz:
            x = _log_of(cz - by, a)
            if x:
                out.append(Solution(x, y, z))
            by *= b
            y += 1
    return sorted(out)


def z_max_for(c: int, largest: int) -> int:
    """Least z with c^z > largest^2."""
    z, v = 1, c
    while v <= largest * largest:
        v *= c
        z += 1
    return z


# the exceptional identities, written out as (a, b, c, [(x, y, z), ...])
EXCEPTIONAL: List[Tuple[int, int, int, List[Tuple[int, int, int]]]] = [
    (3, 5, 2, [(1, 1, 3), (3, 1, 5), (1, 3, 7)]),
    (3, 13, 2, [(1, 1, 4), (5, 1, 8)]),
    (2, 5, 3, [(2, 1, 2), (1, 2, 3)]),
    (2, 7, 3, [(1, 1, 2), (5, 2, 4)]),
    (2, 3, 11, [(3, 1, 1), (1, 2, 1)]),
    (3, 10, 13, [(1, 1, 1), (7, 1, 3)]),
    (2, 3, 35, [(5, 1, 1), (3, 3, 1)]),
    (2, 89, 91, [(1, 1, 1), (13, 1, 2)]),
    (2, 5, 133, [(7, 1, 1), (3, 3, 1)]),
    (2, 3, 259, [(8, 1, 1), (4, 5, 1)]),
    (3, 13, 2200, [(7, 1, 1), (1, 3, 1)]),
    (2, 91, 8283, [(13, 1, 1), (1, 2, 1)]),
]


def family(k: int) -> Tuple[int, int, int, List[Tuple[int, int, int]]]:
    return (2, 2**k - 1, 2**k + 1, [(1, 1, 1), (k + 2, 2, 2)])


def exceptional_triples(k_max: int) -> List[Tuple[int, int, int, List[Tuple[int, int, int]]]]:
    ks = [2] + list(range(4, k_max + 1))
    return EXCEPTIONAL + [family(k) for k in ks]


def verify_exceptional_list(k_max: int = 16) -> Report:
    if k_max < 4:
        raise ValueError("k_max must be >= 4")
    rep = Report("exceptional", True)
    for a, b, c, sols in exceptional_triples(k_max):
        for x, y, z in sols:
            if a**x + b**y != c**z:
                rep.failures.append(f"{a}^{x} + {b}^{y} != {c}^{z}")
        largest = max(max(a**x, b**y) for x, y, _ in sols)
        zm = z_max_for(c, largest)
        found = count_solutions(a, b, c, zm)
        want = sorted(Solution(*s) for s in sols)
        if found != want:
            rep.failures.append(f"({a},{b},{c}) z<={zm}: found {found}, listed {want}")
        rep.records.append({"a": a, "b": b, "c": c, "z_max": zm, "solutions": [list(s.__dict__.values()) for s in found]})
    rep.passed = not rep.failures
    return rep


def ext_order_scan(A: int, M: int) -> Tuple[int, int]:
    """(E, sign): least E with A^E = sign (mod M)."""
    if gcd(A, M) != 1:
        raise ValueError("A must be prime to M")
    if M <= 2:
        return 1, 1
    v = A % M
    for E in range(1, M + 1):
        if v == 1:
            return E, 1
        if v == M - 1:
            return E, -1
        v = v * A % M
    raise ArithmeticError("no extended order found")


ORDER_LINES: List[Tuple[int, int, int, int, int]] = [
    # (c, a, e_c(a), b, e_c(b))
    (11, 2, 5, 3, 5),
    (13, 3, 3, 10, 3),
    (35, 2, 12, 3, 12),
    (91, 2, 12, 89, 12),
    (133, 2, 18, 5, 18),
    (259, 2, 36, 3, 9),
    (2200, 3, 20, 13, 20),
    (8283, 2, 25, 91, 25),
]


def order_table(k_values: Sequence[int] = (2,) + tuple(range(4, 17))) -> Report:
    """The eight fixed lines plus the 2^k + 1 line, listed there as k + 1."""
    rep = Report("orders", True)
    for c, a, ea, b, eb in ORDER_LINES:
        ga, gb = ext_order_scan(a, c)[0], ext_order_scan(b, c)[0]
        rec = {"c": c, "a": a, "e_a": ga, "b": b, "e_b": gb, "gcd": gcd(ga, gb)}
        rep.records.append(rec)
        if (ga, gb) != (ea, eb):
            rep.failures.append(f"e_{c}: got ({ga}, {gb}), listed ({ea}, {eb})")
    for k in k_values:
        c = 2**k + 1
        ga, gb = ext_order_scan(2, c)[0], ext_order_scan(2**k - 1, c)[0]
        rep.records.append({"c": c, "a": 2, "e_a": ga, "b": 2**k - 1, "e_b": gb, "gcd": gcd(ga, gb), "listed": k + 1})
        if (ga, gb) != (k + 1, k + 1):
            rep.failures.append(f"e_{c}: got ({ga}, {gb}), listed ({k + 1}, {k + 1})")
    rep.passed = not rep.failures
    return rep


def _pm1(h: int, m: int) -> bool:
    return h % m in (1, m - 1)


def _part(c: int, primes: Sequence[int]) -> int:
    out = 1
    for p in primes:
        while c % p == 0:
            c //= p
            out *= p
    return out


def _root_of(N: int) -> Tuple[int, int]:
    """(c, z) with c^z = N and c not a perfect power."""
    for k in range(N.bit_length(), 1, -1):
        r = round(N ** (1 / k))
        for s in (r - 1, r, r + 1):
            if s > 1 and s**k == N:
                return _root_of(s)[0], k * _root_of(s)[1]
    return N, 1


def abp_pairs(p: int = 3, A_max: int = 35, full: bool = True) -> List[dict]:
    """Pairs (A, B) with (A^p + B^p)/(A + B)^2 < p^2 under the coprime-exponent setting.

    The literal set only asks A, B = +-1 (mod p), coprime, B < A <= A_max. The
    full set adds what the surrounding argument carries: A^p + B^p = c^z, p lies
    in a prime set S of c with A, B = +-1 modulo the S-part P of c (and mod 4
    when c is even), c[S'] squared exceeds c, and c[S']^z / p divides A + B.
    """
    out = []
    for A in range(p + 1, A_max + 1):
        for B in range(2, A):
            if gcd(A, B) != 1 or not (_pm1(A, p) and _pm1(B, p)):
                continue
            if not (A**p + B**p) < p * p * (A + B) ** 2:
                continue
            if not full:
                out.append({"A": A, "B": B})
                continue
            c, z = _root_of(A**p + B**p)
            odd = [q for q in factorint(c) if q > 2]
            for r in range(1, len(odd) + 1):
                for S in combinations(odd, r):
                    if p not in S:
                        continue
                    P = _part(c, S)
                    if not (_pm1(A, P) and _pm1(B, P)):
                        continue
                    if c % 2 == 0 and not (_pm1(A, 4) and _pm1(B, 4)):
                        continue
                    cs = _part(c, S + ((2,) if c % 2 == 0 else ()))
                    if cs * cs > c and (A + B) * p % cs**z == 0:
                        out.append({"A": A, "B": B, "c": c, "z": z, "S": list(S)})
    return out


def abp_check() -> Report:
    literal = abp_pairs(full=False)
    full = abp_pairs(full=True)
    rep = Report("abp", not full, records=[{"literal_count": len(literal), "full_count": len(full)}] + full)
    if full:
        rep.failures.append(f"{len(full)} pairs satisfy every condition")
    return rep


def _delta(h: int, m: int) -> int:
    if h % m == 1:
        return 1
    if h % m == m - 1:
        return -1
    raise ValueError(f"{h} is not +-1 mod {m}")


def _divisors_gt2(c: int) -> List[int]:
    return [d for d in range(3, c + 1) if c % d == 0]


def verify_known_solution_invariants(k_max: int = 8) -> Report:
    """Order divisibility on every listed triple, and the mod C^z facts where they apply.

    The second group needs a, b = +-1 (mod c'); among the listed triples that is
    (3,5,2), (3,13,2), (2,5,3) and (2,7,3). The other triples are reduced by the
    common order and must keep their solution count.
    """
    rep = Report("invariants", True)
    for a, b, c, sols in exceptional_triples(k_max):
        for d in _divisors_gt2(c):
            ea, eb = ext_order_scan(a, d)[0], ext_order_scan(b, d)[0]
            for x, y, z in sols:
                if (eb * x) % ea or (ea * y) % eb:
                    rep.failures.append(f"order divisibility ({a},{b},{c}) d={d} sol={(x, y, z)}")
        cp = 4 if c == 2 else c
        if not (_pm1(a, cp) and _pm1(b, cp)):
            ea, eb = ext_order_scan(a, c)[0], ext_order_scan(b, c)[0]
            g = gcd(ea, eb)
            A, B = a ** (ea // g), b ** (eb // g)
            largest = max(max(a**x, b**y) for x, y, _ in sols)
            n = len(count_solutions(A, B, c, z_max_for(c, largest)))
            rep.records.append({"a": a, "b": b, "c": c, "reduced": [A, B], "count": n})
            if n != len(sols):
                rep.failures.append(f"reduction ({a},{b},{c}) -> ({A},{B}) has {n} solutions")
            continue
        da, db = _delta(a, cp), _delta(b, cp)
        C = c // 2 if c > 2 and c % 4 == 2 else c
        for (x, y, z), (X, Y, Z) in combinations(sorted(sols, key=lambda s: s[2]), 2):
            D = abs(x * Y - X * y)
            rec = {"a": a, "b": b, "c": c, "first": [x, y, z], "second": [X, Y, Z], "Delta": D}
            for h, dh in ((a, da), (b, db)):
                if (pow(h, D, C**z) - dh**D) % C**z:
                    rep.failures.append(f"h^Delta != delta^Delta mod C^z for h={h} in {rec}")
            g = gcd(a - da, b - db)
            if (g * D) % C**z:
                rep.failures.append(f"C^z does not divide gcd * Delta in {rec}")
            if c % 2 == 0:
                c2 = 1 << (len(bin(c & -c)) - 3)
                g4 = gcd(a - _delta(a, 4), b - _delta(b, 4))
                if (g4 * D) % c2**z:
                    rep.failures.append(f"2-part of c^z does not divide gcd4 * Delta in {rec}")
            rec["gcd"] = g
            rep.records.append(rec)
    rep.passed = not rep.failures
    return rep


# brute-force Step 2 for one (c, z, X) cell


def step2_bruteforce(c: int, z: int, X: int, Kc: float,
                     signs: Sequence[Tuple[int, int]] = ((1, -1), (-1, 1), (-1, -1))) -> Iterator[tuple]:
    """(a, da, b, db, c, x, y, z, Dv) found by looping over every b, no progressions.

    Dv runs over divisors of C^z below K_c z; a, b must both be = delta modulo
    lcm(c', C^z/Dv); C^z / gcd(a - da, b - db) < K_c z; and when C = c/2 both
    a, b sit in their 2-adic class mod 2^iota.
    """
    C = c // 2 if c > 2 and c % 4 == 2 else c
    cp = 4 if c == 2 else c
    half = c > 2 and c % 4 == 2
    Cz, cz = C**z, c**z
    Du = Kc * z
    divs = sorted(d for d in _all_divisors(Cz) if d < Du)
    b = 2
    while b**X < cz:
        for x in range(1, X + 1):
            for y in range(1, X + 1):
                if max(x, y) != X or gcd(x, y) != 1 or b**y >= cz:
                    continue
                r = cz - b**y
                a = _exact_root(r, x)
                if a is None or a <= b:
                    continue
                for da, db in signs:
                    g = gcd(a - da, b - db)
                    if not Cz / g < Du * (1 + 1e-12):
                        continue
                    for Dv in divs:
                        ell = cp * (Cz // Dv) // gcd(cp, Cz // Dv)
                        if (a - da) % ell or (b - db) % ell:
                            continue
                        if half:
                            io = max(2, z - math.floor(math.log2(Du / Dv) + 1e-9))
                            m = 1 << io
                            if not (_pm1(a, m) and _pm1(b, m)):
                                continue
                        yield (a, da, b, db, c, x, y, z, Dv)
        b += 1


def _all_divisors(n: int) -> List[int]:
    out = [1]
    for p, e in factorint(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return out


def _exact_root(n: int, k: int) -> Optional[int]:
    if k == 1:
        return n
    r = int(round(n ** (1 / k)))
    for s in (r - 1, r, r + 1):
        if s > 0 and s**k == n:
            return s
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None
