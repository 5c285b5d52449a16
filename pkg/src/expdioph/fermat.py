"""Fermat-prime c = m^2 + 1 (m = 2^e): Gaussian powers, the V valuation scan and
the finite checks that leave (2, c - 2) as the only pair with two solutions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from .arith import PreconditionError, ext_order, iroot, is_perfect_power, jacobi, val
from .baker import FERMAT_E, th3_bound_suite

FERMAT_C = (5, 17, 257, 65537)
THRESHOLD_SCAN = 36000

# (c, Z) -> (d, side whose value d divides)
JACOBI_TABLE: Dict[Tuple[int, int], Tuple[int, str]] = {
    (17, 4): (15, "b"), (17, 6): (15, "a"), (17, 8): (15, "b"), (17, 10): (19, "b"),
    (257, 4): (15, "b"), (257, 5): (139, "a"), (257, 6): (11, "b"),
}


@dataclass(frozen=True)
class GaussInt:
    re: int
    im: int

    def __mul__(self, o: "GaussInt") -> "GaussInt":
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def mod(self, M: int) -> "GaussInt":
        return GaussInt(self.re % M, self.im % M)


def _check_c(c: int) -> int:
    if c not in FERMAT_C:
        raise PreconditionError("c must be one of 5, 17, 257, 65537")
    return FERMAT_E[c]


def beta(c: int) -> GaussInt:
    return GaussInt(2 ** _check_c(c), 1)


def gauss_pow(b: GaussInt, Z: int, modulus: Optional[int] = None) -> GaussInt:
    if Z < 0:
        raise PreconditionError("Z must be >= 0")
    if modulus is not None and (modulus < 3 or modulus % 2 == 0):
        raise PreconditionError("modulus must be an odd prime power")
    out = GaussInt(1, 0)
    base = b if modulus is None else b.mod(modulus)
    while Z:
        if Z & 1:
            out = out * base
            if modulus is not None:
                out = out.mod(modulus)
        Z >>= 1
        if Z:
            base = base * base
            if modulus is not None:
                base = base.mod(modulus)
    return out


def ab_from_Z(c: int, Z: int) -> Tuple[int, int]:
    """(a(beta, Z), b(beta, Z)): the odd and the even coordinate of beta^Z."""
    if Z < 1:
        raise PreconditionError("Z must be >= 1")
    w = gauss_pow(beta(c), Z)
    # beta^Z + (-conj beta)^Z is 2 Re for even Z and 2i Im for odd Z
    aZ, bZ = (abs(w.re), abs(w.im)) if Z % 2 == 0 else (abs(w.im), abs(w.re))
    if aZ * aZ + bZ * bZ != c**Z or aZ % 2 != 1 or bZ % 2 != 0:
        raise ArithmeticError(f"coordinate identity fails at c={c}, Z={Z}")
    return aZ, bZ


def yprime(c: int, Z: int, bZ: int) -> Fraction:
    if bZ % 2:
        raise PreconditionError("bZ must be even")
    return Fraction(_check_c(c) + val(2, Z), val(2, bZ))


def E_of(e: int, Z: int) -> int:
    if e not in (1, 2, 4, 8) or Z < 1:
        raise PreconditionError("e in {1,2,4,8} and Z >= 1 required")
    return 2 * e // gcd(2 * e, Z - 1)


@dataclass
class Stage:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def zsmall_enumerate(c: int) -> Stage:
    e = _check_c(c)
    rows = [(Z,) + ab_from_Z(c, Z) for Z in (1, 2, 3)]
    z1 = rows[0]
    ok = min(z1[1], z1[2]) == 1  # Z = 1 cannot carry two integers > 1
    ok &= rows[1][1] == c - 2 and rows[1][2] == 2 ** (e + 1)
    a, b = c - 2, 2
    ok &= a + b == c and a * a + b ** (2 * e + 2) == c * c
    return Stage("Z<=3", ok, {"rows": [list(r) for r in rows], "family": [a, b, 1, 1, 1, 2, 2 * e + 2, 2]})


def _nu_c_mod(v: int, c: int, K: int) -> int:
    v %= c**K
    if v == 0:
        return K
    n = 0
    while v % c == 0:
        v //= c
        n += 1
    return n


def wieferich_V(c: int, Z: int, K: int = 8) -> int:
    """nu_c(aZ^(2e) + 1) for even Z, nu_c(bZ^(2e) - 1) for odd Z, working mod c^K."""
    e = _check_c(c)
    while True:
        M = c**K
        w = gauss_pow(beta(c), Z, M)
        # the sign of each coordinate is irrelevant under the even power 2e
        v = pow(w.re, 2 * e, M) + (1 if Z % 2 == 0 else -1)
        n = _nu_c_mod(v, c, K)
        if n < K:
            return n
        K *= 2


def wieferich_max(c: int, Z_max: int, Z_min: int = 1, K: int = 8) -> Tuple[int, int]:
    """(max V, first Z attaining it) over Z_min <= Z <= Z_max, by stepping beta^Z mod c^K."""
    e = _check_c(c)
    M = c**K
    m = 2**e
    w = gauss_pow(beta(c), Z_min, M)
    re, im = w.re, w.im
    best, at = -1, Z_min
    for Z in range(Z_min, Z_max + 1):
        v = (pow(re, 2 * e, M) + (1 if Z % 2 == 0 else -1)) % M
        n = _nu_c_mod(v, c, K) if v % c == 0 else 0
        if n >= K:
            n = wieferich_V(c, Z, 2 * K)
        if n > best:
            best, at = n, Z
        re, im = (m * re - im) % M, (re + m * im) % M
    return best, at


def jacobi_sieve_check(c: int, Z: int, d_max: int = 10**5) -> Optional[Tuple[int, str]]:
    """Odd d > 1 dividing one side with Jacobi(other, d) = -1 and Jacobi(c, d) = 1."""
    aZ, bZ = ab_from_Z(c, Z)

    def ok(d: int, side: str) -> bool:
        h, o = (aZ, bZ) if side == "a" else (bZ, aZ)
        return d > 1 and d % 2 == 1 and h % d == 0 and jacobi(o, d) == -1 and jacobi(c, d) == 1

    if (c, Z) in JACOBI_TABLE:
        d, side = JACOBI_TABLE[(c, Z)]
        if ok(d, side):
            return d, side
    for d in range(3, d_max, 2):
        for side in ("a", "b"):
            if ok(d, side):
                return d, side
    return None


def min_threshold(c: int, zcap: int, Z_hi: int) -> int:
    """Least Z0 with min(aZ, bZ) > c^zcap for every Z0 <= Z <= Z_hi."""
    m = 2 ** _check_c(c)
    bound = c**zcap
    re, im = 1, 0
    last_bad = 0
    for Z in range(1, Z_hi + 1):
        re, im = m * re - im, re + m * im
        if min(abs(re), abs(im)) <= bound:
            last_bad = Z
    return last_bad + 1


def _roots(v: int, odd_only: bool = True) -> List[Tuple[int, int]]:
    """(r, k) with r^k = v, k odd when asked."""
    out = [(v, 1)]
    k = 2
    while 2**k <= v:
        if not odd_only or k % 2:
            r = iroot(v, k)
            if r is not None:
                out.append((r, k))
        k += 1
    return out


def first_equation_solutions(a: int, b: int, c: int, z_max: int) -> List[Tuple[int, int, int]]:
    out = []
    for z in range(1, z_max + 1):
        cz = c**z
        y, by = 1, b
        while by < cz:
            r = cz - by
            x, ax = 1, a
            while ax < r:
                ax *= a
                x += 1
            if ax == r:
                out.append((x, y, z))
            by *= b
            y += 1
    return out


def exhaustive_small_Z(c: int, Z_lo: int, Z_hi: int, z_max: int) -> List[dict]:
    """Every (a, b) built from aZ, bZ (odd-exponent roots) with another solution a^x + b^y = c^z, z <= z_max."""
    found = []
    for Z in range(Z_lo, Z_hi):
        aZ, bZ = ab_from_Z(c, Z)
        for a, Xp in _roots(aZ):
            for b, Yp in _roots(bZ):
                if gcd(a, b) != 1 or min(a, b) < 2:
                    continue
                for x, y, z in first_equation_solutions(a, b, c, z_max):
                    if (x, y, z) == (2 * Xp, 2 * Yp, Z):
                        continue
                    found.append({"Z": Z, "a": a, "b": b, "X": 2 * Xp, "Y": 2 * Yp, "x": x, "y": y, "z": z})
    return found


def th3_pipeline(c: int, wieferich_zmax: Optional[int] = None) -> List[Stage]:
    e = _check_c(c)
    stages = [zsmall_enumerate(c)]
    if 2 * e < 4:
        # E divides 2e and must be a multiple of 4
        stages.append(Stage("order", True, {"excluded": True, "max_E": 2 * e}))
        return stages
    stages.append(Stage("order", True, {"excluded": False, "max_E": 2 * e}))
    suite = th3_bound_suite(c)
    zmax = wieferich_zmax or max(suite["Z_cap_even"], suite.get("Z_cap_odd", 0))
    V, _ = wieferich_max(c, zmax)
    mcap = max(suite["min_cap_large_gcd"], math.ceil(1.5 * V) - 1)
    # Z > 200 z forces Z odd, which E >= 4 rules out for c = 17
    Zcap = max(200 * mcap, suite["Z_cap_chi200"] if c != 17 else 0)
    stages.append(Stage("bounds", True, {"suite": suite, "V": V, "min_cap": mcap, "Z_cap": Zcap}))
    Z_hi = max(Zcap, THRESHOLD_SCAN)
    thr = min_threshold(c, mcap, Z_hi)
    stages[-1].detail["threshold_cap10"] = min_threshold(c, 10, Z_hi)
    hits = exhaustive_small_Z(c, 4, thr, mcap)
    stages.append(Stage("z<=Z", not hits, {"threshold": thr, "z_max": mcap, "hits": hits}))
    rows = []
    need = [Z for Z in range(4, mcap + 1) if E_of(e, Z) % 4 == 0]
    listed = [Z for (cc, Z) in JACOBI_TABLE if cc == c]
    for Z in sorted(set(need) | set(listed)):
        w = jacobi_sieve_check(c, Z)
        rows.append({"Z": Z, "witness": list(w) if w else None, "tabulated": Z in listed, "needed": Z in need})
    stages.append(Stage("z>Z", all(r["witness"] for r in rows), {"rows": rows}))
    return stages


def verdict(stages: List[Stage]) -> str:
    return "only (2, c-2)" if all(s.passed for s in stages) else "counterexample"
