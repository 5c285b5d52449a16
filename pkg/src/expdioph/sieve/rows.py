"""Feasible cells (z, X), t-values and refined Z bounds that seed the candidate search."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from mpmath import iv

from ..arith import big_c, c_prime, is_perfect_power, lcm
from ..baker import I, SMALL_C, hi, kc_value, lo, strong_applied_search

# c upper limits per (z, X) cell from the reference computation
REFERENCE_C1: Dict[Tuple[int, int], int] = {
    (2, 2): 1000, (3, 2): 1090, (3, 3): 190, (4, 2): 306, (4, 3): 70, (4, 4): 46,
    (5, 2): 138, (5, 3): 38, (5, 4): 26, (5, 5): 22, (6, 2): 82, (6, 3): 26,
    (6, 4): 18, (6, 5): 14, (6, 6): 14, (7, 2): 54, (7, 3): 18, (7, 4): 14,
    (8, 2): 38, (8, 3): 14, (9, 2): 30, (10, 2): 26, (11, 2): 22, (12, 2): 18,
    (13, 2): 18,
}


@dataclass(frozen=True)
class PairRow:
    z: int
    X: int
    c: int = 0
    c1: int = 0
    c1_ref: int = 0
    t: Optional[int] = None
    Z1: int = 0

    @property
    def c_max(self) -> int:
        return max(self.c1, self.c1_ref)


def admissible_large(c: int) -> bool:
    return c >= 11 and c != 14 and not is_perfect_power(c)


def sizes_c1(c: int) -> bool:
    # c = 14 still widens c1 even though its candidates come from the small-c branch
    return c >= 11 and not is_perfect_power(c)


def tau(c: int, h: int) -> float:
    return math.log(c) / math.log(h)


def itau(c: int, h: int):
    return iv.log(I(c)) / iv.log(I(h))


def kc_closed(c: int) -> float:
    """The closed-form K_c (no small-c table), nudged upward."""
    C = big_c(c)
    k = 1.0 if c % 4 == 2 else math.log(c) / math.log(c - 1)
    return 857.6 * k * (math.log(c) / math.log(C)) ** 2 * (1 + 1e-12)


def fast_kc(c: int) -> float:
    return kc_value(c) if c in SMALL_C else kc_closed(c)


def bigx_feasible(c: int, z: int, X: int, Kc: float) -> bool:
    """X < tau_c z and C^z < K_c z (c^(z/X) + 1), kept unless certainly false."""
    lc = math.log(c)
    if not X * math.log(c_prime(c) - 1) < z * lc * (1 + 1e-12):
        return False
    C = big_c(c)
    lhs = z * math.log(C)
    rhs = math.log(Kc * z) + math.log1p(math.exp(z * lc / X)) if z * lc / X < 700 else math.log(Kc * z) + z * lc / X
    return lhs < rhs + 1e-9


def _large_ceiling(z: int, X: int) -> int:
    # C >= c/2 and K_c < 1500 for every admissible c
    return int(math.exp(math.log(2**z * 1500 * z * 2.0) / (z * (1 - 1 / X)))) + 2


def bigx_large_rows() -> List[PairRow]:
    """Cells (z, X) with c1; z is capped by the c != 14 family, c1 also counts c = 14."""
    cells = []
    for z in range(2, 40):
        for X in range(2, 2 * z + 2):
            top = _large_ceiling(z, X)
            c1, own = 0, False
            for c in range(11, top + 1):
                if sizes_c1(c) and bigx_feasible(c, z, X, kc_closed(c)):
                    c1 = c
                    own = own or c != 14
            if c1:
                cells.append((z, X, c1, own))
    zmax = max(z for z, _, _, own in cells if own)
    return [PairRow(z, X, c1=c1, c1_ref=REFERENCE_C1.get((z, X), 0))
            for z, X, c1, _ in cells if z <= zmax]


def bigx_small_rows() -> List[PairRow]:
    rows = []
    for c in SMALL_C:
        Kc = kc_value(c)
        for z in range(2, 400):
            for X in range(2, 2 * z + 2):
                if bigx_feasible(c, z, X, Kc):
                    rows.append(PairRow(z, X, c=c))
    return rows


def b1_bigx(c: int, z: int, X: int) -> int:
    r, _ = iroot_floor(c**z, X)
    return r


def iroot_floor(n: int, k: int) -> Tuple[int, bool]:
    import gmpy2

    r, exact = gmpy2.iroot(n, k)
    return int(r), bool(exact)


def row_ell(c: int, z: int, t: int) -> int:
    return lcm(c_prime(c), big_c(c) ** (z - t))


def bigx_small_tvalues(rows: List[PairRow]) -> List[PairRow]:
    out = []
    for r in rows:
        if not r.c:
            raise ValueError("t-values apply to fixed-c rows only")
        C, Kc = big_c(r.c), kc_value(r.c)
        b1 = b1_bigx(r.c, r.z, r.X)
        for t in range(r.z + 1):
            if row_ell(r.c, r.z, t) - 1 <= b1 and C**t < Kc * r.z * (1 + 1e-12):
                out.append(replace(r, t=t))
    return out


def bigx_small_zbounds(rows: List[PairRow]) -> List[PairRow]:
    out = []
    for r in rows:
        C, Kc = big_c(r.c), kc_value(r.c)
        ell = row_ell(r.c, r.z, r.t)
        Zu = int(Kc * r.z * r.z // r.X)
        Z1 = strong_applied_search(r.c, r.z, r.X, r.t, ell, Zu)
        if lo(I(C) ** r.t) < hi(itau(r.c, ell - 1) * r.X * Z1):
            out.append(replace(r, Z1=Z1))
    return out


# x = y = 1


def x1_Z1(z: int) -> int:
    return 858 * z


def x1_feasible(c: int, z: int, Z1: int) -> bool:
    """(C/sqrt c)^z < (tau_c Z1)^(3/2)."""
    C = big_c(c)
    lhs = z * (math.log(C) - 0.5 * math.log(c))
    rhs = 1.5 * math.log(tau(c, c_prime(c) - 1) * Z1)
    return lhs < rhs + 1e-9


def x1_large_rows() -> List[PairRow]:
    rows = []
    for z in range(2, 60):
        Z1 = x1_Z1(z)
        top = int(4 * (1.1 * Z1) ** (3 / z)) + 2
        c1 = 0
        for c in range(11, top + 1):
            # unlike the big-x cells, c = 14 does not size these rows
            if admissible_large(c) and x1_feasible(c, z, Z1):
                c1 = c
        if c1:
            rows.append(PairRow(z, 1, c1=c1, Z1=Z1))
    return rows


def x1_small_rows() -> List[PairRow]:
    rows = []
    for c in SMALL_C:
        for z in range(2, 400):
            if x1_feasible(c, z, x1_Z1(z)):
                rows.append(PairRow(z, 1, c=c, Z1=x1_Z1(z)))
    return rows


def x1_t_ok(c: int, z: int, t: int, Z1: int) -> bool:
    """C^t < tau_l Z1 and (C/sqrt c)^z < C^t sqrt(tau_l Z1)."""
    C = big_c(c)
    tl = itau(c, row_ell(c, z, t) - 1) * Z1
    if not lo(I(C) ** t) < hi(tl):
        return False
    lhs = (I(C) / iv.sqrt(I(c))) ** z
    return lo(lhs) < hi(I(C) ** t * iv.sqrt(tl))


def x1_small_tvalues(rows: List[PairRow]) -> List[PairRow]:
    out = []
    for r in rows:
        if not r.c:
            raise ValueError("t-values apply to fixed-c rows only")
        b1 = r.c**r.z // 2
        for t in range(r.z + 1):
            if row_ell(r.c, r.z, t) - 1 <= b1 and x1_t_ok(r.c, r.z, t, r.Z1):
                out.append(replace(r, t=t))
    return out


def x1_small_zbounds(rows: List[PairRow]) -> List[PairRow]:
    out = []
    for r in rows:
        ell = row_ell(r.c, r.z, r.t)
        Z1 = strong_applied_search(r.c, r.z, 1, r.t, ell, r.Z1)
        if x1_t_ok(r.c, r.z, r.t, Z1):
            out.append(replace(r, Z1=Z1))
    return out
