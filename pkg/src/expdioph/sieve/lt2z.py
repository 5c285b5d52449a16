"""x = y = 1 with Z < 2z: the finite case analysis, run as code.

From a + b = c^z and a^X + b^Y = c^Z one gets a^(X-2) c^(2z-Z) < 4, so X <= 2.
X = 2 dies modulo b, and X = 1 leaves b^Y - b = c^Z - c^z, handled by Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

from ..arith import big_c, c_prime, is_perfect_power
from .resolve import Hit
from .rows import tau

C_LIMIT = 100
Z_LIMIT = 40


@dataclass
class Lt2zReport:
    hits: List[Hit]
    triples: List[Tuple[int, int, int]]
    triple_solutions: List[Tuple[int, int, int, int, int]]
    x2_excluded: bool
    k1_solutions: List[Tuple[int, int, int, int]]
    kbig_excluded: bool
    notes: List[str] = field(default_factory=list)


def x2_excluded(a_max: int = 10**4) -> bool:
    """X = 2 forces c <= 3, Z = 2z - 1 and c = 1 (mod b), so (b, c) = (2, 3).

    Then 3(a^2 + 2^Y) > (a + 2)^2 for every odd a > 2, since 2a^2 - 4a - 4 > 0
    once a >= 3. The quadratic is checked in closed form and on a sample.
    """
    pairs = [(b, c) for c in (2, 3) for b in range(2, c + 1) if (c - 1) % b == 0]
    if pairs != [(2, 3)]:
        return False
    root = 1 + math.sqrt(3)  # larger root of 2a^2 - 4a - 4
    if not root < 3:
        return False
    return all(3 * (a * a + 2) > (a + 2) ** 2 for a in range(3, a_max, 2))


def y_large_triples(c_limit: int = C_LIMIT, z_limit: int = Z_LIMIT) -> List[Tuple[int, int, int]]:
    """(c, z, Y) with Y >= 4, Y < tau_c (2z - 1) and C^z < (Y - 1)(c^((2z-1)/Y) + 1).

    C^z grows like c^(z/2) at least while the right side is O(Y c^(2z/Y)), so
    for Y >= 4 nothing survives past small z; the limits are generous.
    """
    out = []
    for c in range(2, c_limit):
        if is_perfect_power(c):
            continue
        C = big_c(c)
        if C * C <= c:
            continue
        tc = tau(c, c_prime(c) - 1)
        for z in range(2, z_limit + 1):
            Y = 4
            while Y < tc * (2 * z - 1):
                if C**z < (Y - 1) * (c ** ((2 * z - 1) / Y) + 1):
                    out.append((c, z, Y))
                Y += 1
    return out


def triple_solutions(c: int, z: int, Y: int) -> List[Tuple[int, int, int, int, int]]:
    """(a, b, c, z, Z) with b^Y - b = c^Z - c^z, z < Z < 2z, a = c^z - b > 1."""
    out = []
    cz = c**z
    for Z in range(z + 1, 2 * z):
        rhs = c**Z - cz
        b = 2
        while b**Y - b <= rhs:
            if b**Y - b == rhs and cz - b > 1:
                out.append((cz - b, b, c, z, Z))
            b += 1
    return out


def k1_solutions(c_limit: int = C_LIMIT, z_limit: int = Z_LIMIT) -> List[Tuple[int, int, int, int]]:
    """(b, c, z, Z) with b^2 = 1 + c^z and b = c^(Z-z) - 1, 1 <= Z - z <= z - 1.

    Substituting gives c^w - 2 = c^(z-w) with w = Z - z, so c^(z-w) divides 2;
    the search below confirms that directly.
    """
    out = []
    for c in range(2, c_limit):
        for z in range(2, z_limit + 1):
            for w in range(1, z):
                b = c**w - 1
                if b * b == 1 + c**z:
                    out.append((b, c, z, z + w))
    return out


def kbig_excluded() -> bool:
    """K > 1 gives c^(Z+3) < (4/3)^8 < 10; with c >= 2 and Z >= 3 the left side is >= 64."""
    return (4 / 3) ** 8 < 10 and 2 ** (3 + 3) >= 10


def search_x1y1_Z_lt_2z(c_limit: int = C_LIMIT, z_limit: int = Z_LIMIT) -> Lt2zReport:
    triples = y_large_triples(c_limit, z_limit)
    tsol = [s for t in triples for s in triple_solutions(*t)]
    k1 = k1_solutions(c_limit, z_limit)
    hits = []
    for a, b, c, z, Z in tsol:
        Y = next(Y for cc, zz, Y in triples if (cc, zz) == (c, z) and b**Y - b == c**Z - c**z)
        hits.append(Hit(a, b, c, 1, 1, z, 1, Y, Z))
    for b, c, z, Z in k1:
        a = c**z - b
        if a > 1 and a + b**3 == c**Z:
            hits.append(Hit(a, b, c, 1, 1, z, 1, 3, Z))
    notes = ["Y = 2 impossible: b = 1 (mod c^z) with 1 < b < c^z"]
    return Lt2zReport(
        hits=sorted(set(hits), key=lambda h: (h.c, h.a, h.b, h.z, h.Z)),
        triples=triples,
        triple_solutions=tsol,
        x2_excluded=x2_excluded(),
        k1_solutions=k1,
        kbig_excluded=kbig_excluded(),
        notes=notes,
    )
