"""Find the second solution (X, Y, Z) for a candidate, or prove there is none in range."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..arith import big_c, factor, val
from .candidates import Candidate, halved

INT64_SAFE = 2**62


@dataclass(frozen=True)
class Hit:
    a: int
    b: int
    c: int
    x: int
    y: int
    z: int
    X: int
    Y: int
    Z: int


def kernel_lattice(conds: Sequence[Tuple[int, int, int]]) -> Tuple[int, int, int]:
    """Basis (hX, s, hY) of {(X, Y): u X + v Y = 0 (mod m) for all (u, v, m)}.

    The lattice is {(i hX, i s + j hY)} with 0 <= s < hY.
    """
    k = len(conds)
    rows = [[u for u, _, _ in conds] + [1, 0], [v for _, v, _ in conds] + [0, 1]]
    rows += [[m if i == j else 0 for i in range(k)] + [0, 0] for j, (_, _, m) in enumerate(conds)]
    for col in range(k):
        active = [r for r in rows if r[col]]
        rows = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[col] else rows).append(r)
            active = nxt
    vecs = [r[k:] for r in rows if any(r[k:])]
    # Euclid on the X coordinate
    hY = 0
    while len([v for v in vecs if v[0]]) > 1:
        nz = sorted((v for v in vecs if v[0]), key=lambda v: abs(v[0]))
        p = nz[0]
        vecs = [p] + [v for v in vecs if not v[0]]
        for v in nz[1:]:
            q = v[0] // p[0]
            vecs.append([v[0] - q * p[0], v[1] - q * p[1]])
    for v in vecs:
        if not v[0]:
            hY = gcd(hY, v[1])
    lead = [v for v in vecs if v[0]]
    hX, s = (abs(lead[0][0]), lead[0][1] * (1 if lead[0][0] > 0 else -1)) if lead else (0, 0)
    if hY == 0 or hX == 0:
        raise ArithmeticError("congruence lattice is not of full rank")
    return hX, s % hY, hY


def _sign_ok(da: int, db: int, pX: int, pY: int) -> bool:
    return (da if pX else 1) == -(db if pY else 1)


def lattice_points(hX: int, s: int, hY: int, Xu: int, Yu: int) -> Tuple[np.ndarray, np.ndarray]:
    """All (X, Y) in [1, Xu] x [1, Yu] on the lattice."""
    n = Xu // hX
    if n == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    if hY * (n + 1) < INT64_SAFE and s * (n + 1) < INT64_SAFE:
        i = np.arange(1, n + 1, dtype=np.int64)
        y0 = (i * s) % hY
        y0 = np.where(y0 == 0, hY, y0)
    else:
        i = np.arange(1, n + 1, dtype=np.int64)
        y0 = np.array([(int(k) * s) % hY or hY for k in i], dtype=np.int64)
    ok = y0 <= Yu
    i, y0 = i[ok], y0[ok]
    if hY > Yu:
        return i * hX, y0
    reps = (Yu - y0) // hY + 1
    Xs = np.repeat(i * hX, reps)
    base = np.repeat(y0, reps)
    offs = np.arange(int(reps.sum()), dtype=np.int64) - np.repeat(np.cumsum(reps) - reps, reps)
    return Xs, base + offs * hY


def _dprime_exact(D: np.ndarray, C: int, z: int, Dp: int) -> np.ndarray:
    """Mask of gcd(D, C^z) == Dp, given Dp | D."""
    keep = np.ones(len(D), dtype=bool)
    for p, e in factor(C).items():
        ep = val(p, Dp) if Dp % p == 0 else 0
        if ep < e * z:
            keep &= (D // p**ep) % p != 0
    return keep


MULMOD_LIMIT = 2**50
# below this many points plain pow() beats the vector path
SMALL_BATCH = 48


def mulmod_vec(x: np.ndarray, y: np.ndarray, M: int) -> np.ndarray:
    """x * y mod M for 0 <= x, y < M < 2^50.

    The float quotient is off by at most one, so x y - q M lies in (-M, 2M)
    and the wrapped int64 arithmetic returns it exactly.
    """
    q = np.floor(x.astype(np.float64) * y.astype(np.float64) / M).astype(np.int64)
    with np.errstate(over="ignore"):
        r = x * y - q * np.int64(M)
    r = np.where(r < 0, r + M, r)
    return np.where(r >= M, r - M, r)


def pow_mod_vec(base: int, exps: np.ndarray, M: int) -> np.ndarray:
    """base^e mod M elementwise, M < 2^50."""
    if M >= MULMOD_LIMIT:
        raise ValueError("modulus too large for the vector path")
    out = np.ones(len(exps), dtype=np.int64)
    b = np.full(len(exps), base % M, dtype=np.int64)
    e = exps.copy()
    while e.any():
        odd = (e & 1).astype(bool)
        out[odd] = mulmod_vec(out[odd], b[odd], M)
        b = mulmod_vec(b, b, M)
        e >>= 1
    return out


def small_power(c: int, limit: int = MULMOD_LIMIT) -> Tuple[int, int]:
    """(c^k, k) with k >= 1 maximal below limit."""
    k, m = 1, c
    while m * c < limit:
        m *= c
        k += 1
    return m, k


def power_of(W: int, c: int) -> Optional[int]:
    """Z with c^Z = W, or None."""
    if W < c:
        return None
    Z = round(math.log(W) / math.log(c)) if W.bit_length() < 1000 else int(W.bit_length() / math.log2(c))
    for z in (Z - 1, Z, Z + 1):
        if z >= 1 and c**z == W:
            return z
    Z = 0
    while W % c == 0:
        W //= c
        Z += 1
    return Z if W == 1 else None


def pair_bounds(cand: Candidate, Z1: int) -> Tuple[int, int]:
    lc = math.log(cand.c)
    Xu = math.floor(Z1 * lc / math.log(cand.a) * (1 + 1e-12))
    Yu = math.floor(Z1 * lc / math.log(cand.b) * (1 + 1e-12))
    return Xu, Yu


def resolve(cand: Candidate, Z1: int) -> List[Hit]:
    """Every (X, Y, Z) != (x, y, z) with Z <= Z1 passing the sieve and the exact test."""
    a, b, c, x, y, z, Dp = cand.a, cand.b, cand.c, cand.x, cand.y, cand.z, cand.Dp
    da, db = cand.da, cand.db
    C = big_c(c)
    Xu, Yu = pair_bounds(cand, Z1)
    if Xu < 1 or Yu < 1:
        return []
    c2 = c * c
    alpha = min(val(2, a * a - 1), val(2, b * b - 1)) - 1 if halved(c) else None
    la, lb, lc = math.log(a), math.log(b), math.log(c)
    Mk, ks = small_power(c)
    hits = []
    for pX in (0, 1):
        for pY in (0, 1):
            if not _sign_ok(da, db, pX, pY):
                continue
            sa = 1 if da == 1 or pX == 1 else -1
            sb = 1 if db == 1 or pY == 1 else -1
            conds = [(-y, x, Dp), (sa * (a - da), sb * (b - db), c2)]
            hX, s, hY = kernel_lattice(conds)
            Xs, Ys = lattice_points(hX, s, hY, Xu, Yu)
            if not len(Xs):
                continue
            m = ((Xs & 1) == pX) & ((Ys & 1) == pY) & (np.gcd(Xs, Ys) == 1)
            Xs, Ys = Xs[m], Ys[m]
            D = np.abs(x * Ys - y * Xs)
            m = D != 0
            if alpha is not None and z - alpha > 0:
                m &= D % (1 << (z - alpha)) == 0
            Xs, Ys, D = Xs[m], Ys[m], D[m]
            m = _dprime_exact(D, C, z, Dp)
            Xs, Ys = Xs[m], Ys[m]
            # a^X + b^Y = c^Z with Z >= ks forces a zero residue mod c^ks
            Zlo = np.floor(np.maximum(Xs * la, Ys * lb) / lc * (1 - 1e-12))
            big = Zlo >= ks
            if big.any():
                if len(Xs) <= SMALL_BATCH:
                    keep = np.array([(pow(a, X, Mk) + pow(b, Y, Mk)) % Mk == 0
                                     for X, Y in zip(Xs.tolist(), Ys.tolist())], dtype=bool)
                else:
                    ux, ix = np.unique(Xs, return_inverse=True)
                    uy, iy = np.unique(Ys, return_inverse=True)
                    keep = (pow_mod_vec(a, ux, Mk)[ix] + pow_mod_vec(b, uy, Mk)[iy]) % Mk == 0
                m = keep | ~big
                Xs, Ys = Xs[m], Ys[m]
            for X, Y in zip(Xs.tolist(), Ys.tolist()):
                zl = max(X * la, Y * lb) / lc
                K = max(2, min(math.floor(zl * (1 - 1e-12)), 64))
                mod = c**K
                if (pow(a, X, mod) + pow(b, Y, mod)) % mod:
                    continue
                Z = power_of(a**X + b**Y, c)
                if Z is not None:
                    hits.append(Hit(a, b, c, x, y, z, X, Y, Z))
    return sorted(hits, key=lambda h: (h.Z, h.X, h.Y))


def resolve_scan(cand: Candidate, Z1: int) -> List[Hit]:
    """Straight double loop over (X, Y); slow reference for resolve()."""
    a, b, c, x, y, z, Dp = cand.a, cand.b, cand.c, cand.x, cand.y, cand.z, cand.Dp
    Xu, Yu = pair_bounds(cand, Z1)
    C = big_c(c)
    Cz = C**z
    out = []
    for X in range(1, Xu + 1):
        for Y in range(1, Yu + 1):
            if (cand.da**X) != -(cand.db**Y) or gcd(X, Y) != 1:
                continue
            if (cand.da ** (X - 1) * (a - cand.da) * X + cand.db ** (Y - 1) * (b - cand.db) * Y) % (c * c):
                continue
            D = abs(x * Y - X * y)
            if D == 0 or D % Dp:
                continue
            if halved(c) and z > min(val(2, a * a - 1), val(2, b * b - 1)) - 1 + val(2, D):
                continue
            if gcd(D, Cz) != Dp:
                continue
            Z = power_of(a**X + b**Y, c)
            if Z is not None:
                out.append(Hit(a, b, c, x, y, z, X, Y, Z))
    return sorted(out, key=lambda h: (h.Z, h.X, h.Y))
