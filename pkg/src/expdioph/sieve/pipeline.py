"""Rows -> candidates -> resolution, split into independent work units.

A unit is one (row, c) pair. Units can be spread over worker processes and
their results are appended to a JSONL checkpoint so an interrupted run resumes
where it stopped. Output does not depend on how the work was split.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from functools import lru_cache
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..baker import kc_value
from . import candidates as cands
from . import rows as R
from .resolve import Hit, resolve

SCHEMA = "expdioph-sieve-checkpoint"
SCHEMA_VERSION = 1
WORKERS_ENV = "EXPDIOPH_WORKERS"
BRANCHES = ("bigx", "x1")
VARIANTS = ("large", "small")
C1_MODES = ("union", "computed", "reference")


class CheckpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class Unit:
    """One slice of work: a (z, X) row at a single c, with t and Z1 when known."""

    z: int
    X: int
    c: int
    t: int = -1
    Z1: int = 0

    def key(self) -> str:
        return f"{self.z}:{self.X}:{self.c}:{self.t}:{self.Z1}"


@dataclass
class PipelineResult:
    branch: str
    variant: str
    solutions: List[Hit]
    stats: Dict[str, int] = field(default_factory=dict)


def _c_limit(row: R.PairRow, mode: str) -> int:
    if mode == "computed":
        return row.c1
    if mode == "reference":
        return row.c1_ref or row.c1
    return row.c_max


def build_units(branch: str, variant: str, c_range: Optional[Tuple[int, int]] = None,
                c1_mode: str = "union", z_range: Optional[Tuple[int, int]] = None,
                z2_c_max: Optional[int] = None) -> Tuple[List[Unit], Dict[str, int]]:
    """Step 1 (and the t / Z-bound refinements for small c), flattened into units.

    z_range keeps rows with z in [lo, hi]; z2_c_max additionally caps c on z = 2.
    """
    if branch not in BRANCHES or variant not in VARIANTS or c1_mode not in C1_MODES:
        raise ValueError(f"unknown branch/variant/c1 mode: {branch}/{variant}/{c1_mode}")
    lo, hi = c_range if c_range else (0, math.inf)
    stats: Dict[str, int] = {}
    units: List[Unit] = []
    if variant == "large":
        rows = R.bigx_large_rows() if branch == "bigx" else R.x1_large_rows()
        stats["rows"] = len(rows)
        for r in rows:
            top = _c_limit(r, c1_mode) if branch == "bigx" else r.c1
            for c in range(max(11, lo), min(top, hi) + 1):
                if R.admissible_large(c):
                    units.append(Unit(r.z, r.X, c, Z1=r.Z1))
    else:
        rows, tv, zb = _small_rows(branch)
        stats.update(rows=len(rows), rows_t=len(tv), rows_z=len(zb))
        units = [Unit(r.z, r.X, r.c, r.t, r.Z1) for r in zb if lo <= r.c <= hi]
    if z_range:
        units = [u for u in units if z_range[0] <= u.z <= z_range[1]]
    if z2_c_max is not None:
        units = [u for u in units if u.z != 2 or u.c <= z2_c_max]
    stats["units"] = len(units)
    return units, stats


@lru_cache(maxsize=None)
def _small_rows(branch: str) -> Tuple[tuple, tuple, tuple]:
    # the Z-bound search dominates; rows are pure functions of the branch
    if branch == "bigx":
        rows = R.bigx_small_rows()
        tv = R.bigx_small_tvalues(rows)
        return tuple(rows), tuple(tv), tuple(R.bigx_small_zbounds(tv))
    rows = R.x1_small_rows()
    tv = R.x1_small_tvalues(rows)
    return tuple(rows), tuple(tv), tuple(R.x1_small_zbounds(tv))


def _candidate_Z1(k: cands.Candidate, Kc: float) -> int:
    return math.floor(Kc * math.log(k.a) * math.log(k.b) / math.log(k.c) ** 2 * (1 + 1e-12))


def run_unit(branch: str, variant: str, u: Unit) -> Tuple[int, List[Hit]]:
    """Steps 2 and 3 for one unit: (candidate count, hits)."""
    n, hits = 0, []
    if branch == "bigx":
        if variant == "large":
            Kc = R.kc_closed(u.c)
            gen = cands.bigx_large_candidates(u.z, u.X, u.c)
        else:
            Kc = kc_value(u.c)
            gen = cands.bigx_small_candidates(u.c, u.z, u.X, u.t, Kc)
        for k in gen:
            n += 1
            Z1 = _candidate_Z1(k, Kc)
            if u.Z1:
                Z1 = min(Z1, u.Z1)
            hits += resolve(k, Z1)
    else:
        gen = (cands.x1_large_candidates(u.c, u.z, u.Z1) if variant == "large"
               else cands.x1_small_candidates(u.c, u.z, u.t, u.Z1))
        for k in gen:
            n += 1
            hits += resolve(k, u.Z1)
    return n, hits


def _run_packed(args):
    branch, variant, u = args
    n, hits = run_unit(branch, variant, u)
    return u, n, hits


# checkpoint file: a header line, then one line per finished unit


def _fingerprint(branch: str, variant: str, units: Sequence[Unit]) -> str:
    h = hashlib.sha256(f"{branch}|{variant}".encode())
    for u in units:
        h.update(u.key().encode() + b"\n")
    return h.hexdigest()


def _header(branch: str, variant: str, units: Sequence[Unit]) -> dict:
    return {"schema": SCHEMA, "version": str(SCHEMA_VERSION), "branch": branch, "variant": variant,
            "units": str(len(units)), "fingerprint": _fingerprint(branch, variant, units)}


def _hit_record(h: Hit) -> List[str]:
    return [str(v) for v in asdict(h).values()]


def _unit_record(u: Unit, n: int, hits: List[Hit]) -> dict:
    return {"unit": u.key(), "candidates": str(n), "hits": [_hit_record(h) for h in hits]}


def _dump(obj: dict) -> str:
    # sort_keys pins the key order so equal runs give byte-equal files
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_checkpoint(path: str, header: dict) -> Dict[str, Tuple[int, List[Hit]]]:
    """Finished units from an existing checkpoint, after validating it against header."""
    done: Dict[str, Tuple[int, List[Hit]]] = {}
    with open(path, encoding="utf-8") as f:
        lines = f.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CheckpointError(f"{path}: empty checkpoint (no header)")
    try:
        got = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise CheckpointError(f"{path}:1: unreadable header ({e})") from None
    if got.get("schema") != SCHEMA or got.get("version") != str(SCHEMA_VERSION):
        raise CheckpointError(f"{path}: schema {got.get('schema')!r} v{got.get('version')!r} not supported")
    if got != header:
        raise CheckpointError(f"{path}: checkpoint belongs to a different run configuration")
    for i, line in enumerate(lines[1:], start=2):
        try:
            rec = json.loads(line)
            hits = [Hit(*map(int, h)) for h in rec["hits"]]
            done[rec["unit"]] = (int(rec["candidates"]), hits)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise CheckpointError(f"{path}:{i}: corrupt record ({e})") from None
    return done


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_units(branch: str, variant: str, units: Sequence[Unit], workers: Optional[int] = None,
              checkpoint: Optional[str] = None,
              progress: Optional[Callable[[int, int], None]] = None) -> Tuple[int, List[Hit]]:
    workers = workers or default_workers()
    done: Dict[str, Tuple[int, List[Hit]]] = {}
    out = None
    if checkpoint:
        header = _header(branch, variant, units)
        if os.path.exists(checkpoint) and os.path.getsize(checkpoint):
            done = load_checkpoint(checkpoint, header)
            out = open(checkpoint, "a", encoding="utf-8")
        else:
            out = open(checkpoint, "w", encoding="utf-8")
            out.write(_dump(header) + "\n")
            out.flush()
    todo = [u for u in units if u.key() not in done]
    try:
        if workers > 1 and len(todo) > 1:
            pool = Pool(workers)
            it: Iterable = pool.imap_unordered(_run_packed, [(branch, variant, u) for u in todo])
        else:
            pool = None
            it = (_run_packed((branch, variant, u)) for u in todo)
        for i, (u, n, hits) in enumerate(it, 1):
            done[u.key()] = (n, hits)
            if out:
                out.write(_dump(_unit_record(u, n, hits)) + "\n")
                out.flush()
            if progress:
                progress(i, len(todo))
        if pool:
            pool.close()
            pool.join()
    finally:
        if out:
            out.close()
    keys = {u.key() for u in units}
    total = sum(n for k, (n, _) in done.items() if k in keys)
    hits = {h for k, (_, hs) in done.items() if k in keys for h in hs}
    return total, sort_hits(hits)


def sort_hits(hits: Iterable[Hit]) -> List[Hit]:
    return sorted(set(hits), key=lambda h: (h.c, h.a, h.b, h.z, h.Z, h.x, h.y, h.X, h.Y))


def run_pipeline(branch: str, variant: str, c_range: Optional[Tuple[int, int]] = None,
                 c1_mode: str = "union", workers: Optional[int] = None,
                 checkpoint: Optional[str] = None,
                 progress: Optional[Callable[[int, int], None]] = None,
                 z_range: Optional[Tuple[int, int]] = None,
                 z2_c_max: Optional[int] = None) -> PipelineResult:
    units, stats = build_units(branch, variant, c_range, c1_mode, z_range, z2_c_max)
    n, hits = run_units(branch, variant, units, workers, checkpoint, progress)
    stats["candidates"] = n
    stats["solutions"] = len(hits)
    return PipelineResult(branch, variant, hits, stats)
