"""Exhaustive search over Steinhaus triangles and the two Steinhaus-family checks.

First rows are read as base-m counters, row[0] most significant, so the row
with index k is the base-m expansion of k padded to s digits.  A shard is a
contiguous index interval.
"""

from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numba
import numpy as np

from .arith import PreconditionViolated
from .automaton import pascal_weights
from .multiset import ResidueMultiset
from .orbit import BudgetExceeded, ConeOrbit, InterlaceSeed
from .residue import is_unit, ord_, units
from .simplex import SimplexSpec, cells_from_block
from .verify import TheoremId, Verdict, _witness, congruent_sizes

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 10**8
MAX_COLLECT = 1 << 20


def steinhaus_rows(row, m: int) -> list[np.ndarray]:
    """Rows of the Steinhaus triangle: each next row holds sums of adjacent entries."""
    cur = np.asarray(row, dtype=np.int64) % m
    rows = [cur]
    while len(cur) > 1:
        cur = (cur[:-1] + cur[1:]) % m
        rows.append(cur)
    return rows


def steinhaus(row, m: int) -> tuple[list[np.ndarray], ResidueMultiset]:
    if len(row) < 1:
        raise ValueError("first row must be non-empty")
    rows = steinhaus_rows(row, m)
    return rows, ResidueMultiset.from_values(np.concatenate(rows), m)


def row_of_index(k: int, m: int, s: int) -> tuple[int, ...]:
    out = []
    for _ in range(s):
        k, r = divmod(k, m)
        out.append(r)
    return tuple(reversed(out))


def index_of_row(row, m: int) -> int:
    k = 0
    for x in row:
        k = k * m + x
    return k


def symmetry_weights(m: int) -> np.ndarray:
    """Weight per leading nonzero digit: phi(m/x) for divisors x of m, else 0."""
    w = np.zeros(m, dtype=np.int64)
    for x in range(1, m):
        if m % x == 0:
            w[x] = sum(1 for u in range(m // x) if math.gcd(u, m // x) == 1)
    return w


@numba.njit(cache=True)
def _scan(m, s, start, end, target, use_sym, weights, out, max_out):
    digits = np.zeros(s, dtype=np.int64)
    k = start
    for p in range(s - 1, -1, -1):
        digits[p] = k % m
        k //= m
    tri = np.empty(s, dtype=np.int64)
    counts = np.empty(m, dtype=np.int64)
    total = 0
    found = 0
    for idx in range(start, end):
        weight = 1
        if use_sym:
            lead = 0
            for p in range(s):
                if digits[p] != 0:
                    lead = digits[p]
                    break
            if lead != 0:
                weight = weights[lead]
        if weight > 0:
            counts[:] = 0
            for p in range(s):
                tri[p] = digits[p]
            ok = True
            length = s
            while length > 0 and ok:
                for i in range(length):
                    v = tri[i]
                    counts[v] += 1
                    if counts[v] > target:
                        ok = False
                        break
                    if i + 1 < length:
                        tri[i] = (v + tri[i + 1]) % m
                length -= 1
            if ok:
                total += weight
                if found < max_out:
                    out[found] = idx
                found += 1
        # advance the base-m counter
        p = s - 1
        while p >= 0:
            digits[p] += 1
            if digits[p] < m:
                break
            digits[p] = 0
            p -= 1
    return total, found


@dataclass
class ShardResult:
    start: int
    end: int
    count: int
    reps: list[int] = field(default_factory=list)


def run_shard(m: int, s: int, start: int, end: int, symmetry: bool, collect: bool) -> ShardResult:
    target = math.comb(s + 1, 2) // m
    weights = symmetry_weights(m)
    cap = MAX_COLLECT if collect else 0
    out = np.empty(max(cap, 1), dtype=np.int64)
    total, found = _scan(m, s, start, end, target, symmetry, weights, out, cap)
    if collect and found > cap:
        raise BudgetExceeded(f"more than {cap} balanced representatives in one shard")
    return ShardResult(start, end, int(total), [int(x) for x in out[: min(found, cap)]])


def _run_shard_args(args):
    return run_shard(*args)


def expand_representative(row, m: int) -> list[tuple[int, ...]]:
    """The rows a symmetry representative stands for.

    A representative has leading nonzero digit g dividing m.  For each x with
    gcd(x, m) = g one unit u with u*g = x is fixed; u*row runs over the rows
    with leading digit x, which are in bijection with those led by g.
    """
    g = next((x for x in row if x), 0)
    if g == 0:
        return [tuple(row)]
    pick = {}
    for u in units(m):
        pick.setdefault(u * g % m, u)
    return sorted(tuple(u * y % m for y in row) for u in pick.values())


def shard_bounds(total: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, min(shards, total))
    edges = [total * i // shards for i in range(shards + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a]


def read_checkpoint(path: Path) -> dict[tuple[int, int], int]:
    done = {}
    if path and path.exists():
        for line in path.read_text().splitlines():
            parts = line.split()
            if len(parts) == 4 and parts[2] == "done":
                done[(int(parts[0]), int(parts[1]))] = int(parts[3])
    return done


@dataclass
class SearchResult:
    m: int
    s: int
    count: int
    rows: list[tuple[int, ...]] | None
    enumerated: int
    shards: int
    symmetry: bool
    reason: str = ""
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        d = {
            "m": self.m, "s": self.s, "count": self.count, "enumerated": self.enumerated,
            "shards": self.shards, "symmetry": self.symmetry, "reason": self.reason,
            "elapsed": round(self.elapsed, 6),
        }
        if self.rows is not None:
            d["rows"] = [list(r) for r in self.rows]
        return d


def search_balanced(m: int, s: int, shards: int | None = None, symmetry: bool = False,
                    count_only: bool = False, workers: int | None = None,
                    checkpoint: str | os.PathLike | None = None,
                    limit: int = DEFAULT_LIMIT) -> SearchResult:
    """All first rows of length s whose Steinhaus triangle is balanced in Z/mZ."""
    started = time.perf_counter()
    if s < 1 or m < 1:
        raise ValueError("need m >= 1 and s >= 1")
    total = m**s
    if math.comb(s + 1, 2) % m:
        return SearchResult(m, s, 0, None if count_only else [], 0, 0, symmetry,
                            f"{m} does not divide C({s + 1}, 2)", time.perf_counter() - started)
    if total > limit and not shards:
        raise BudgetExceeded(f"{m}^{s} = {total} rows exceed the limit {limit}; give shards")
    bounds = shard_bounds(total, shards or 1)
    ckpt = Path(checkpoint) if checkpoint else None
    done = read_checkpoint(ckpt) if ckpt else {}
    if done and not count_only:
        raise ValueError("checkpoint resume supports count-only runs")
    todo = [b for b in bounds if b not in done]
    jobs = [(m, s, a, b, symmetry, not count_only) for a, b in todo]
    results = [ShardResult(a, b, c) for (a, b), c in done.items() if (a, b) in set(bounds)]
    fh = open(ckpt, "a") if ckpt else None
    try:
        if workers and workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for r in pool.map(_run_shard_args, jobs):
                    results.append(r)
                    if fh:
                        fh.write(f"{r.start} {r.end} done {r.count}\n")
                        fh.flush()
        else:
            for job in jobs:
                r = run_shard(*job)
                results.append(r)
                if fh:
                    fh.write(f"{r.start} {r.end} done {r.count}\n")
                    fh.flush()
    finally:
        if fh:
            fh.close()
    results.sort(key=lambda r: r.start)
    count = sum(r.count for r in results)
    rows = None
    if not count_only:
        rows = []
        for r in results:
            for k in r.reps:
                row = row_of_index(k, m, s)
                rows.extend(expand_representative(row, m) if symmetry else [row])
        rows.sort()
        if len(rows) != count:
            raise AssertionError(f"expanded {len(rows)} rows but counted {count}")
    log.info("search m=%d s=%d: %d balanced over %d rows", m, s, count, total)
    return SearchResult(m, s, count, rows, total, len(bounds), symmetry, "",
                        time.perf_counter() - started)


# -- statements about arithmetic and interlaced first rows -------------------------------


def verify_steinhaus_arithmetic(m: int, a: int = 0, d: int = 1, count: int = 2) -> Verdict:
    """Steinhaus triangles on AP(a, d, s) are balanced for s = 0, -1 mod ord_m(2^m) m."""
    started = time.perf_counter()
    v = Verdict(TheoremId.STEINHAUS_ARITHMETIC)
    if m % 2 == 0:
        raise PreconditionViolated(f"m={m} must be odd")
    if not is_unit(d, m):
        raise PreconditionViolated(f"d={d} is not invertible mod {m}")
    P = ord_(pow(2, m, m), m) * m
    sizes = congruent_sizes(P, (0, 1), count)
    v.notes.append(f"size period {P}; sizes {sizes}")
    for s in sizes:
        _, M = steinhaus([(a + i * d) % m for i in range(s)], m)
        v.record({"m": m, "a": a, "d": d, "s": s}, M.is_balanced(), _witness(M))
    return v.finish(started)


def interlace_hits(m: int, s: int, eps, times: int | None = None):
    """Apexes of balanced triangles of orientation eps and size s in the interlace orbit."""
    W = pascal_weights(1, m)
    period = 3 * m
    t_max = times if times is not None else 2 * period
    t_lo = s - 1 if eps[1] < 0 else 0
    orbit = ConeOrbit(W, InterlaceSeed(m))
    lo = -(s - 1)
    block_t_lo = max(t_lo - (s - 1), 0)
    block = orbit.block(block_t_lo, t_lo + t_max + s - 1, (lo,), (period + 2 * s,))
    hits = []
    for t in range(t_lo, t_lo + t_max + 1):
        for i in range(period):
            spec = SimplexSpec((i, t), eps, s)
            if cells_from_block(block, spec, m).multiset().is_balanced():
                hits.append((i, t))
    return hits


def verify_steinhaus_interlace(m: int, bound: int | None = None) -> Verdict:
    """Balanced Steinhaus (-+) triangles at s = 0 mod m, and both orientations at s = -1 mod 3m."""
    started = time.perf_counter()
    v = Verdict(TheoremId.STEINHAUS_INTERLACE)
    if m % 2 == 0:
        raise PreconditionViolated(f"m={m} must be odd")
    bound = bound or 3 * m
    cases = [(s, (-1, 1)) for s in range(m, bound + 1, m)]
    cases += [(s, e) for s in range(3 * m - 1, bound + 1, 3 * m) for e in ((-1, 1), (1, -1))]
    for s, eps in sorted(cases):
        hits = interlace_hits(m, s, eps)
        v.record({"m": m, "s": s, "eps": "".join("+" if e > 0 else "-" for e in eps)},
                 bool(hits), "no balanced triangle in the scanned window")
        if hits:
            v.notes.append(f"s={s} eps={eps}: {len(hits)} balanced apexes, first {hits[0]}")
    return v.finish(started)
