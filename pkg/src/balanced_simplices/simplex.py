"""Oriented simplices in orbits: extraction, sizes, boundary parts, antisymmetry.

A simplex of size s, apex j and orientation eps is the multiset of orbit
values at j + eps*k for k in N^n with sum(k) <= s-1.  The last component
of j and eps is the time axis.  Cells are kept in a dense array of shape
(s,)*n indexed by k, with -1 outside the simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .multiset import ResidueMultiset, balance_witness
from .orbit import Orbit, OrbitBlock
from .residue import factorize

INT64_MAX = 2**63 - 1


class OutOfDomain(ValueError):
    pass


class Overflow(OverflowError):
    pass


class IndexOutOfRange(IndexError):
    pass


def cardinality(n: int, s: int) -> int:
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    c = math.comb(s + n - 1, n)
    if c > INT64_MAX:
        raise Overflow(f"C({s + n - 1}, {n}) exceeds 64 bits")
    return c


@lru_cache(maxsize=64)
def simplex_offsets(n: int, s: int) -> np.ndarray:
    """All k in N^n with sum(k) <= s-1 as an (N, n) array, lexicographic."""
    K = np.arange(s, dtype=np.int64).reshape(-1, 1)
    for _ in range(n - 1):
        room = s - K.sum(axis=1)
        K = np.concatenate([np.repeat(K, room, axis=0),
                            np.concatenate([np.arange(r) for r in room]).reshape(-1, 1)], axis=1)
    K.setflags(write=False)
    return K


def parse_orientation(text: str) -> tuple[int, ...]:
    out = []
    for ch in text.strip():
        if ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        else:
            raise ValueError(f"bad orientation character {ch!r}")
    return tuple(out)


def format_orientation(eps) -> str:
    return "".join("+" if e > 0 else "-" for e in eps)


@dataclass(frozen=True)
class SimplexSpec:
    apex: tuple[int, ...]
    orientation: tuple[int, ...]
    size: int

    def __post_init__(self):
        object.__setattr__(self, "apex", tuple(int(x) for x in self.apex))
        object.__setattr__(self, "orientation", tuple(int(e) for e in self.orientation))
        if len(self.apex) != len(self.orientation):
            raise ValueError("apex and orientation lengths differ")
        if any(e not in (-1, 1) for e in self.orientation):
            raise ValueError("orientation entries must be +1 or -1")
        if self.size < 1:
            raise ValueError("size must be >= 1")
        t = self.apex[-1]
        if t < 0 or (self.orientation[-1] == -1 and t < self.size - 1):
            raise OutOfDomain(f"simplex at time {t} of size {self.size} leaves the orbit")

    @property
    def n(self) -> int:
        return len(self.apex)

    def points(self) -> np.ndarray:
        """Orbit points j + eps*k, one per row, in offset order."""
        K = simplex_offsets(self.n, self.size)
        return np.asarray(self.apex) + K * np.asarray(self.orientation)

    def box(self):
        """(t_lo, t_hi, space_lo, space_shape) covering the simplex."""
        lo = [min(j, j + e * (self.size - 1)) for j, e in zip(self.apex, self.orientation)]
        return lo[-1], lo[-1] + self.size - 1, tuple(lo[:-1]), (self.size,) * (self.n - 1)

    def __str__(self):
        return f"apex={self.apex} eps={format_orientation(self.orientation)} s={self.size}"


@dataclass(frozen=True, eq=False)
class SimplexCells:
    """Dense cell array of a simplex together with its modulus."""

    values: np.ndarray
    modulus: int

    @property
    def n(self) -> int:
        return self.values.ndim

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def flat(self) -> np.ndarray:
        K = simplex_offsets(self.n, self.size)
        return self.values[tuple(K.T)]

    def multiset(self) -> ResidueMultiset:
        return ResidueMultiset.from_values(self.flat(), self.modulus)

    def __getitem__(self, k) -> int:
        return int(self.values[tuple(k)])


def _dense(n: int, s: int, flat: np.ndarray) -> np.ndarray:
    K = simplex_offsets(n, s)
    out = np.full((s,) * n, -1, dtype=flat.dtype)
    out[tuple(K.T)] = flat
    return out


def cells_from_block(block: OrbitBlock, spec: SimplexSpec, m: int) -> SimplexCells:
    return SimplexCells(_dense(spec.n, spec.size, block.at(spec.points())), m)


def extract_cells(orbit: Orbit, spec: SimplexSpec) -> SimplexCells:
    if spec.n != orbit.q + 1:
        raise ValueError(f"a {spec.n}-simplex does not fit a {orbit.q + 1}-dimensional orbit")
    block = orbit.block(*spec.box())
    return cells_from_block(block, spec, orbit.m)


def extract(orbit: Orbit, spec: SimplexSpec) -> ResidueMultiset:
    return extract_cells(orbit, spec).multiset()


def admissible_sizes(m: int, n: int, bound: int) -> list[int]:
    """All s <= bound with m | C(s+n-1, n)."""
    if m == 1:
        return list(range(1, bound + 1))
    fac = factorize(m)
    if min(fac) > n:
        # n consecutive integers hold at most one multiple of each p > n
        mods = [p**k for p, k in fac.items()]
        return [s for s in range(1, bound + 1)
                if all(size_class_offset(s, q, n) is not None for q in mods)]
    return [s for s in range(1, bound + 1) if math.comb(s + n - 1, n) % m == 0]


def size_class_offset(s: int, alpha: int, n: int) -> int | None:
    """The t in [0, n-1] with s = -t (mod alpha), or None."""
    for t in range(n):
        if (s + t) % alpha == 0:
            return t
    return None


# -- boundary ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BoundaryPart:
    kind: str
    index: tuple[int, ...]
    values: np.ndarray
    modulus: int
    arith: object = None

    def multiset(self) -> ResidueMultiset:
        return ResidueMultiset.from_values(self.values, self.modulus)


def _vertex_k(n: int, s: int, i: int) -> np.ndarray:
    k = np.zeros(n, dtype=np.int64)
    if i:
        k[i - 1] = s - 1
    return k


def boundary(source, kind: str, *index: int) -> BoundaryPart:
    """Vertex i, edge (i, j), facet i or row i of a simplex.

    ``source`` is a SimplexCells or an ArithSimplex; for the latter the part
    also carries its arithmetic description.
    """
    from .arith import ArithSimplex, arith_boundary

    if isinstance(source, ArithSimplex):
        t = arith_boundary(source, kind, *index)
        cells = source.cells()
        part = boundary(cells, kind, *index)
        return BoundaryPart(kind, part.index, part.values, part.modulus, t)
    cells: SimplexCells = source
    n, s = cells.n, cells.size
    K = simplex_offsets(n, s)
    vals = cells.values
    if kind == "vertex":
        (i,) = index
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"vertex {i} of an {n}-simplex")
        k = _vertex_k(n, s, i)
        return BoundaryPart(kind, (i,), vals[tuple(k)].reshape(1), cells.modulus)
    if kind == "edge":
        i, j = index
        if not (0 <= i <= n and 0 <= j <= n and i != j):
            raise IndexOutOfRange(f"edge {(i, j)} of an {n}-simplex")
        vi, vj = _vertex_k(n, s, i), _vertex_k(n, s, j)
        step = (vj - vi) // max(s - 1, 1)
        pts = vi + step * np.arange(s).reshape(-1, 1)
        return BoundaryPart(kind, (i, j), vals[tuple(pts.T)], cells.modulus)
    if kind == "facet":
        (i,) = index
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"facet {i} of an {n}-simplex")
        mask = K.sum(axis=1) == s - 1 if i == 0 else K[:, i - 1] == 0
        return BoundaryPart(kind, (i,), vals[tuple(K[mask].T)], cells.modulus)
    if kind == "row":
        (i,) = index
        if not 0 <= i < s:
            raise IndexOutOfRange(f"row {i} of a size-{s} simplex")
        mask = K[:, -1] == i
        return BoundaryPart(kind, (i,), vals[tuple(K[mask].T)], cells.modulus)
    raise ValueError(f"unknown boundary kind {kind!r}")


# -- antisymmetry ----------------------------------------------------------------


def antisymmetry_mirror(K: np.ndarray, s: int, u: int, v: int) -> np.ndarray:
    """Image of each offset under the reflection along the edge V_u V_v."""
    M = K.copy()
    if u == 0:
        M[:, v - 1] = s - 1 - K.sum(axis=1)
    else:
        M[:, u - 1], M[:, v - 1] = K[:, v - 1], K[:, u - 1]
    return M


def is_antisymmetric(cells, u: int, v: int, m: int | None = None) -> bool:
    """True iff a[k] + a[mirror(k)] = 0 for every cell, mirror along edge (u, v).

    ``cells`` is a SimplexCells or a plain 1-D sequence (then ``m`` is required
    and (u, v) must be (0, 1)).
    """
    if not isinstance(cells, SimplexCells):
        if m is None:
            raise ValueError("modulus required for raw sequences")
        cells = SimplexCells(np.asarray(cells, dtype=np.int64) % m, m)
    n, s = cells.n, cells.size
    if not 0 <= u < v <= n:
        raise IndexOutOfRange(f"need 0 <= u < v <= {n}")
    K = simplex_offsets(n, s)
    M = antisymmetry_mirror(K, s, u, v)
    a = cells.values[tuple(K.T)]
    b = cells.values[tuple(M.T)]
    return bool(((a + b) % cells.modulus == 0).all())


# -- text format -------------------------------------------------------------------


def parse_triangular(text: str, m: int) -> SimplexCells:
    """Parse triangular text: one row per line, comma separated entries.

    Line y holds the cells with k_2 = y, entry x is k_1.  Blank lines separate
    the blocks k_3 = 0, 1, ... of a tetrahedron.  A single line is a sequence.
    """
    blocks = [[ln for ln in b.splitlines() if ln.strip()] for b in text.strip().split("\n\n")]
    blocks = [b for b in blocks if b]
    rows = [[[int(x) for x in ln.replace(",", " ").split()] for ln in b] for b in blocks]
    s = len(rows[0][0])
    if len(blocks) > 1:
        n = 3
    elif len(rows[0]) > 1:
        n = 2
    else:
        n = 1
    out = np.full((s,) * n, -1, dtype=np.int64)
    for z, block in enumerate(rows):
        for y, line in enumerate(block):
            for x, val in enumerate(line):
                k = (x, y, z)[:n]
                if sum(k) > s - 1:
                    raise ValueError(f"entry at {k} lies outside a size-{s} simplex")
                out[k] = val % m
    got = int((out >= 0).sum())
    if got != cardinality(n, s):
        raise ValueError(f"expected {cardinality(n, s)} entries, got {got}")
    return SimplexCells(out, m)


def format_triangular(cells: SimplexCells) -> str:
    v, n, s = cells.values, cells.n, cells.size
    if n == 1:
        return ",".join(str(int(x)) for x in v)
    if n == 2:
        return "\n".join(",".join(str(int(v[x, y])) for x in range(s - y)) for y in range(s))
    if n == 3:
        return "\n\n".join(
            "\n".join(",".join(str(int(v[x, y, z])) for x in range(s - y - z)) for y in range(s - z))
            for z in range(s))
    raise ValueError("text format covers n <= 3")


def balance_report(M: ResidueMultiset) -> dict:
    w = balance_witness(M)
    return {
        "counts": {str(k): c for k, c in M.as_dict().items()},
        "total": M.total,
        "balanced": w is None,
        "witness": list(w) if w else None,
    }
