"""Arithmetic simplices AS(a, d, s) and the analytic results about them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .automaton import WeightScheme
from .multiset import DENSE_LIMIT, ResidueMultiset
from .orbit import ArithmeticOrbit, ArithmeticSeed, closed_form, derived_difference
from .residue import NotInvertible, is_unit, ord_
from .simplex import (
    IndexOutOfRange,
    SimplexCells,
    SimplexSpec,
    cardinality,
    extract_cells,
    simplex_offsets,
    size_class_offset,
)

ENUMERATION_LIMIT = 10**7
SAMPLE_CELLS = 10**4


class PreconditionViolated(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ArithSimplex:
    """The multiset {a + i_1 d_1 + ... + i_n d_n : i in N^n, sum(i) <= s-1} in Z/mZ."""

    a: int
    d: tuple[int, ...]
    s: int
    m: int

    def __post_init__(self):
        if not self.d:
            raise ValueError("an arithmetic simplex needs n >= 1")
        if self.s < 1:
            raise ValueError("size must be >= 1")
        object.__setattr__(self, "a", self.a % self.m)
        object.__setattr__(self, "d", tuple(x % self.m for x in self.d))

    @property
    def n(self) -> int:
        return len(self.d)

    def __len__(self) -> int:
        return cardinality(self.n, self.s)

    def vertex(self, i: int) -> int:
        return (self.a + (self.s - 1) * (self.d[i - 1] if i else 0)) % self.m

    def values(self) -> np.ndarray:
        """Cell values in offset order."""
        K = simplex_offsets(self.n, self.s)
        out = np.full(len(K), self.a, dtype=object if self.m >= 2**31 else np.int64)
        for k, dk in enumerate(self.d):
            out = (out + K[:, k] * dk) % self.m
        return out

    def cells(self) -> SimplexCells:
        K = simplex_offsets(self.n, self.s)
        out = np.full((self.s,) * self.n, -1, dtype=np.int64)
        out[tuple(K.T)] = self.values()
        return SimplexCells(out, self.m)

    def __str__(self):
        return f"AS({self.a},({','.join(map(str, self.d))}),{self.s}) mod {self.m}"


def counts_by_size(a: int, d, s_max: int, m: int) -> np.ndarray:
    """Counts of AS(a, d, s) for every s in [0, s_max], as an (s_max+1, m) array.

    Splitting off the facet k_n = 0 gives AS(a,d,s) = AS(a,d',s) + AS(a+d_n,d,s-1)
    with d' = d without d_n, so each axis costs one shifted running sum.
    """
    C = np.zeros((s_max + 1, m), dtype=np.int64)
    C[1:, a % m] = 1
    for dk in d:
        nxt = np.zeros_like(C)
        for s in range(1, s_max + 1):
            nxt[s] = C[s] + np.roll(nxt[s - 1], dk % m)
        C = nxt
    return C


def as_multiset(t: ArithSimplex, method: str = "auto") -> ResidueMultiset:
    if method == "auto":
        dense_ok = t.m <= DENSE_LIMIT
        method = "dp" if dense_ok and t.n * t.s * t.m < 4 * len(t) + 10**6 else "enumerate"
    if method == "dp":
        return ResidueMultiset(t.m, counts_by_size(t.a, t.d, t.s, t.m)[t.s])
    if method == "enumerate":
        return ResidueMultiset.from_values(t.values(), t.m)
    raise ValueError(f"unknown method {method!r}")


def is_balanced_arith(t: ArithSimplex) -> bool:
    return as_multiset(t).is_balanced()


# -- analytic multiplicity tables -------------------------------------------------


@dataclass(frozen=True)
class EuclideanSplit:
    lam: int
    mu: int

    @classmethod
    def of(cls, s: int, m: int) -> EuclideanSplit:
        lam, mu = divmod(s, m)
        return cls(lam, mu)


def analytic_degenerate(a: int, d: int, s: int, m: int) -> tuple[ResidueMultiset, list[int], bool]:
    """Counts of AS(a, (0, d), s) from the closed formula.

    Returns (multiset, chain, strictly_decreasing) where chain[i] is the
    multiplicity of a + i*d.
    """
    if not is_unit(d, m):
        raise NotInvertible(d, m)
    sp = EuclideanSplit.of(s, m)
    chain = [math.comb(sp.lam + 1, 2) * m + ceil_div(s - i, m) * (sp.mu - i) for i in range(m)]
    counts = {(a + i * d) % m: c for i, c in enumerate(chain)}
    decreasing = all(x > y for x, y in zip(chain, chain[1:]))
    return ResidueMultiset(m, counts), chain, decreasing


def analytic_period2(a: int, d1: int, d2: int, s: int, m: int) -> ResidueMultiset:
    """Counts of AS(a, (d1, d2), s) when d2, d2-d1 are units and s = 0, -1 mod m.

    Along a + i*d2 the count is C(s+1,2)/m + ceil(s/m)((g-1)/2 - i) for
    i in [0, g-1], g = gcd(d1, m), and the table has period g.  Computed with
    numerator scaled by 2m so everything stays integral.
    """
    if not is_unit(d2, m):
        raise PreconditionViolated(f"d2={d2 % m} is not invertible mod {m}")
    if not is_unit(d2 - d1, m):
        raise PreconditionViolated(f"d2-d1={(d2 - d1) % m} is not invertible mod {m}")
    if s % m not in (0, m - 1 if m > 1 else 0):
        raise PreconditionViolated(f"s={s} is not 0 or -1 mod {m}")
    g = math.gcd(d1 % m, m) if d1 % m else m
    counts = np.zeros(m, dtype=np.int64)
    for i in range(g):
        num = s * (s + 1) + m * ceil_div(s, m) * (g - 1 - 2 * i)
        value, rem = divmod(num, 2 * m)
        if rem:
            raise ArithmeticError(f"non-integral multiplicity {num}/{2 * m}")
        x = (a + i * d2) % g
        counts[x::g] = value
    return ResidueMultiset(m, counts)


def relabelings(t: ArithSimplex):
    """Equivalent descriptions of a triangle, one per choice of apex vertex and axis order."""
    a, (d1, d2), s, m = t.a, t.d, t.s, t.m
    apexes = [(a, d1, d2), (a + (s - 1) * d1, -d1, d2 - d1), (a + (s - 1) * d2, d1 - d2, -d2)]
    for a0, e1, e2 in apexes:
        yield a0 % m, e1 % m, e2 % m
        yield a0 % m, e2 % m, e1 % m


def period2_table(t: ArithSimplex) -> tuple[ResidueMultiset, tuple[int, int, int]]:
    """The analytic table for a triangle, relabeling until the hypotheses hold."""
    if t.n != 2:
        raise ValueError("period-2 formula concerns triangles")
    last = None
    for a0, e1, e2 in relabelings(t):
        try:
            return analytic_period2(a0, e1, e2, t.s, t.m), (a0, e1, e2)
        except PreconditionViolated as exc:
            last = exc
    raise PreconditionViolated(f"no relabeling of {t} meets the hypotheses ({last})")


# -- boundary and facet identity-------------------------------------------------------


def arith_boundary(t: ArithSimplex, kind: str, *index: int):
    """Arithmetic description of a boundary part; 0-dimensional parts are residues."""
    n, s, m, d = t.n, t.s, t.m, t.d
    dd = (0,) + d
    if kind == "vertex":
        (i,) = index
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"vertex {i} of an {n}-simplex")
        return t.vertex(i)
    if kind == "edge":
        i, j = index
        if not (0 <= i <= n and 0 <= j <= n and i != j):
            raise IndexOutOfRange(f"edge {(i, j)} of an {n}-simplex")
        return ArithSimplex(t.vertex(i), (dd[j] - dd[i],), s, m)
    if kind == "facet":
        (i,) = index
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"facet {i} of an {n}-simplex")
        if n == 1:
            return t.vertex(1 - i)
        if i == 0:
            return ArithSimplex(t.vertex(1), tuple(x - d[0] for x in d[1:]), s, m)
        return ArithSimplex(t.a, d[: i - 1] + d[i:], s, m)
    if kind == "row":
        (i,) = index
        if not 0 <= i < s:
            raise IndexOutOfRange(f"row {i} of a size-{s} simplex")
        a = t.a + i * d[-1]
        if n == 1:
            return a % m
        return ArithSimplex(a, d[:-1], s - i, m)
    raise ValueError(f"unknown boundary kind {kind!r}")


def _counts(part, m: int) -> np.ndarray:
    if isinstance(part, ArithSimplex):
        return as_multiset(part).counts()
    c = np.zeros(m, dtype=np.int64)
    c[part % m] = 1
    return c


def facet_identity_check(t: ArithSimplex, i: int, j: int) -> bool:
    """m(x+d_j) - m(x+d_i) == m_{F_j}(x+d_j) - m_{F_i}(x+d_i) for every x."""
    n, m = t.n, t.m
    if not 0 <= i < j <= n:
        raise IndexOutOfRange(f"need 0 <= i < j <= {n}")
    dd = (0,) + t.d
    c = as_multiset(t).counts()
    fi = _counts(arith_boundary(t, "facet", i), m)
    fj = _counts(arith_boundary(t, "facet", j), m)
    lhs = np.roll(c, -dd[j]) - np.roll(c, -dd[i])
    rhs = np.roll(fj, -dd[j]) - np.roll(fi, -dd[i])
    return bool(np.array_equal(lhs, rhs))


# -- subsimplex decomposition ---------------------------------------------------------


@dataclass
class Decomposition:
    alpha: int
    t: int
    parts: dict[tuple[int, ...], ArithSimplex | None]
    mode: str = "unverified"
    verified: bool = False
    mismatches: list = field(default_factory=list)

    def sizes(self) -> dict[tuple[int, ...], int]:
        return {k: (p.s if p else 0) for k, p in self.parts.items()}

    def total(self) -> int:
        return sum(len(p) for p in self.parts.values() if p)

    def union(self, m: int) -> ResidueMultiset:
        out = ResidueMultiset(m)
        for p in self.parts.values():
            if p:
                out = out + as_multiset(p)
        return out


def predicted_parts(W: WeightScheme, seed: ArithmeticSeed, spec: SimplexSpec, alpha: int):
    m = W.modulus
    n, s = spec.n, spec.size
    if n != W.q + 1:
        raise ValueError("simplex dimension must be q+1")
    if not is_unit(W.sigma, m):
        raise PreconditionViolated(f"sigma={W.sigma} is not invertible mod {m}")
    if alpha < 1 or alpha % ord_(W.sigma, m):
        raise PreconditionViolated(f"ord(sigma)={ord_(W.sigma, m)} does not divide alpha={alpha}")
    t = size_class_offset(s, alpha, n)
    if t is None:
        raise PreconditionViolated(f"s={s} is not -t mod {alpha} for t in [0, {n - 1}]")
    dt = tuple(seed.d) + (derived_difference(W, seed.d),)
    eps, j = spec.orientation, spec.apex
    parts = {}
    for k in itertools.product(range(alpha), repeat=n):
        size = ceil_div(s, alpha) - (sum(k) + t) // alpha
        if size <= 0:
            parts[k] = None
            continue
        p = tuple(jj + e * kk for jj, e, kk in zip(j, eps, k))
        apex = closed_form(W, seed, p[:-1], p[-1])
        scale = alpha * pow(W.sigma, j[-1] + eps[-1] * k[-1], m)
        diffs = tuple(scale * e * x for e, x in zip(eps, dt))
        parts[k] = ArithSimplex(apex, diffs, size, m)
    return parts, t


def decompose(W: WeightScheme, seed: ArithmeticSeed, spec: SimplexSpec, alpha: int,
              verify: bool = True, rng: np.random.Generator | None = None) -> Decomposition:
    """Split a simplex into the alpha^n subsimplices taking one cell every alpha steps."""
    parts, t = predicted_parts(W, seed, spec, alpha)
    dec = Decomposition(alpha, t, parts)
    if not verify:
        return dec
    n, s, m = spec.n, spec.size, W.modulus
    if cardinality(n, s) <= ENUMERATION_LIMIT:
        dec.mode = "enumerated"
        cells = extract_cells(ArithmeticOrbit(W, seed), spec).values
        covered = 0
        for k, part in parts.items():
            sub = cells[tuple(slice(kk, None, alpha) for kk in k)]
            valid = int((sub >= 0).sum())
            if part is None:
                if valid:
                    dec.mismatches.append((k, "empty part predicted"))
                continue
            covered += valid
            pc = part.cells().values
            window = sub[tuple(slice(0, part.s) for _ in range(n))]
            if valid != len(part) or window.shape != pc.shape or not np.array_equal(window, pc):
                dec.mismatches.append((k, str(part)))
        if covered != cardinality(n, s):
            dec.mismatches.append(("total", covered))
    else:
        dec.mode = "sampled"
        rng = rng or np.random.default_rng(0)
        eps, j = spec.orientation, spec.apex
        for _ in range(SAMPLE_CELLS):
            cut = np.sort(rng.integers(0, s, size=n))
            k = np.diff(np.concatenate([[0], cut]))
            kk = tuple(int(x) for x in k)
            base = tuple(x % alpha for x in kk)
            part = parts[base]
            lvec = [(x - b) // alpha for x, b in zip(kk, base)]
            p = tuple(jj + e * x for jj, e, x in zip(j, eps, kk))
            got = closed_form(W, seed, p[:-1], p[-1])
            want = None if part is None else (part.a + sum(l * dd for l, dd in zip(lvec, part.d))) % m
            if sum(lvec) > (part.s - 1 if part else -1) or got != want:
                dec.mismatches.append((kk, got, want))
    dec.verified = not dec.mismatches
    return dec
