"""Evaluation of orbits: closed form for arithmetic seeds, cone DP otherwise.

Orbit points are ``(i, j)`` with ``i`` a q-tuple of space indices and ``j``
the time (number of applications of the automaton).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .automaton import WeightScheme, apply_stencil, cell_dtype
from .residue import inv

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


class UndefinedCell(LookupError):
    pass


def default_budget() -> int:
    return int(os.environ.get("SIMPLEX_BUDGET", DEFAULT_BUDGET))


def _grid(lo, shape):
    """Open index grids for the box starting at lo."""
    return np.ix_(*[np.arange(l, l + n, dtype=np.int64) for l, n in zip(lo, shape)])


# -- seeds -----------------------------------------------------------------


class Seed:
    """An infinite q-dimensional array over Z/mZ."""

    q: int
    modulus: int

    def block(self, lo: tuple[int, ...], shape: tuple[int, ...]) -> np.ndarray:
        raise NotImplementedError

    def value(self, i) -> int:
        i = tuple(i) if not isinstance(i, int) else (i,)
        return int(self.block(i, (1,) * len(i)).ravel()[0])


@dataclass(frozen=True)
class ArithmeticSeed(Seed):
    """AA(a, d): a_i = a + sum_k i_k d_k."""

    a: int
    d: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        m = self.modulus
        if not self.d:
            raise ValueError("an arithmetic seed needs at least one difference")
        object.__setattr__(self, "a", self.a % m)
        object.__setattr__(self, "d", tuple(x % m for x in self.d))

    @property
    def q(self) -> int:
        return len(self.d)

    def block(self, lo, shape):
        m = self.modulus
        dt = cell_dtype(m)
        out = np.full(shape, self.a, dtype=dt)
        for ax, dk in zip(_grid(lo, shape), self.d):
            out = (out + (ax % m).astype(dt) * dk) % m
        return out

    def at(self, i) -> int:
        return (self.a + sum(ik * dk for ik, dk in zip(i, self.d))) % self.modulus


@dataclass(frozen=True)
class DeltaSeed(Seed):
    """1 at the origin, 0 elsewhere."""

    q: int
    modulus: int

    def block(self, lo, shape):
        out = np.zeros(shape, dtype=cell_dtype(self.modulus))
        idx = tuple(-l for l in lo)
        if all(0 <= i < n for i, n in zip(idx, shape)):
            out[idx] = 1 % self.modulus
        return out


def interlace_value(i: int, m: int) -> int:
    t, r = divmod(i, 3)
    return (-(2 * t + 1) if r == 0 else t + 1) % m


@dataclass(frozen=True)
class InterlaceSeed(Seed):
    """The sequence (..., 0, -1, 1, 1, -3, 2, 2, ...) with -1 at index 0."""

    modulus: int
    q: int = 1

    def block(self, lo, shape):
        (l,), (n,) = lo, shape
        i = np.arange(l, l + n, dtype=np.int64)
        t, r = np.divmod(i, 3)
        vals = np.where(r == 0, -(2 * t + 1), t + 1) % self.modulus
        return vals.astype(cell_dtype(self.modulus))


@dataclass(frozen=True, eq=False)
class PeriodicSeed(Seed):
    """a_i = tile[i mod tile.shape]."""

    tile: np.ndarray
    modulus: int

    def __post_init__(self):
        t = np.asarray(self.tile, dtype=object) % self.modulus
        object.__setattr__(self, "tile", t.astype(cell_dtype(self.modulus)))

    @property
    def q(self) -> int:
        return self.tile.ndim

    def block(self, lo, shape):
        idx = tuple(ax % n for ax, n in zip(_grid(lo, shape), self.tile.shape))
        return self.tile[idx]


@dataclass(frozen=True, eq=False)
class ExplicitSeed(Seed):
    """Finite window of values; cells outside read ``default`` or raise."""

    values: np.ndarray
    origin: tuple[int, ...]
    modulus: int
    default: int | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=object) % self.modulus
        object.__setattr__(self, "values", v.astype(cell_dtype(self.modulus)))

    @property
    def q(self) -> int:
        return self.values.ndim

    def block(self, lo, shape):
        rel = [l - o for l, o in zip(lo, self.origin)]
        inside = all(0 <= r and r + n <= ext for r, n, ext in zip(rel, shape, self.values.shape))
        if inside:
            return self.values[tuple(slice(r, r + n) for r, n in zip(rel, shape))].copy()
        if self.default is None:
            raise UndefinedCell(f"box at {lo} of shape {shape} leaves the explicit window")
        out = np.full(shape, self.default % self.modulus, dtype=self.values.dtype)
        src, dst = [], []
        for r, n, ext in zip(rel, shape, self.values.shape):
            a, b = max(r, 0), min(r + n, ext)
            if a >= b:
                return out
            src.append(slice(a, b))
            dst.append(slice(a - r, b - r))
        out[tuple(dst)] = self.values[tuple(src)]
        return out


def parse_seed(text: str, m: int, q: int = 1) -> Seed:
    """Seed grammar: ``ap:a,d``, ``aa:a:d1,d2``, ``delta``, ``interlace``, ``periodic:p1,p2``."""
    text = text.strip()
    kind, _, rest = text.partition(":")
    if kind == "ap":
        a, d = (int(x) for x in rest.split(","))
        return ArithmeticSeed(a, (d,), m)
    if kind == "aa":
        a, _, ds = rest.partition(":")
        return ArithmeticSeed(int(a), tuple(int(x) for x in ds.split(",")), m)
    if kind == "delta":
        return DeltaSeed(q, m)
    if kind == "interlace":
        return InterlaceSeed(m)
    if kind == "periodic":
        return PeriodicSeed(np.array([int(x) for x in rest.split(",")], dtype=object), m)
    raise ValueError(f"unknown seed {text!r}")


def format_seed(seed: Seed) -> str:
    if isinstance(seed, ArithmeticSeed):
        if seed.q == 1:
            return f"ap:{seed.a},{seed.d[0]}"
        return f"aa:{seed.a}:{','.join(map(str, seed.d))}"
    if isinstance(seed, DeltaSeed):
        return "delta"
    if isinstance(seed, InterlaceSeed):
        return "interlace"
    if isinstance(seed, PeriodicSeed) and seed.q == 1:
        return "periodic:" + ",".join(str(int(x)) for x in seed.tile)
    return repr(seed)


# -- closed form -------------------------------------------------------------


def derived_difference(W: WeightScheme, d) -> int:
    """The time-axis common difference sigma^-1 * sum_k sigma_k d_k."""
    m = W.modulus
    return inv(W.sigma, m) * sum(sk * dk for sk, dk in zip(W.sigmas, d)) % m


def orbit_row(W: WeightScheme, seed: ArithmeticSeed, j: int) -> ArithmeticSeed:
    """Row j of the orbit of AA(a, d); valid for any sigma."""
    m, s = W.modulus, W.sigma
    if j < 0:
        raise ValueError("time must be non-negative")
    if j == 0:
        return seed
    drift = sum(sk * dk for sk, dk in zip(W.sigmas, seed.d))
    a = pow(s, j, m) * seed.a + j * pow(s, j - 1, m) * drift
    sj = pow(s, j, m)
    return ArithmeticSeed(a % m, tuple(sj * dk % m for dk in seed.d), m)


def closed_form(W: WeightScheme, seed: ArithmeticSeed, i, j: int) -> int:
    """sigma^j (a + sum_k i_k d_k + j d_next); sigma must be a unit."""
    m = W.modulus
    dn = derived_difference(W, seed.d)
    base = seed.a + sum(ik * dk for ik, dk in zip(i, seed.d)) + j * dn
    return pow(W.sigma, j, m) * base % m


# -- cone evaluation -----------------------------------------------------------


def cone_cells(q: int, r: int, j: int) -> int:
    return (2 * j * r + 1) ** q * max(j, 1)


def cone_value(W: WeightScheme, seed: Seed, i, j: int, cap: int | None = None) -> int:
    """Value of the orbit at (i, j) by iterating the stencil over the dependency cone."""
    cap = default_budget() if cap is None else cap
    i = (i,) if isinstance(i, int) else tuple(i)
    r, q = W.radius, W.q
    if len(i) != q:
        raise ValueError("point rank does not match stencil dimension")
    if cone_cells(q, r, j) > cap:
        raise BudgetExceeded(f"cone of ({i}, {j}) needs {cone_cells(q, r, j)} cells > {cap}")
    a = seed.block(tuple(x - j * r for x in i), (2 * j * r + 1,) * q)
    for _ in range(j):
        a = apply_stencil(W, a)
    return int(a.ravel()[0])


# -- orbit accessors -------------------------------------------------------------


@dataclass
class OrbitBlock:
    """Orbit values on times [t_lo, t_lo + values.shape[0]) and a space box at ``lo``."""

    values: np.ndarray
    t_lo: int
    lo: tuple[int, ...]

    def at(self, points: np.ndarray) -> np.ndarray:
        """Values at integer points of shape (N, q+1), last column time."""
        idx = [points[:, -1] - self.t_lo]
        idx += [points[:, k] - self.lo[k] for k in range(len(self.lo))]
        return self.values[tuple(idx)]


class Orbit:
    """Access to the orbit O(seed) under W."""

    def __init__(self, W: WeightScheme, seed: Seed):
        if W.q != seed.q:
            raise ValueError(f"stencil dimension {W.q} != seed dimension {seed.q}")
        if W.modulus != seed.modulus:
            raise ValueError("stencil and seed moduli differ")
        self.W = W
        self.seed = seed
        self.m = W.modulus
        self.q = W.q

    def block(self, t_lo: int, t_hi: int, lo, shape) -> OrbitBlock:
        raise NotImplementedError

    def value(self, i, j: int) -> int:
        i = (i,) if isinstance(i, int) else tuple(i)
        return int(self.block(j, j, i, (1,) * self.q).values.ravel()[0])

    def grid(self, t_lo: int, t_hi: int, lo, shape) -> np.ndarray:
        return self.block(t_lo, t_hi, lo, shape).values


class ArithmeticOrbit(Orbit):
    """Orbit of an arithmetic seed, evaluated row by row in closed form."""

    def __init__(self, W: WeightScheme, seed: ArithmeticSeed):
        if not isinstance(seed, ArithmeticSeed):
            raise TypeError("ArithmeticOrbit needs an arithmetic seed")
        super().__init__(W, seed)

    def block(self, t_lo, t_hi, lo, shape):
        if t_lo < 0:
            raise ValueError("time must be non-negative")
        lo, shape = tuple(lo), tuple(shape)
        rows = [orbit_row(self.W, self.seed, t).block(lo, shape) for t in range(t_lo, t_hi + 1)]
        return OrbitBlock(np.stack(rows), t_lo, lo)


class ConeOrbit(Orbit):
    """Orbit of any seed by layer-by-layer stencil application over the cone."""

    def __init__(self, W: WeightScheme, seed: Seed, cap: int | None = None):
        super().__init__(W, seed)
        self.cap = default_budget() if cap is None else cap

    def block(self, t_lo, t_hi, lo, shape):
        if t_lo < 0:
            raise ValueError("time must be non-negative")
        lo, shape = tuple(lo), tuple(shape)
        r = self.W.radius
        base_shape = tuple(n + 2 * t_hi * r for n in shape)
        cells = math.prod(base_shape) * (t_hi + 1)
        if cells > self.cap:
            raise BudgetExceeded(f"block needs {cells} cells > budget {self.cap}")
        a = self.seed.block(tuple(x - t_hi * r for x in lo), base_shape)
        rows = []
        for t in range(t_hi + 1):
            if t >= t_lo:
                margin = (t_hi - t) * r
                rows.append(a[tuple(slice(margin, margin + n) for n in shape)])
            if t < t_hi:
                a = apply_stencil(self.W, a)
        return OrbitBlock(np.stack(rows), t_lo, lo)


def make_orbit(W: WeightScheme, seed: Seed, method: str = "auto", cap: int | None = None) -> Orbit:
    """``auto`` picks the closed form for arithmetic seeds and the cone otherwise."""
    if method == "closed" or (method == "auto" and isinstance(seed, ArithmeticSeed)):
        return ArithmeticOrbit(W, seed)
    if method in ("cone", "auto"):
        return ConeOrbit(W, seed, cap)
    raise ValueError(f"unknown method {method!r}")
