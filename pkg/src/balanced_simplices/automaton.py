"""Weight stencils of additive cellular automata and a finite-window step.

Stencil arrays are indexed by offsets in [-r, r]^q and stored row-major
with the last axis varying fastest: ``weights[j_1 + r, ..., j_q + r]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .residue import check_modulus


class WindowTooSmall(ValueError):
    pass


def cell_dtype(m: int):
    # int64 products of two residues stay exact below 2^31.
    return np.int64 if m < 2**31 else object


@dataclass(frozen=True, eq=False)
class WeightScheme:
    """Radius-r stencil over Z/mZ; weights are reduced mod m on construction."""

    weights: np.ndarray
    modulus: int
    sigma: int = field(init=False)
    sigmas: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        m = check_modulus(self.modulus)
        w = np.array(self.weights, dtype=object)
        if w.ndim == 0:
            raise ValueError("stencil must have at least one axis")
        side = w.shape[0]
        if side % 2 == 0 or any(n != side for n in w.shape):
            raise ValueError(f"stencil shape {w.shape} is not (2r+1)^q")
        w = np.vectorize(lambda x: int(x) % m, otypes=[object])(w).astype(cell_dtype(m))
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        sigma, sigmas = derive_sigmas(w, self.radius, m)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "sigmas", sigmas)

    @classmethod
    def from_flat(cls, flat, q: int, modulus: int) -> WeightScheme:
        flat = list(flat)
        side = round(len(flat) ** (1 / q))
        if side**q != len(flat):
            raise ValueError(f"{len(flat)} weights do not form a (2r+1)^{q} stencil")
        return cls(np.array(flat, dtype=object).reshape((side,) * q), modulus)

    @property
    def q(self) -> int:
        return self.weights.ndim

    @property
    def radius(self) -> int:
        return (self.weights.shape[0] - 1) // 2

    def offsets(self):
        """Yield (offset tuple, weight) for nonzero weights."""
        r = self.radius
        for idx in zip(*np.nonzero(self.weights != 0)):
            yield tuple(int(i) - r for i in idx), int(self.weights[idx])

    def flat(self) -> list[int]:
        return [int(x) for x in self.weights.ravel()]

    def display_matrix(self) -> list[list[int]]:
        """2-D stencil drawn with the second axis upward and the first to the right."""
        if self.q != 2:
            raise ValueError("display_matrix is defined for q=2 only")
        return [[int(x) for x in row] for row in self.weights.T[::-1]]

    def __eq__(self, other):
        if not isinstance(other, WeightScheme):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.modulus, tuple(self.flat())))

    def __repr__(self):
        return f"WeightScheme(q={self.q}, r={self.radius}, w={self.flat()}, m={self.modulus})"


def derive_sigmas(weights: np.ndarray, r: int, m: int) -> tuple[int, tuple[int, ...]]:
    sigma = 0
    sigmas = [0] * weights.ndim
    for idx in itertools.product(range(weights.shape[0]), repeat=weights.ndim):
        w = int(weights[idx])
        sigma += w
        for k, i in enumerate(idx):
            sigmas[k] += (i - r) * w
    return sigma % m, tuple(s % m for s in sigmas)


def sigma_coeffs(W: WeightScheme) -> tuple[int, tuple[int, ...]]:
    return W.sigma, W.sigmas


def pascal_weights(q: int, m: int) -> WeightScheme:
    """Pascal automaton: weight 1 at 0 and at -e_k for every axis k."""
    if q < 1:
        raise ValueError("q must be >= 1")
    w = np.zeros((3,) * q, dtype=object)
    w[(1,) * q] = 1
    for k in range(q):
        idx = [1] * q
        idx[k] = 0
        w[tuple(idx)] = 1
    return WeightScheme(w, m)


def parse_stencil(text: str, m: int) -> WeightScheme:
    """Parse ``q=1;r=1;w=2,1,1``, ``pascal:q`` or a bare 1-D list ``2,1,1``."""
    text = text.strip()
    if text.startswith("pascal:"):
        return pascal_weights(int(text.split(":", 1)[1]), m)
    if "=" not in text:
        return WeightScheme.from_flat([int(x) for x in text.split(",")], 1, m)
    fields = dict(part.split("=", 1) for part in text.split(";") if part)
    q = int(fields.get("q", 1))
    W = WeightScheme.from_flat([int(x) for x in fields["w"].split(",")], q, m)
    if "r" in fields and int(fields["r"]) != W.radius:
        raise ValueError(f"r={fields['r']} does not match {len(W.flat())} weights")
    return W


def format_stencil(W: WeightScheme) -> str:
    return f"q={W.q};r={W.radius};w={','.join(map(str, W.flat()))}"


@dataclass(frozen=True, eq=False)
class Window:
    """Finite q-dimensional view of an infinite array; ``origin`` is the index of values[0,...,0]."""

    values: np.ndarray
    origin: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if len(self.origin) != self.values.ndim:
            raise ValueError("origin rank must match values rank")
        if any(n < 1 for n in self.values.shape):
            raise ValueError("window extents must be positive")

    @property
    def extents(self) -> tuple[int, ...]:
        return self.values.shape

    def __getitem__(self, i) -> int:
        if isinstance(i, int):
            i = (i,)
        return int(self.values[tuple(a - o for a, o in zip(i, self.origin))])


def step(W: WeightScheme, win: Window) -> Window:
    """One application of the automaton; the window shrinks by r per side."""
    r, m = W.radius, W.modulus
    if W.q != win.values.ndim:
        raise ValueError("stencil and window dimension differ")
    if any(n <= 2 * r for n in win.extents):
        raise WindowTooSmall(f"extents {win.extents} need to exceed {2 * r}")
    return Window(apply_stencil(W, win.values), tuple(o + r for o in win.origin), m)


def apply_stencil(W: WeightScheme, a: np.ndarray) -> np.ndarray:
    r, m = W.radius, W.modulus
    out_shape = tuple(n - 2 * r for n in a.shape)
    out = np.zeros(out_shape, dtype=a.dtype)
    for off, w in W.offsets():
        sl = tuple(slice(r + j, r + j + n) for j, n in zip(off, out_shape))
        out += w * a[sl]
        out %= m
    return out


def step_periodic(W: WeightScheme, a: np.ndarray) -> np.ndarray:
    """Step on a torus; used only for rendering."""
    m = W.modulus
    out = np.zeros_like(a)
    for off, w in W.offsets():
        out += w * np.roll(a, tuple(-j for j in off), axis=tuple(range(a.ndim)))
        out %= m
    return out
