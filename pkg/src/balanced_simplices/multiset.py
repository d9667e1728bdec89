"""Multisets of Z/mZ stored as multiplicity functions."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping

import numpy as np

DENSE_LIMIT = 2**20


class NotADivisor(ValueError):
    pass


class ResidueMultiset:
    """Multiplicity function m_M: Z/mZ -> N with cached cardinality.

    Counts are a dense int64 array when m <= 2^20 and a sparse Counter
    otherwise. Instances are treated as values; arithmetic returns new objects.
    """

    __slots__ = ("m", "_dense", "_sparse", "total")

    def __init__(self, m: int, counts=None):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        self._dense: np.ndarray | None = None
        self._sparse: Counter | None = None
        if m <= DENSE_LIMIT:
            arr = np.zeros(m, dtype=np.int64)
            if counts is None:
                pass
            elif isinstance(counts, Mapping):
                for x, c in counts.items():
                    arr[int(x) % m] += int(c)
            else:
                src = np.asarray(counts, dtype=np.int64)
                if src.shape != (m,):
                    raise ValueError(f"dense counts must have shape ({m},)")
                arr[:] = src
            if (arr < 0).any():
                raise ValueError("negative multiplicity")
            self._dense = arr
            self.total = int(arr.sum())
        else:
            sp: Counter = Counter()
            if isinstance(counts, Mapping):
                for x, c in counts.items():
                    if c:
                        sp[int(x) % m] += int(c)
            elif counts is not None:
                for x, c in enumerate(counts):
                    if c:
                        sp[x] += int(c)
            if any(c < 0 for c in sp.values()):
                raise ValueError("negative multiplicity")
            self._sparse = sp
            self.total = sum(sp.values())

    @classmethod
    def from_values(cls, values: Iterable[int] | np.ndarray, m: int) -> ResidueMultiset:
        if m <= DENSE_LIMIT:
            arr = np.asarray(values, dtype=np.int64).ravel() % m
            return cls(m, np.bincount(arr, minlength=m))
        return cls(m, Counter(int(v) % m for v in np.asarray(values).ravel()))

    @property
    def dense(self) -> bool:
        return self._dense is not None

    def __getitem__(self, x: int) -> int:
        x %= self.m
        if self._dense is not None:
            return int(self._dense[x])
        return self._sparse.get(x, 0)

    def counts(self) -> np.ndarray:
        """Dense copy of the multiplicity function."""
        if self._dense is not None:
            return self._dense.copy()
        arr = np.zeros(self.m, dtype=np.int64)
        for x, c in self._sparse.items():
            arr[x] = c
        return arr

    def as_dict(self, nonzero: bool = False) -> dict[int, int]:
        if self._dense is not None:
            return {x: int(c) for x, c in enumerate(self._dense) if c or not nonzero}
        if nonzero:
            return dict(sorted(self._sparse.items()))
        return {x: self._sparse.get(x, 0) for x in range(self.m)}

    def __len__(self) -> int:
        return self.total

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueMultiset):
            return NotImplemented
        if self.m != other.m or self.total != other.total:
            return False
        if self._dense is not None:
            return bool(np.array_equal(self._dense, other._dense))
        return +self._sparse == +other._sparse

    def __hash__(self):
        return hash((self.m, self.total))

    def __add__(self, other: ResidueMultiset) -> ResidueMultiset:
        self._same_modulus(other)
        if self._dense is not None:
            return ResidueMultiset(self.m, self._dense + other._dense)
        return ResidueMultiset(self.m, self._sparse + other._sparse)

    def __sub__(self, other: ResidueMultiset) -> ResidueMultiset:
        """Multiset difference; the subtrahend must be contained."""
        self._same_modulus(other)
        if self._dense is not None:
            return ResidueMultiset(self.m, self._dense - other._dense)
        out = Counter(self._sparse)
        out.subtract(other._sparse)
        return ResidueMultiset(self.m, out)

    def shifted(self, k: int) -> ResidueMultiset:
        """The translate M + k."""
        if self._dense is not None:
            return ResidueMultiset(self.m, np.roll(self._dense, k % self.m))
        return ResidueMultiset(self.m, {(x + k) % self.m: c for x, c in self._sparse.items()})

    def _same_modulus(self, other: ResidueMultiset) -> None:
        if self.m != other.m:
            raise ValueError(f"moduli differ: {self.m} vs {other.m}")

    def __repr__(self) -> str:
        return f"ResidueMultiset(m={self.m}, counts={self.as_dict(nonzero=True)})"

    def is_balanced(self) -> bool:
        return balance_witness(self) is None

    def project(self, alpha: int) -> ResidueMultiset:
        return project(self, alpha)


def balance_witness(M: ResidueMultiset) -> tuple[int, int] | None:
    """None if M is balanced, else (x, y) with m_M(x) != m_M(y).

    The pair is (first residue of minimal count, first residue of maximal count).
    """
    if M.m == 1:
        return None
    if M.dense:
        c = M._dense
        lo, hi = int(c.argmin()), int(c.argmax())
        if c[lo] == c[hi]:
            return None
        return (lo, hi)
    sp = M._sparse
    if len(sp) < M.m:
        lo = next(x for x in range(M.m) if sp.get(x, 0) == 0)
        if not sp:
            return None
        hi = min(sp, key=lambda x: (-sp[x], x))
        return (lo, hi)
    vals = set(sp.values())
    if len(vals) == 1:
        return None
    lo = min(sp, key=lambda x: (sp[x], x))
    hi = min(sp, key=lambda x: (-sp[x], x))
    return (lo, hi)


def is_balanced(M: ResidueMultiset) -> tuple[bool, tuple[int, int] | None]:
    w = balance_witness(M)
    return w is None, w


def project(M: ResidueMultiset, alpha: int) -> ResidueMultiset:
    """Fold M into Z/alpha Z along the canonical projection."""
    if alpha < 1 or M.m % alpha:
        raise NotADivisor(f"{alpha} does not divide {M.m}")
    if M.dense:
        return ResidueMultiset(alpha, M._dense.reshape(M.m // alpha, alpha).sum(axis=0))
    out: Counter = Counter()
    for x, c in M._sparse.items():
        out[x % alpha] += c
    return ResidueMultiset(alpha, out)


def check_projection_theorem(M: ResidueMultiset, alpha: int) -> bool:
    """Check: M balanced <=> (projection balanced and m_M is alpha-periodic)."""
    P = project(M, alpha)
    c = M.counts()
    periodic = bool(np.array_equal(np.roll(c, -alpha), c))
    return M.is_balanced() == (P.is_balanced() and periodic)
