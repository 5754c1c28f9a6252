"""Matroids on small ground sets, stored as sorted tuples of basis bitmasks.

Element ``i`` of the ground set ``{1..n}`` is bit ``i - 1`` of an element set.
Ascending integer order on bitmasks coincides with reverse-lexicographic
order on subsets, which is the order used for serialization and for
canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

MAX_N = 16

ElementSet = int | Iterable[int]


class MatroidError(ValueError):
    pass


class EmptyBases(MatroidError):
    pass


class MixedCardinality(MatroidError):
    pass


class ElementOutOfRange(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    """Raised with a concrete triple ``(B, B', x)`` for which no ``y`` exists."""

    def __init__(self, b1: int, b2: int, x: int):
        self.b1, self.b2, self.x = b1, b2, x
        super().__init__(
            f"exchange fails for B={sorted(elements(b1))}, B'={sorted(elements(b2))}, x={x}"
        )


def to_mask(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << (i - 1)
    return mask


def elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def subsets_of_size(n: int, r: int) -> list[int]:
    """All r-subsets of {1..n} as masks, in revlex (= ascending integer) order."""
    return sorted(to_mask(c) for c in combinations(range(1, n + 1), r))


def submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


_POPCOUNT_CACHE: dict[int, np.ndarray] = {}


def popcount_table(n: int) -> np.ndarray:
    table = _POPCOUNT_CACHE.get(n)
    if table is None:
        table = np.zeros(1 << n, dtype=np.int8)
        for b in range(n):
            table.reshape(-1, 2, 1 << b)[:, 1, :] += 1
        _POPCOUNT_CACHE[n] = table
    return table


def _find_exchange_violation(bases: Sequence[int]) -> tuple[int, int, int] | None:
    if len(bases) < 2:
        return None
    basis_set = set(bases)
    arr = np.array(bases, dtype=np.int64)
    # reach[i, x] = elements y such that (B_i - x) + y is a basis
    d = popcount(bases[0])
    reach = np.zeros((len(bases), d), dtype=np.int64)
    xbits = np.zeros((len(bases), d), dtype=np.int64)
    union = 0
    for b in bases:
        union |= b
    outside_all = elements(union)
    for i, b in enumerate(bases):
        for k, x in enumerate(elements(b)):
            xb = 1 << (x - 1)
            rest = b ^ xb
            y_mask = 0
            for y in outside_all:
                yb = 1 << (y - 1)
                if not yb & b and (rest | yb) in basis_set:
                    y_mask |= yb
            reach[i, k] = y_mask
            xbits[i, k] = xb
    # B_i, B_j, x in B_i - B_j: need reach[i,x] & (B_j - B_i) != 0
    diff = arr[None, :] & ~arr[:, None]  # diff[i, j] = B_j - B_i
    x_out = (xbits[:, None, :] & ~arr[None, :, None]) != 0  # x not in B_j
    ok = (reach[:, None, :] & diff[:, :, None]) != 0
    bad = x_out & ~ok
    if bad.any():
        i, j, k = (int(v) for v in np.argwhere(bad)[0])
        return bases[i], bases[j], elements(int(xbits[i, k]))[0]
    return None


@dataclass(frozen=True)
class Matroid:
    """A matroid on ``{1..n}`` given by its bases (sorted, duplicate free).

    Build one with :func:`new_matroid` to get axiom validation; the dataclass
    constructor itself trusts its input.
    """

    n: int
    rank: int
    bases: tuple[int, ...]

    @classmethod
    def from_sets(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        return new_matroid(n, bases)

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    @cached_property
    def basis_set(self) -> frozenset[int]:
        return frozenset(self.bases)

    @cached_property
    def independent_table(self) -> np.ndarray:
        """Boolean array over all 2**n masks marking independent sets."""
        table = np.zeros(1 << self.n, dtype=bool)
        table[list(self.bases)] = True
        for b in range(self.n):
            view = table.reshape(-1, 2, 1 << b)
            view[:, 0, :] |= view[:, 1, :]
        return table

    @cached_property
    def rank_table(self) -> np.ndarray:
        pc = popcount_table(self.n)
        ranks = np.where(self.independent_table, pc, 0).astype(np.int8)
        for b in range(self.n):
            view = ranks.reshape(-1, 2, 1 << b)
            np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
        return ranks

    def independent_sets(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.independent_table)]

    def as_sets(self) -> list[tuple[int, ...]]:
        return [elements(b) for b in self.bases]

    def to_json(self) -> dict:
        return {"n": self.n, "bases": [list(s) for s in self.as_sets()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matroid":
        return new_matroid(int(obj["n"]), obj["bases"])


def new_matroid(n: int, bases: Iterable[Iterable[int] | int]) -> Matroid:
    """Validate a basis family and return the canonically sorted matroid.

    Bases may be given as iterables of 1-based labels or as bitmasks.
    """
    if not 1 <= n <= MAX_N:
        raise ElementOutOfRange(f"ground set size {n} outside 1..{MAX_N}")
    masks = set()
    for b in bases:
        if isinstance(b, (int, np.integer)):
            mask = int(b)
            if mask >> n:
                raise ElementOutOfRange(f"basis mask {mask:#x} exceeds n={n}")
        else:
            items = list(b)
            for e in items:
                if not 1 <= e <= n:
                    raise ElementOutOfRange(f"element {e} outside 1..{n}")
            mask = to_mask(items)
        masks.add(mask)
    if not masks:
        raise EmptyBases("a matroid needs at least one basis")
    sizes = {popcount(m) for m in masks}
    if len(sizes) > 1:
        raise MixedCardinality(f"bases of sizes {sorted(sizes)}")
    ordered = tuple(sorted(masks))
    violation = _find_exchange_violation(ordered)
    if violation is not None:
        raise ExchangeViolation(*violation)
    return Matroid(n, sizes.pop(), ordered)


def _as_mask(s: ElementSet) -> int:
    return s if isinstance(s, int) else to_mask(s)


def check_exchange(m: Matroid) -> bool:
    return _find_exchange_violation(m.bases) is None


def is_independent(m: Matroid, s: ElementSet) -> bool:
    return bool(m.independent_table[_as_mask(s)])


def rank_of(m: Matroid, a: ElementSet) -> int:
    return int(m.rank_table[_as_mask(a)])


def closure(m: Matroid, a: ElementSet) -> int:
    a = _as_mask(a)
    r = m.rank_table[a]
    out = a
    for e in range(m.n):
        bit = 1 << e
        if not a & bit and m.rank_table[a | bit] == r:
            out |= bit
    return out


def restriction(m: Matroid, a: ElementSet) -> Matroid:
    """Restrict to ``a``; labels and ``n`` are kept, elements outside ``a`` become loops."""
    a = _as_mask(a)
    r = rank_of(m, a)
    bases = {b & a for b in m.bases if popcount(b & a) == r}
    return Matroid(m.n, r, tuple(sorted(bases)))


def loops(m: Matroid) -> int:
    union = 0
    for b in m.bases:
        union |= b
    return m.ground & ~union


def coloops(m: Matroid) -> int:
    inter = m.ground
    for b in m.bases:
        inter &= b
    return inter


def is_cone(m: Matroid) -> bool:
    return coloops(m) != 0


def dual(m: Matroid) -> Matroid:
    g = m.ground
    return Matroid(m.n, m.n - m.rank, tuple(sorted(g & ~b for b in m.bases)))


def f_vector(m: Matroid) -> tuple[int, ...]:
    sizes = popcount_table(m.n)[m.independent_table]
    return tuple(int(c) for c in np.bincount(sizes, minlength=m.rank + 1))


def relabel(m: Matroid, perm: Sequence[int]) -> Matroid:
    """Apply the bijection ``i -> perm[i - 1]`` to the ground set."""
    return Matroid(m.n, m.rank, tuple(sorted(permute_mask(b, perm) for b in m.bases)))


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (perm[i] - 1)
        mask >>= 1
        i += 1
    return out


def revlex_indicator(m: Matroid) -> str:
    basis_set = m.basis_set
    return "".join("1" if s in basis_set else "0" for s in subsets_of_size(m.n, m.rank))


_LEVEL_CACHE: dict[tuple[int, int], list[np.ndarray]] = {}


def _level_subsets(n: int, r: int) -> list[np.ndarray]:
    """For each k, the (r-1)-subsets of positions {0..k-1} in revlex order.

    Together with position k they enumerate, in order, the r-subsets whose
    largest element is k + 1.
    """
    key = (n, r)
    levels = _LEVEL_CACHE.get(key)
    if levels is None:
        levels = []
        for k in range(n):
            subs = sorted(combinations(range(k), r - 1), key=lambda s: sorted(s, reverse=True))
            levels.append(np.array(subs, dtype=np.int64).reshape(len(subs), r - 1))
        _LEVEL_CACHE[key] = levels
    return levels


def canonical_form(m: Matroid) -> str:
    """Lexicographically least revlex indicator over all relabelings.

    The search assigns new labels 1, 2, ... one at a time. Once labels 1..k
    are placed, the first C(k, r) characters of the indicator are fixed, so
    only partial assignments achieving the least prefix survive.
    """
    n, r = m.n, m.rank
    if r == 0 or r == n:
        return "1"
    basis_table = np.zeros(1 << n, dtype=bool)
    basis_table[list(m.bases)] = True
    levels = _level_subsets(n, r)
    # cand: rows of original element indices (0-based) assigned to labels 1..k
    cand = np.zeros((1, 0), dtype=np.int64)
    out: list[np.ndarray] = []
    for k in range(n):
        subs = levels[k]
        m_rows = cand.shape[0]
        used = np.zeros((m_rows, n), dtype=bool)
        if k:
            np.put_along_axis(used, cand, True, axis=1)
        rows, new = np.nonzero(~used)
        ext = np.concatenate([cand[rows], new[:, None]], axis=1)
        if len(subs):
            bits = np.left_shift(1, ext)
            if subs.shape[1]:
                masks = bits[:, subs].sum(axis=2)
            else:
                masks = np.zeros((ext.shape[0], len(subs)), dtype=np.int64)
            masks |= bits[:, k][:, None]
            seg = basis_table[masks]
            keep = np.ones(seg.shape[0], dtype=bool)
            for c in range(seg.shape[1]):
                col = seg[keep, c]
                if not col.all():
                    idx = np.flatnonzero(keep)
                    keep[idx[col]] = False
            ext = ext[keep]
            out.append(seg[np.flatnonzero(keep)[0]])
        cand = ext
    bits = np.concatenate(out) if out else np.zeros(0, dtype=bool)
    return "".join("1" if b else "0" for b in bits)


def uniform_matroid(r: int, n: int) -> Matroid:
    return Matroid(n, r, tuple(subsets_of_size(n, r)))


FANO_LINES = ((1, 2, 4), (1, 3, 5), (1, 6, 7), (2, 3, 6), (2, 5, 7), (3, 4, 7), (4, 5, 6))


def fano() -> Matroid:
    """Fano plane with the labeling used in the worked examples."""
    lines = {to_mask(line) for line in FANO_LINES}
    return new_matroid(7, [s for s in subsets_of_size(7, 3) if s not in lines])
