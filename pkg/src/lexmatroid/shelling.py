"""Lexicographic shellings of matroids, restriction sets and h-vectors."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .matroid import Matroid, MatroidError, elements, popcount, to_mask

HVector = tuple[int, ...]


class NegativeEntry(MatroidError):
    """The f-to-h transform produced a negative entry (input is not a matroid f-vector)."""


@dataclass(frozen=True)
class BasedMatroid:
    """A matroid with a distinguished basis and a total order on the other elements.

    The shelling vertex order is the base in ascending label order followed by
    ``order``. Loops of the matroid appear in ``order`` like any other element.
    """

    matroid: Matroid
    base: int
    order: tuple[int, ...]

    def __post_init__(self):
        if self.base not in self.matroid.basis_set:
            raise MatroidError(f"{sorted(elements(self.base))} is not a basis")
        rest = self.matroid.ground & ~self.base
        if sorted(self.order) != list(elements(rest)) or len(set(self.order)) != len(self.order):
            raise MatroidError("order must list every non-base element exactly once")

    @classmethod
    def natural(cls, m: Matroid, base: int | Sequence[int] | None = None) -> "BasedMatroid":
        """Based matroid with ascending order on the non-base elements.

        Without ``base``, the lexicographically smallest basis under the
        natural order is used.
        """
        if base is None:
            base = lex_smallest_basis(m)
        elif not isinstance(base, int):
            base = to_mask(base)
        return cls(m, base, elements(m.ground & ~base))

    @property
    def rank(self) -> int:
        return self.matroid.rank

    @property
    def vertex_order(self) -> tuple[int, ...]:
        return elements(self.base) + self.order


def lex_smallest_basis(m: Matroid, vertex_order: Sequence[int] | None = None) -> int:
    if vertex_order is None:
        vertex_order = range(1, m.n + 1)
    pos = {v: i for i, v in enumerate(vertex_order)}
    return min(m.bases, key=lambda b: sorted(pos[v] for v in elements(b)))


@dataclass(frozen=True)
class ShellingRecord:
    ordered_bases: tuple[int, ...]
    restriction_sets: tuple[int, ...]


def lex_order_bases(m: Matroid, vertex_order: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(vertex_order)}
    return sorted(m.bases, key=lambda b: sorted(pos[v] for v in elements(b)))


def restriction_sets(ordered: Sequence[int]) -> list[int]:
    """R(B_i): the elements v with B_i - v contained in an earlier basis."""
    index = {b: i for i, b in enumerate(ordered)}
    union = 0
    for b in ordered:
        union |= b
    out = []
    for i, b in enumerate(ordered):
        outside = union & ~b
        r = 0
        for v in elements(b):
            rest = b & ~(1 << (v - 1))
            w_bits = outside
            while w_bits:
                w = w_bits & -w_bits
                w_bits ^= w
                j = index.get(rest | w)
                if j is not None and j < i:
                    r |= 1 << (v - 1)
                    break
        out.append(r)
    return out


def lex_shelling(bm: BasedMatroid) -> ShellingRecord:
    ordered = lex_order_bases(bm.matroid, bm.vertex_order)
    return ShellingRecord(tuple(ordered), tuple(restriction_sets(ordered)))


def shelling_of(m: Matroid, vertex_order: Sequence[int]) -> ShellingRecord:
    ordered = lex_order_bases(m, vertex_order)
    return ShellingRecord(tuple(ordered), tuple(restriction_sets(ordered)))


def h_vector_from_shelling(sr: ShellingRecord, d: int) -> HVector:
    h = [0] * (d + 1)
    for r in sr.restriction_sets:
        h[popcount(r)] += 1
    return tuple(h)


def h_vector_from_f(f: Sequence[int]) -> HVector:
    """h_k = sum_j (-1)^(k-j) C(d-j, k-j) f_j, with d = len(f) - 1."""
    d = len(f) - 1
    h = []
    for k in range(d + 1):
        value = sum((-1) ** (k - j) * comb(d - j, k - j) * f[j] for j in range(k + 1))
        if value < 0:
            raise NegativeEntry(f"h_{k} = {value} for f = {tuple(f)}")
        h.append(value)
    return tuple(h)


def h_vector(m: Matroid) -> HVector:
    from .matroid import f_vector

    return h_vector_from_f(f_vector(m))
