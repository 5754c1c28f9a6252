"""Restricted link matroids and the restricted h-vector family of a based matroid.

For an independent set ``I`` disjoint from the base ``B``, the matroid on ``B``
whose independent sets are the ``G`` with ``G | I`` independent is written
``gamma(bm, I)``. Its h-vectors, shifted by ``|I|``, sum to the h-vector of
the whole matroid.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from .matroid import (
    Matroid,
    MatroidError,
    elements,
    popcount,
    popcount_table,
    restriction,
    submasks,
)
from .shelling import (
    BasedMatroid,
    HVector,
    h_vector_from_f,
    h_vector_from_shelling,
    lex_shelling,
    shelling_of,
)


class DependentInput(MatroidError):
    pass


class Inapplicable(MatroidError):
    pass


def _check_input(bm: BasedMatroid, i_set: int) -> None:
    if i_set & bm.base or not bm.matroid.independent_table[i_set]:
        raise DependentInput(f"{sorted(elements(i_set))} is dependent or meets the base")


def gamma(bm: BasedMatroid, i_set: int) -> Matroid:
    _check_input(bm, i_set)
    m, base = bm.matroid, bm.base
    r = m.rank - popcount(i_set)
    bases = {b & ~i_set for b in m.bases if b & i_set == i_set and not b & ~(base | i_set)}
    return Matroid(m.n, r, tuple(sorted(bases)))


def restricted_h(m: Matroid, base: int, i_set: int) -> HVector:
    """h(Gamma_I) via the f-to-h transform, read straight off the independence table."""
    table = m.independent_table
    f = [0] * (m.rank - popcount(i_set) + 1)
    for g in submasks(base):
        if table[g | i_set]:
            f[popcount(g)] += 1
    return h_vector_from_f(f)


def independent_outside(m: Matroid, base: int) -> list[int]:
    """Independent subsets of E - base, ascending as masks."""
    table = m.independent_table
    return [s for s in submasks(m.ground & ~base) if table[s]][::-1]


@dataclass(frozen=True)
class RestrictedHFamily:
    """``I -> h(Gamma_I)`` keyed by order positions (1-based) of ``I``'s elements."""

    order: tuple[int, ...]
    entries: dict[tuple[int, ...], HVector]

    def h(self, labels) -> HVector:
        if isinstance(labels, int):
            labels = elements(labels)
        pos = {v: i + 1 for i, v in enumerate(self.order)}
        return self.entries[tuple(sorted(pos[v] for v in labels))]

    def by_label(self) -> dict[tuple[int, ...], HVector]:
        return {tuple(sorted(self.order[p - 1] for p in k)): v for k, v in self.entries.items()}

    def signature(self) -> tuple:
        return tuple(sorted(self.entries.items()))

    def __hash__(self):
        return hash(self.signature())

    def __eq__(self, other):
        if not isinstance(other, RestrictedHFamily):
            return NotImplemented
        return self.signature() == other.signature()


def label_family(m: Matroid, base: int) -> dict[int, HVector]:
    """h(Gamma_I) for every independent ``I`` outside ``base``, keyed by mask."""
    return {i: restricted_h(m, base, i) for i in independent_outside(m, base)}


def family_from_labels(order: tuple[int, ...], fam: dict[int, HVector]) -> RestrictedHFamily:
    pos = {v: i + 1 for i, v in enumerate(order)}
    return RestrictedHFamily(order, {tuple(sorted(pos[v] for v in elements(i))): h for i, h in fam.items()})


def restricted_h_family(bm: BasedMatroid) -> RestrictedHFamily:
    return family_from_labels(bm.order, label_family(bm.matroid, bm.base))


def basis_count(bm: BasedMatroid, i_set: int) -> int:
    _check_input(bm, i_set)
    return sum(restricted_h(bm.matroid, bm.base, i_set))


def check_U_equals_V(bm: BasedMatroid, i_set: int, shelling=None) -> bool:
    _check_input(bm, i_set)
    sr = shelling if shelling is not None else lex_shelling(bm)
    base = bm.base
    u = {r & ~i_set for b, r in zip(sr.ordered_bases, sr.restriction_sets) if b & ~base == i_set}
    g = gamma(bm, i_set)
    v = set(shelling_of(g, elements(base)).restriction_sets)
    return u == v


def _shift_add(total: list[int], h: HVector, shift: int) -> None:
    for j, value in enumerate(h):
        total[j + shift] += value


def check_decomposition(bm: BasedMatroid) -> bool:
    d = bm.rank
    lhs = h_vector_from_shelling(lex_shelling(bm), d)
    rhs = [0] * (d + 1)
    for i_set, h in label_family(bm.matroid, bm.base).items():
        _shift_add(rhs, h, popcount(i_set))
    return tuple(rhs) == lhs


def going_up_failures(bm: BasedMatroid) -> Iterator[int]:
    """Independent sets I with h_top(Gamma_I) = 0 and no independent extension I + z."""
    m, base = bm.matroid, bm.base
    h_delta = h_vector_from_shelling(lex_shelling(bm), m.rank)
    if h_delta[-1] == 0:
        raise Inapplicable("h_d = 0: the matroid is a cone")
    table = m.independent_table
    outside = m.ground & ~base
    for i_set, h in label_family(m, base).items():
        if h[-1] != 0:
            continue
        free = outside & ~i_set
        if not any(table[i_set | (1 << (z - 1))] for z in elements(free)):
            yield i_set


def check_going_up(bm: BasedMatroid) -> bool:
    return next(going_up_failures(bm), None) is None


def gamma_is_local(bm: BasedMatroid, i_set: int) -> bool:
    """Gamma_I computed in the whole matroid equals Gamma_I in the restriction to base + I."""
    local = BasedMatroid.natural(restriction(bm.matroid, bm.base | i_set), bm.base)
    return gamma(bm, i_set) == gamma(local, i_set)


def monomial_upper_bound(num_vars: int, degree: int) -> int:
    return comb(num_vars + degree - 1, degree) if num_vars else int(degree == 0)
