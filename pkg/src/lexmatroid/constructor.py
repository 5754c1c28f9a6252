"""Candidate pure order ideals for based matroids of rank 3 and 4.

Both algorithms only look at the restricted h-vectors ``h(Gamma_I)`` and at
the order on the non-base elements, so they are written against the label
family returned by :func:`lexmatroid.gamma.label_family`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .gamma import label_family
from .matroid import Matroid, MatroidError, elements, permute_mask, relabel
from .oseq import Monomial, OrderIdeal
from .shelling import BasedMatroid, HVector


class RankUnsupported(MatroidError):
    pass


class UnexpectedCase(MatroidError):
    """A restricted h-vector outside the shapes the algorithm enumerates."""


@dataclass(frozen=True)
class ReorderedMatroid:
    """``bm`` relabeled so the base is {1..d} and the rest follow the Step 0 order.

    ``back_map[i - 1]`` is the original label of new label ``i``.
    """

    bm: BasedMatroid
    back_map: tuple[int, ...]


def basis_counts(order, family: Mapping[int, HVector]) -> dict[int, int]:
    """|B_x| for each x in ``order``; loops get 0."""
    return {x: sum(family.get(1 << (x - 1), ())) for x in order}


def step0_order(order, family: Mapping[int, HVector]) -> list[int]:
    counts = basis_counts(order, family)
    return sorted(order, key=counts.__getitem__)


def step0(bm: BasedMatroid) -> ReorderedMatroid:
    d = bm.rank
    if d not in (3, 4):
        raise RankUnsupported(f"rank {d} is not 3 or 4")
    fam = label_family(bm.matroid, bm.base)
    new_rest = step0_order(bm.order, fam)
    back = list(elements(bm.base)) + new_rest
    forward = [0] * bm.matroid.n
    for new, old in enumerate(back, 1):
        forward[old - 1] = new
    m = relabel(bm.matroid, forward)
    base = permute_mask(bm.base, forward)
    return ReorderedMatroid(BasedMatroid(m, base, tuple(range(d + 1, m.n + 1))), tuple(back))


def _rank3_pair(h: HVector, bx: int) -> list[tuple[int, int]]:
    """Exponent pairs (a, b) meaning x^a y^b for an independent pair x < y."""
    if h == (1, 0):
        return [(1, 1)]
    if h == (1, 1):
        # xy as well, or the degree-3 monomial has a missing divisor
        return [(1, 1), (1, 2)] if bx == 1 else [(1, 1), (2, 1)]
    if h == (1, 2):
        return [(1, 1), (1, 2), (2, 1)]
    raise UnexpectedCase(f"rank-3 pair with h(Gamma) = {h}")


def _rank4_pair(h: HVector, bx: int) -> list[tuple[int, int]]:
    if h == (1, 0, 0):
        return [(1, 1)]
    if h == (1, 1, 0):
        return [(1, 1), (1, 2)] if bx == 1 else [(1, 1), (2, 1)]
    if h == (1, 1, 1):
        return [(1, 1), (1, 2), (1, 3)] if bx == 1 else [(1, 1), (2, 1), (3, 1)]
    if h == (1, 2, 0):
        return [(1, 1), (2, 1), (1, 2)]
    if h == (1, 2, 1):
        return [(1, 1), (2, 1), (1, 2), (2, 2)]
    if h == (1, 2, 2):
        if bx < 3:
            return [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3)]
        return [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3)]
    return [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)]


XYZ, X2, Y2, Z2 = (1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)
ONE_ONE = ((1, 1, 0), (1, 1, 1))


def _rank4_triple(h, hxy, hxz, hyz, bx, by, bz) -> list[tuple[int, int, int]]:
    if h == (1, 0):
        return [XYZ]
    if h == (1, 1):
        if hxy == (1, 0, 0):
            return [XYZ, Z2]
        if hxz == (1, 0, 0):
            return [XYZ, Y2]
        if hyz == (1, 0, 0):
            return [XYZ, X2]
        if hxy in ONE_ONE:
            return [XYZ, Y2] if bx == 1 else [XYZ, X2]
        if hxz == (1, 1, 0):
            return [XYZ, Z2] if bx == 1 else [XYZ, X2]
        if hyz in ONE_ONE:
            return [XYZ, Z2] if by == 1 else [XYZ, Y2]
        return [XYZ, X2]
    if h == (1, 2):
        # three monomials, so h_1 = 2
        if bx == 1:
            return [XYZ, Y2, Z2]
        if by == 1:
            return [XYZ, X2, Z2]
        if bz == 1:
            return [XYZ, X2, Y2]
        if hxy in ONE_ONE:
            return [XYZ, Y2, Z2] if bx > by else [XYZ, X2, Z2]
        if hxz in ONE_ONE:
            return [XYZ, Y2, Z2] if bx > bz else [XYZ, X2, Y2]
        if hyz in ONE_ONE:
            return [XYZ, X2, Z2] if by > bz else [XYZ, X2, Y2]
        if hxy == (1, 2, 0):
            return [XYZ, X2, Y2]
        if hxz == (1, 2, 0):
            return [XYZ, X2, Z2]
        if hyz == (1, 2, 0):
            return [XYZ, Y2, Z2]
        return [XYZ, X2, Y2]
    if h == (1, 3):
        return [XYZ, X2, Y2, Z2]
    raise UnexpectedCase(f"rank-4 triple with h(Gamma) = {h}")


def construct_from_family(rank: int, order, family: Mapping[int, HVector]) -> OrderIdeal:
    """Run the rank-3 or rank-4 algorithm on a label family ``mask -> h(Gamma_I)``.

    ``order`` is the based order on the non-base elements; Step 0 is applied here.
    """
    if rank not in (3, 4):
        raise RankUnsupported(f"rank {rank} is not 3 or 4")
    new_order = step0_order(order, family)
    pos = {v: i for i, v in enumerate(new_order)}
    counts = basis_counts(order, family)
    out = [Monomial()]
    for i_set, h in family.items():
        xs = sorted(elements(i_set), key=pos.__getitem__)
        size = len(xs)
        if size == 0:
            continue
        if size == 1:
            x = xs[0]
            out.extend(Monomial(((x, t),)) for t in range(1, counts[x] + 1))
        elif size == 2:
            x, y = xs
            pair = _rank3_pair if rank == 3 else _rank4_pair
            out.extend(Monomial(((x, a), (y, b))) for a, b in pair(h, counts[x]))
        elif size == 3 and rank == 4:
            x, y, z = xs
            bit = {v: 1 << (v - 1) for v in xs}
            exps = _rank4_triple(
                h,
                family[bit[x] | bit[y]],
                family[bit[x] | bit[z]],
                family[bit[y] | bit[z]],
                counts[x],
                counts[y],
                counts[z],
            )
            out.extend(Monomial(((x, a), (y, b), (z, c))) for a, b, c in exps)
        elif size == rank:
            out.append(Monomial((v, 1) for v in xs))
        else:
            raise UnexpectedCase(f"independent set of size {size} in rank {rank}")
    return OrderIdeal(frozenset(out))


def construct_rank3(bm: BasedMatroid) -> OrderIdeal:
    if bm.rank != 3:
        raise RankUnsupported(f"rank {bm.rank} given to the rank-3 algorithm")
    return construct_from_family(3, bm.order, label_family(bm.matroid, bm.base))


def construct_rank4(bm: BasedMatroid) -> OrderIdeal:
    if bm.rank != 4:
        raise RankUnsupported(f"rank {bm.rank} given to the rank-4 algorithm")
    return construct_from_family(4, bm.order, label_family(bm.matroid, bm.base))


def construct(bm: BasedMatroid) -> OrderIdeal:
    if bm.rank == 3:
        return construct_rank3(bm)
    if bm.rank == 4:
        return construct_rank4(bm)
    raise RankUnsupported(f"rank {bm.rank} is not 3 or 4")


def construct_matroid(m: Matroid) -> OrderIdeal:
    """Construct with the natural order and the lexicographically smallest basis."""
    return construct(BasedMatroid.natural(m))
