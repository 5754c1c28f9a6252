import itertools

import pytest

from lexmatroid.constructor import (
    RankUnsupported,
    UnexpectedCase,
    _rank3_pair,
    _rank4_triple,
    basis_counts,
    construct,
    construct_from_family,
    construct_matroid,
    step0,
    step0_order,
)
from lexmatroid.gamma import label_family
from lexmatroid.matroid import elements, new_matroid, to_mask, uniform_matroid
from lexmatroid.oseq import F_vector, Monomial, check_conditions, is_pure
from lexmatroid.shelling import BasedMatroid, h_vector

from conftest import table_ideal

# 7-element rank-4 matroid where Step 0 must break a tie between two
# elements with three bases each; the rank-4 case order then
# yields an impure ideal for half of the vertex orders.
TIE_BASES = [
    (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (1, 2, 3, 6), (1, 2, 4, 6),
    (1, 3, 4, 6), (1, 2, 3, 7), (1, 2, 4, 7), (2, 3, 4, 7), (1, 3, 5, 7), (2, 3, 5, 7),
    (1, 4, 5, 7), (2, 4, 5, 7), (3, 4, 5, 7), (1, 3, 6, 7), (2, 3, 6, 7), (1, 4, 6, 7),
    (2, 4, 6, 7), (3, 4, 6, 7),
]


def test_fano_golden(fano_bm, fano_table):
    o = construct(fano_bm)
    assert o == table_ideal(fano_table)
    assert len(o) == 28
    assert F_vector(o) == (1, 4, 10, 13) == h_vector(fano_bm.matroid)


def test_dual_fano_golden(dual_fano_bm, dual_fano_table):
    o = construct(dual_fano_bm)
    assert o == table_ideal(dual_fano_table)
    assert F_vector(o) == (1, 3, 6, 10, 8)


def test_construct_matroid_uses_lex_smallest_basis(fano_m, fano_bm):
    assert construct_matroid(fano_m) == construct(fano_bm)


def test_step0_is_stable_sort_by_basis_count(fano_bm):
    fam = label_family(fano_bm.matroid, fano_bm.base)
    assert basis_counts((4, 5, 6, 7), fam) == {4: 2, 5: 2, 6: 2, 7: 3}
    assert step0_order((7, 6, 5, 4), fam) == [6, 5, 4, 7]
    re = step0(BasedMatroid(fano_bm.matroid, fano_bm.base, (7, 6, 5, 4)))
    assert re.back_map == (1, 2, 3, 6, 5, 4, 7)
    assert re.bm.order == (4, 5, 6, 7)


def test_loops_count_zero():
    m = new_matroid(5, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])
    bm = BasedMatroid.natural(m)
    fam = label_family(m, bm.base)
    assert basis_counts((4, 5), fam) == {4: 3, 5: 0}
    assert step0_order((4, 5), fam) == [5, 4]
    assert check_conditions(bm, construct(bm)).passed


def test_rank3_pair_table():
    assert _rank3_pair((1, 0), 1) == [(1, 1)]
    assert _rank3_pair((1, 1), 1) == [(1, 1), (1, 2)]
    assert _rank3_pair((1, 1), 2) == [(1, 1), (2, 1)]
    with pytest.raises(UnexpectedCase):
        _rank3_pair((1, 3), 1)


def test_rank4_triple_needs_known_shape():
    with pytest.raises(UnexpectedCase):
        _rank4_triple((1, 4), None, None, None, 1, 1, 1)


@pytest.mark.parametrize("rank", [2, 5])
def test_rank_unsupported(rank):
    m = uniform_matroid(rank, rank + 2)
    with pytest.raises(RankUnsupported):
        construct(BasedMatroid.natural(m))
    with pytest.raises(RankUnsupported):
        construct_from_family(rank, (), {})


@pytest.mark.parametrize("n", [4, 5, 6])
def test_uniform_rank3_all_orders(n):
    m = uniform_matroid(3, n)
    for order in itertools.permutations(range(4, n + 1)):
        bm = BasedMatroid(m, to_mask([1, 2, 3]), order)
        assert check_conditions(bm, construct(bm)).passed


def test_output_depends_only_on_positions(fano_m):
    """Two based matroids with the same position-keyed family get relabeled copies of one ideal."""
    a = BasedMatroid(fano_m, to_mask([1, 2, 3]), (4, 5, 6, 7))
    b = BasedMatroid(fano_m, to_mask([1, 2, 3]), (5, 4, 6, 7))
    fa, fb = label_family(fano_m, a.base), label_family(fano_m, b.base)
    mapping = {4: 5, 5: 4, 6: 6, 7: 7}
    assert {to_mask(mapping[v] for v in elements(s)): h for s, h in fa.items()} == fb
    assert construct(b) == construct(a).relabel(mapping)


@pytest.mark.parametrize("order,pure", [
    ((2, 6, 7), True), ((2, 7, 6), True), ((6, 2, 7), True),
    ((6, 7, 2), False), ((7, 2, 6), False), ((7, 6, 2), False),
])
def test_tied_counts_case_order(order, pure):
    m = new_matroid(7, TIE_BASES)
    bm = BasedMatroid(m, to_mask([1, 3, 4, 5]), order)
    o = construct(bm)
    ok, witness = is_pure(o)
    assert ok is pure
    if not pure:
        assert witness == Monomial.parse("x2^2*x6")
        assert set(check_conditions(bm, o).failures()) == {"purity"}
