import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexmatroid.constructor import construct
from lexmatroid.matroid import to_mask
from lexmatroid.oseq import (
    F_vector,
    Monomial,
    NotAnIdeal,
    NotAnIsomorphism,
    OrderIdeal,
    check_conditions,
    check_naturality,
    format_table,
    is_order_ideal,
    is_pure,
    maximal_monomials,
    parse_table,
    relabel_based,
    restrict_support,
)

monomials = st.dictionaries(st.integers(1, 4), st.integers(1, 3), max_size=3).map(Monomial.of)


def divisors(m):
    exps = dict(m)
    vs = list(exps)
    for es in itertools.product(*(range(exps[v] + 1) for v in vs)):
        yield Monomial(zip(vs, es))


def brute_is_ideal(mons):
    return all(d in mons for m in mons for d in divisors(m))


@pytest.mark.parametrize("text,expected", [("1", ()), ("x4", ((4, 1),)), ("x4^2*x5", ((4, 2), (5, 1))), ("x_4x_5^3", ((4, 1), (5, 3)))])
def test_parse(text, expected):
    assert tuple(Monomial.parse(text)) == expected


@settings(max_examples=80, deadline=None)
@given(monomials)
def test_str_roundtrip(m):
    assert Monomial.parse(str(m)) == m


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Monomial.parse("y3")


@settings(max_examples=120, deadline=None)
@given(st.frozensets(monomials, min_size=1, max_size=8))
def test_is_order_ideal_matches_divisor_search(mons):
    ok, witness = is_order_ideal(OrderIdeal(mons))
    assert ok == brute_is_ideal(mons)
    if not ok:
        assert witness in mons


@settings(max_examples=80, deadline=None)
@given(st.frozensets(monomials, min_size=1, max_size=6))
def test_down_closure_is_ideal_and_purity_matches(gens):
    mons = frozenset(d for g in gens for d in divisors(g))
    o = OrderIdeal(mons)
    assert is_order_ideal(o)[0]
    maxima = [m for m in mons if not any(m != n and m.divides(n) for n in mons)]
    assert sorted(maximal_monomials(o), key=Monomial.sort_key) == sorted(maxima, key=Monomial.sort_key)
    assert is_pure(o)[0] == (len({m.degree for m in maxima}) == 1)
    assert sum(F_vector(o)) == len(mons)


def test_not_pure_witness():
    o = OrderIdeal.of(["1", "x1", "x2", "x1^2"])
    assert is_pure(o) == (False, Monomial.parse("x2"))
    with pytest.raises(NotAnIdeal):
        is_pure(OrderIdeal.of(["x1"]))


def test_json_roundtrip():
    o = OrderIdeal.of(["1", "x4", "x4^2*x5", "x4*x5", "x4^2", "x5"])
    assert OrderIdeal.from_json(o.to_json()) == o
    assert restrict_support(o, to_mask([4])) == OrderIdeal.of(["1", "x4", "x4^2"])


def test_table_roundtrip(fano_bm, fano_table):
    o = construct(fano_bm)
    text = format_table(fano_bm, o)
    assert text.splitlines()[0].split("|")[0].strip() == "I"
    parsed = parse_table(text)
    assert {s: (h, sorted(ms)) for s, (h, ms) in parsed.items()} == {
        s: (h, sorted(ms)) for s, (h, ms) in fano_table.items()
    }


def test_conditions_on_fano(fano_bm):
    report = check_conditions(fano_bm, construct(fano_bm))
    assert report.passed and set(report.witnesses) == set(report.CHECKS)


def test_conditions_catch_a_wrong_ideal(fano_bm):
    o = construct(fano_bm)
    broken = OrderIdeal(o.monomials - {Monomial.parse("x4*x5*x7")})
    report = check_conditions(fano_bm, broken)
    assert not report.passed
    assert {"counts", "f_vector"} <= set(report.failures())
    bad_support = OrderIdeal(o.monomials | {Monomial.parse("x1")})
    assert "variables" in check_conditions(fano_bm, bad_support).failures()


@pytest.mark.parametrize("perm", [[1, 2, 3, 4, 5, 6, 7], [2, 1, 3, 4, 5, 6, 7], [3, 1, 2, 5, 6, 4, 7]])
def test_naturality_on_fano(fano_bm, perm):
    assert check_naturality(fano_bm, perm)
    target = relabel_based(fano_bm, perm)
    assert check_naturality(fano_bm, perm, target=target)


def test_naturality_rejects_non_isomorphism(fano_bm):
    with pytest.raises(NotAnIsomorphism):
        check_naturality(fano_bm, [1, 1, 3, 4, 5, 6, 7])
    with pytest.raises(NotAnIsomorphism):
        check_naturality(fano_bm, [2, 1, 3, 4, 5, 6, 7], target=fano_bm)
