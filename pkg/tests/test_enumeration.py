import io
import random
from math import comb

import pytest

from lexmatroid.enumeration import (
    LengthMismatch,
    RevlexRecord,
    TooLarge,
    based_matroids,
    based_signatures,
    brute_force_enumerate,
    dedup_isomorphic,
    enumerate_up_to,
    extend_by_element,
    extension_enumerate,
    labeled_matroids,
    linear_subclasses,
    modular_cut,
    parse_revlex,
    read_database,
    serialize_revlex,
    write_database,
)
from lexmatroid.matroid import (
    MatroidError,
    canonical_form,
    new_matroid,
    relabel,
    restriction,
    to_mask,
    uniform_matroid,
)

# isomorphism classes of rank-r matroids on n elements
KNOWN = {
    (4, 2): 7, (5, 2): 13, (5, 3): 13, (6, 2): 23, (6, 3): 38, (6, 4): 23, (6, 1): 6, (6, 5): 6,
}


def test_revlex_roundtrip_fano(fano_m):
    rec = serialize_revlex(fano_m)
    assert len(rec.indicator) == 35 and rec.indicator.count("1") == 28
    assert parse_revlex(rec) == fano_m
    assert rec.indicator.startswith("1011")  # 123, 124 (a line), 134, 234


def test_revlex_errors():
    with pytest.raises(LengthMismatch):
        RevlexRecord(4, 2, "11111")
    with pytest.raises(MatroidError):
        RevlexRecord(4, 2, "000000")
    with pytest.raises(MatroidError):
        parse_revlex(RevlexRecord(4, 2, "100001"))


def test_database_roundtrip(fano_m, dual_fano_m):
    buf = io.StringIO()
    write_database(buf, [fano_m, dual_fano_m])
    text = "# two matroids\n\n" + buf.getvalue()
    records = read_database(io.StringIO(text))
    assert [parse_revlex(r) for r in records] == [fano_m, dual_fano_m]
    with pytest.raises(MatroidError):
        read_database(io.StringIO("4 2\n"))


@pytest.mark.parametrize("n,r", sorted(KNOWN))
def test_brute_force_counts(n, r):
    assert len(brute_force_enumerate(n, r)) == KNOWN[n, r]


def test_labeled_matroids_are_valid():
    found = labeled_matroids(4, 2)
    assert len(found) == len(set(found))
    for m in found:
        new_matroid(m.n, m.bases)
    with pytest.raises(TooLarge):
        labeled_matroids(7, 3)


@pytest.mark.parametrize("n,r", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_extension_equals_brute_force(n, r):
    a = {canonical_form(m) for m in extension_enumerate(n, r)}
    b = {canonical_form(m) for m in brute_force_enumerate(n, r)}
    assert a == b


def test_linear_subclasses_of_u23():
    m = uniform_matroid(2, 3)
    subs = linear_subclasses(m)
    # empty, each single point, and all three (any two force the third)
    assert sorted(len(s) for s in subs) == [0, 1, 1, 1, 3]
    assert modular_cut(m, frozenset()) == {m.ground}


def test_extensions_include_free_loop_and_coloop_free():
    m = uniform_matroid(2, 3)
    exts = extend_by_element(m)
    forms = {canonical_form(e) for e in exts}
    assert canonical_form(uniform_matroid(2, 4)) in forms
    loop = new_matroid(4, [(1, 2), (1, 3), (2, 3)])
    assert canonical_form(loop) in forms
    for e in exts:
        assert restriction(e, m.ground).bases == m.bases


def test_dedup_sorted_by_form():
    ms = [relabel(uniform_matroid(2, 3), [2, 3, 1]), uniform_matroid(2, 3), new_matroid(3, [(1, 2), (1, 3)])]
    out = dedup_isomorphic(ms)
    assert len(out) == 2
    assert [canonical_form(m) for m in out] == sorted(canonical_form(m) for m in out)


def test_enumerate_up_to_rank3():
    corpus = enumerate_up_to(3, 6)
    assert corpus.by_size() == {3: 1, 4: 4, 5: 13, 6: 38}


def test_signatures_of_fano(fano_m):
    from itertools import combinations, permutations

    from lexmatroid.gamma import restricted_h
    from lexmatroid.matroid import elements

    keys = set()
    for base in fano_m.bases:
        rest = elements(fano_m.ground & ~base)
        for order in permutations(rest):
            rows = []
            for k in range(4):
                for pos in combinations(range(1, 5), k):
                    i_set = to_mask(order[p - 1] for p in pos)
                    if fano_m.independent_table[i_set]:
                        rows.append((pos, restricted_h(fano_m, base, i_set)))
            keys.add(tuple(sorted(rows)))
    sigs = based_signatures(fano_m)
    assert len(sigs) == len(keys)
    for bm in sigs.values():
        assert bm.matroid is fano_m


def test_based_matroids_dedups_across_matroids():
    corpus = based_matroids(enumerate_up_to(3, 4))
    assert len(corpus.based) == len(set(corpus.signatures))


def test_random_revlex_roundtrip():
    rng = random.Random(7)
    pool = brute_force_enumerate(6, 3)
    for _ in range(50):
        m = pool[rng.randrange(len(pool))]
        perm = list(range(1, 7))
        rng.shuffle(perm)
        m = relabel(m, perm)
        assert parse_revlex(serialize_revlex(m)) == m
