"""Small-matroid corpora: revlex records, exhaustive enumeration and extensions.

Two independent routes produce isomorphism classes of rank-r matroids on n
elements: a depth-first search over basis indicators with exchange-axiom
pruning (feasible while C(n, r) stays small), and single-element extension
through linear subclasses of hyperplanes, which are in bijection with
modular cuts of the lattice of flats.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations
from math import comb
from typing import Iterable, Sequence, TextIO

from .gamma import RestrictedHFamily, family_from_labels, label_family
from .matroid import (
    Matroid,
    MatroidError,
    canonical_form,
    closure,
    elements,
    new_matroid,
    popcount,
    subsets_of_size,
)
from .shelling import BasedMatroid

log = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 20


class LengthMismatch(MatroidError):
    pass


class TooLarge(MatroidError):
    pass


@dataclass(frozen=True)
class RevlexRecord:
    n: int
    r: int
    indicator: str

    def __post_init__(self):
        if len(self.indicator) != comb(self.n, self.r):
            raise LengthMismatch(
                f"indicator has length {len(self.indicator)}, expected C({self.n},{self.r})"
            )
        if set(self.indicator) - {"0", "1"} or "1" not in self.indicator:
            raise MatroidError("indicator must be a 0/1 string with at least one '1'")

    def to_line(self) -> str:
        return f"{self.n} {self.r} {self.indicator}"


def parse_revlex(rec: RevlexRecord) -> Matroid:
    subsets = subsets_of_size(rec.n, rec.r)
    return new_matroid(rec.n, [s for s, c in zip(subsets, rec.indicator) if c == "1"])


def serialize_revlex(m: Matroid) -> RevlexRecord:
    bs = m.basis_set
    return RevlexRecord(m.n, m.rank, "".join("1" if s in bs else "0" for s in subsets_of_size(m.n, m.rank)))


def read_database(stream: TextIO) -> list[RevlexRecord]:
    """Parse ``n r indicator`` lines; blank lines and ``#`` comments are skipped."""
    records = []
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MatroidError(f"line {lineno}: expected 'n r indicator'")
        records.append(RevlexRecord(int(parts[0]), int(parts[1]), parts[2]))
    return records


def write_database(stream: TextIO, matroids: Iterable[Matroid]) -> None:
    for m in matroids:
        stream.write(serialize_revlex(m).to_line() + "\n")


# -- exhaustive search ----------------------------------------------------


def _exchange_constraints(subsets: list[int]) -> list[list[tuple[int, int]]]:
    """Per decision index t, constraints ``(pair_mask, rescue_mask)`` over indices.

    A constraint is violated when both indices in ``pair_mask`` are chosen and
    none in ``rescue_mask`` is; it is attached to the largest index involved.
    """
    index = {s: i for i, s in enumerate(subsets)}
    attached: list[list[tuple[int, int]]] = [[] for _ in subsets]
    for i, b in enumerate(subsets):
        for j, b2 in enumerate(subsets):
            if i == j:
                continue
            for x in elements(b & ~b2):
                rest = b & ~(1 << (x - 1))
                rescue = [index[rest | (1 << (y - 1))] for y in elements(b2 & ~b)]
                t = max([i, j] + rescue)
                rescue_mask = 0
                for k in rescue:
                    rescue_mask |= 1 << k
                attached[t].append(((1 << i) | (1 << j), rescue_mask))
    return attached


def labeled_matroids(n: int, r: int) -> list[Matroid]:
    """Every rank-r matroid on {1..n} (labeled), by DFS over basis indicators."""
    if comb(n, r) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"C({n},{r}) = {comb(n, r)} exceeds {BRUTE_FORCE_LIMIT}")
    subsets = subsets_of_size(n, r)
    attached = _exchange_constraints(subsets)
    total = len(subsets)
    found: list[int] = []
    stack = [(0, 0)]
    while stack:
        t, chosen = stack.pop()
        if t == total:
            if chosen:
                found.append(chosen)
            continue
        for pick in (0, 1 << t):
            a = chosen | pick
            if all(a & pm != pm or a & rm for pm, rm in attached[t]):
                stack.append((t + 1, a))
    out = []
    for chosen in found:
        bases = tuple(s for k, s in enumerate(subsets) if chosen >> k & 1)
        out.append(Matroid(n, r, bases))
    return out


def dedup_isomorphic(matroids: Iterable[Matroid]) -> list[Matroid]:
    """One representative per canonical form, sorted by canonical form."""
    seen: dict[str, Matroid] = {}
    for m in matroids:
        key = canonical_form(m)
        if key not in seen:
            seen[key] = m
    return [seen[k] for k in sorted(seen)]


def brute_force_enumerate(n: int, r: int) -> list[Matroid]:
    return dedup_isomorphic(labeled_matroids(n, r))


# -- single-element extensions ---------------------------------------------


def flats_by_rank(m: Matroid) -> list[set[int]]:
    out: list[set[int]] = [set() for _ in range(m.rank + 1)]
    for s in m.independent_sets():
        out[popcount(s)].add(closure(m, s))
    return out


def linear_subclasses(m: Matroid) -> list[frozenset[int]]:
    """All sets H of hyperplanes such that whenever two members of H meet in a
    coline, every hyperplane through that coline is in H."""
    if m.rank == 0:
        return []
    flats = flats_by_rank(m)
    hyperplanes = sorted(flats[m.rank - 1])
    colines = sorted(flats[m.rank - 2]) if m.rank >= 2 else []
    pencils = []
    for c in colines:
        members = frozenset(h for h in hyperplanes if h & c == c)
        if len(members) > 1:
            pencils.append(members)
    through: dict[int, list[frozenset[int]]] = {h: [] for h in hyperplanes}
    for p in pencils:
        for h in p:
            through[h].append(p)

    def close(included: set[int], excluded: set[int]) -> set[int] | None:
        todo = list(included)
        inc = set(included)
        while todo:
            h = todo.pop()
            for p in through[h]:
                if sum(1 for g in p if g in inc) >= 2:
                    for g in p:
                        if g not in inc:
                            if g in excluded:
                                return None
                            inc.add(g)
                            todo.append(g)
        return inc

    results: list[frozenset[int]] = []

    def search(k: int, inc: set[int], exc: set[int]) -> None:
        while k < len(hyperplanes) and (hyperplanes[k] in inc or hyperplanes[k] in exc):
            k += 1
        if k == len(hyperplanes):
            results.append(frozenset(inc))
            return
        h = hyperplanes[k]
        search(k + 1, inc, exc | {h})
        closed = close(inc | {h}, exc)
        if closed is not None:
            search(k + 1, closed, exc)

    search(0, set(), set())
    return results


def modular_cut(m: Matroid, subclass: frozenset[int]) -> set[int]:
    """Flats all of whose containing hyperplanes lie in ``subclass``, plus E."""
    flats = flats_by_rank(m)
    hyperplanes = flats[m.rank - 1] if m.rank else set()
    cut = {m.ground}
    for level in flats[: m.rank]:
        for f in level:
            if all(h in subclass for h in hyperplanes if h & f == f):
                cut.add(f)
    return cut


def extension_from_subclass(m: Matroid, subclass: frozenset[int]) -> Matroid:
    new_bit = 1 << m.n
    extra = []
    table = m.independent_table
    for s in subsets_of_size(m.n, m.rank - 1) if m.rank else []:
        if table[s] and closure(m, s) not in subclass:
            extra.append(s | new_bit)
    return Matroid(m.n + 1, m.rank, tuple(sorted(m.bases + tuple(extra))))


def extend_by_element(m: Matroid, validate: bool = True) -> list[Matroid]:
    """All rank-preserving extensions of ``m`` by the element ``n + 1``."""
    if m.rank == 0:
        out = [Matroid(m.n + 1, 0, (0,))]
    else:
        out = [extension_from_subclass(m, h) for h in linear_subclasses(m)]
    if validate:
        out = [new_matroid(e.n, e.bases) for e in out]
    return out


def extension_enumerate(n: int, r: int) -> list[Matroid]:
    """Isomorphism classes on n elements built by repeated extension from U(r, r)."""
    level = [Matroid(r, r, ((1 << r) - 1,))] if r else [Matroid(1, 0, (0,))]
    size = max(r, 1)
    while size < n:
        level = dedup_isomorphic(e for m in level for e in extend_by_element(m))
        size += 1
    return level


# -- corpora ---------------------------------------------------------------


@dataclass
class Corpus:
    rank: int
    max_n: int
    matroids: list[Matroid] = field(default_factory=list)
    based: list[BasedMatroid] = field(default_factory=list)
    signatures: list[RestrictedHFamily] = field(default_factory=list)

    def by_size(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for m in self.matroids:
            counts[m.n] = counts.get(m.n, 0) + 1
        return counts


def enumerate_up_to(rank: int, max_n: int) -> Corpus:
    """Isomorphism classes of rank-``rank`` matroids on rank..max_n elements.

    Sizes with C(n, rank) <= 20 are enumerated exhaustively; larger sizes are
    grown from the previous size by single-element extension.
    """
    corpus = Corpus(rank, max_n)
    previous: list[Matroid] = []
    for n in range(max(rank, 1), max_n + 1):
        if comb(n, rank) <= BRUTE_FORCE_LIMIT:
            level = brute_force_enumerate(n, rank)
        else:
            level = dedup_isomorphic(e for m in previous for e in extend_by_element(m, validate=False))
            for m in level:
                new_matroid(m.n, m.bases)
        log.info("rank %d, n=%d: %d classes", rank, n, len(level))
        corpus.matroids.extend(level)
        previous = level
    return corpus


def signature_key(order_positions: dict[int, int], fam: dict[int, tuple]) -> tuple:
    items = []
    for i_set, h in fam.items():
        items.append((tuple(sorted(order_positions[v] for v in elements(i_set))), h))
    items.sort()
    return tuple(items)


def based_signatures(m: Matroid) -> dict[tuple, BasedMatroid]:
    """Distinct restricted-h signatures of ``m`` over all bases and orders."""
    out: dict[tuple, BasedMatroid] = {}
    for base in m.bases:
        fam = label_family(m, base)
        rest = elements(m.ground & ~base)
        for order in permutations(rest):
            pos = {v: i + 1 for i, v in enumerate(order)}
            key = signature_key(pos, fam)
            if key not in out:
                out[key] = BasedMatroid(m, base, order)
    return out


def based_matroids(corpus: Corpus) -> Corpus:
    seen: dict[tuple, BasedMatroid] = {}
    for m in corpus.matroids:
        for key, bm in based_signatures(m).items():
            if key not in seen:
                seen[key] = bm
    corpus.based = list(seen.values())
    corpus.signatures = [family_from_labels(bm.order, label_family(bm.matroid, bm.base)) for bm in corpus.based]
    return corpus


def all_matroids(corpus: Corpus) -> Sequence[Matroid]:
    return corpus.matroids
