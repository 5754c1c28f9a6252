"""Corpus-wide verification with failure witnesses.

Nothing here aborts on a failed check: every instance is checked and each
failure is kept with enough data (the matroid's bases, base, order and the
offending set or monomial) to be replayed through the single-instance
operations.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Callable, Iterable, Sequence

from .constructor import RankUnsupported, construct_from_family
from .enumeration import Corpus, based_matroids, enumerate_up_to
from .gamma import check_U_equals_V, label_family
from .matroid import Matroid, elements, is_cone, popcount, restriction
from .oseq import OrderIdeal, check_conditions
from .shelling import (
    BasedMatroid,
    h_vector_from_f,
    h_vector_from_shelling,
    lex_shelling,
)

log = logging.getLogger(__name__)

MAX_WITNESSES = 50


@dataclass
class CheckTally:
    passed: int = 0
    failed: int = 0
    witnesses: list[dict] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.failed

    def merge(self, other: "CheckTally") -> None:
        self.passed += other.passed
        self.failed += other.failed
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses.extend(other.witnesses[:room])


@dataclass
class VerificationReport:
    corpus: str
    counts: dict[str, int] = field(default_factory=dict)
    checks: dict[str, CheckTally] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    duration: float = 0.0

    def record(self, name: str, ok: bool, witness: dict | None = None) -> None:
        tally = self.checks.setdefault(name, CheckTally())
        if ok:
            tally.passed += 1
        else:
            tally.failed += 1
            if witness is not None and len(tally.witnesses) < MAX_WITNESSES:
                tally.witnesses.append(witness)

    def merge(self, other: "VerificationReport") -> None:
        for name, tally in other.checks.items():
            self.checks.setdefault(name, CheckTally()).merge(tally)
        self.errors.extend(other.errors)

    @property
    def failures(self) -> int:
        return sum(t.failed for t in self.checks.values()) + len(self.errors)

    @property
    def clean(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "corpus": self.corpus,
            "counts": self.counts,
            "checks": {
                k: {"passed": t.passed, "failed": t.failed, "witnesses": t.witnesses}
                for k, t in self.checks.items()
            },
            "errors": self.errors,
            "failures": self.failures,
            "duration": round(self.duration, 3),
        }

    def summary(self) -> str:
        lines = [f"corpus: {self.corpus}"]
        lines += [f"{k}: {v}" for k, v in self.counts.items()]
        for name, t in self.checks.items():
            lines.append(f"{name}: {t.passed} passed, {t.failed} failed")
        lines += [f"error: {e}" for e in self.errors]
        lines.append(f"failures: {self.failures}")
        lines.append(f"duration: {self.duration:.1f}s")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def describe(bm: BasedMatroid, **extra) -> dict:
    out = {
        "n": bm.matroid.n,
        "bases": [list(s) for s in bm.matroid.as_sets()],
        "base": list(elements(bm.base)),
        "order": list(bm.order),
    }
    out.update(extra)
    return out


# -- structural lemmas --------------------------------------------------------


def _pairs(bm: BasedMatroid, fam: dict[int, tuple]) -> Iterable[tuple[int, int]]:
    pos = {v: i for i, v in enumerate(bm.order)}
    for i_set in fam:
        if popcount(i_set) == 2:
            x, y = sorted(elements(i_set), key=pos.__getitem__)
            yield x, y


def _triples(bm: BasedMatroid, fam: dict[int, tuple]) -> Iterable[tuple[int, int, int]]:
    pos = {v: i for i, v in enumerate(bm.order)}
    for i_set in fam:
        if popcount(i_set) == 3:
            x, y, z = sorted(elements(i_set), key=pos.__getitem__)
            yield x, y, z


def _count(fam: dict[int, tuple], v: int) -> int:
    return sum(fam[1 << (v - 1)])


def rank3_pair_clause(bm: BasedMatroid, fam: dict[int, tuple], x: int, y: int) -> tuple[str, bool]:
    """Which clause of the rank-3 pair lemma applies, and whether it holds."""
    bit = (1 << (x - 1)) | (1 << (y - 1))
    h = fam[bit]
    bx, by = _count(fam, x), _count(fam, y)
    if h == (1, 0):
        table = bm.matroid.independent_table
        rest = bm.matroid.ground & ~(bm.base | bit)
        return "1", any(table[bit | (1 << (z - 1))] for z in elements(rest))
    if h == (1, 1):
        ok = (
            (bx == 1 and by >= 2)
            or (by == 1 and bx >= 2)
            or (bx == 2 and by == 3)
            or (bx == 3 and by >= 2)
        )
        return "2", ok
    if h == (1, 2):
        return "3", bx >= 2 and by >= 2
    return "unexpected", False


def rank4_pair_clause(fam: dict[int, tuple], x: int, y: int) -> tuple[str, bool]:
    h = fam[(1 << (x - 1)) | (1 << (y - 1))]
    bx, by = _count(fam, x), _count(fam, y)
    lo, hi = min(bx, by), max(bx, by)
    if h == (1, 1, 0):
        return "1", not (bx == 1 and by < 2)
    if h == (1, 1, 1):
        return "2", (lo == 1 and hi >= 3) or lo >= 3
    if h == (1, 2, 0):
        return "3", lo >= 2
    if h == (1, 2, 1):
        return "4", bx in (2, 4) and by in (2, 4)
    if h == (1, 2, 2):
        return "5", lo >= 2 and hi >= 3
    if h == (1, 2, 3):
        return "6", lo >= 3
    return "none", True


def rank4_triple_clause(fam: dict[int, tuple], x: int, y: int, z: int) -> tuple[str, bool]:
    h = fam[(1 << (x - 1)) | (1 << (y - 1)) | (1 << (z - 1))]
    counts = [_count(fam, v) for v in (x, y, z)]
    if h == (1, 1):
        return "1", max(counts) >= 2
    if h == (1, 2):
        return "2", counts.count(1) <= 1
    if h == (1, 3):
        return "3", min(counts) >= 2
    return "none", True


def _lemma_report(corpus: Corpus, name: str, check: Callable, arity: int) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(f"rank {corpus.rank}, n <= {corpus.max_n}")
    report.counts["based"] = len(corpus.based)
    for bm in corpus.based:
        fam = label_family(bm.matroid, bm.base)
        items = _pairs(bm, fam) if arity == 2 else _triples(bm, fam)
        for xs in items:
            clause, ok = check(bm, fam, *xs)
            report.record(f"{name} clause {clause}", ok, None if ok else describe(bm, I=list(xs)))
    report.duration = time.perf_counter() - start
    return report


def verify_lemma_rank3(corpus: Corpus) -> VerificationReport:
    """Clauses as stated, plus clause 1 restricted to non-cones.

    Clause 1 leans on the going-up property, which needs h_3 != 0; cones break it.
    """
    report = _lemma_report(corpus, "rank-3 pairs", rank3_pair_clause, 2)
    cones: dict[int, bool] = {}
    for bm in corpus.based:
        m = bm.matroid
        if id(m) not in cones:
            cones[id(m)] = is_cone(m)
        if cones[id(m)]:
            continue
        fam = label_family(m, bm.base)
        for x, y in _pairs(bm, fam):
            clause, ok = rank3_pair_clause(bm, fam, x, y)
            if clause == "1":
                report.record("rank-3 pairs clause 1 (non-cone)", ok, None if ok else describe(bm, I=[x, y]))
    return report


def verify_lemma_rank4_edges(corpus: Corpus) -> VerificationReport:
    return _lemma_report(corpus, "rank-4 pairs", lambda bm, fam, x, y: rank4_pair_clause(fam, x, y), 2)


def verify_lemma_rank4_faces(corpus: Corpus) -> VerificationReport:
    return _lemma_report(
        corpus, "rank-4 triples", lambda bm, fam, x, y, z: rank4_triple_clause(fam, x, y, z), 3
    )


# -- structural identities ---------------------------------------------------


def structure_checks(bm: BasedMatroid, report: VerificationReport) -> None:
    """Cone, going-up, decomposition, U_I = V_I, and the two restriction-set lemmas."""
    m, base, d = bm.matroid, bm.base, bm.rank
    sr = lex_shelling(bm)
    h = h_vector_from_shelling(sr, d)
    fam = label_family(m, base)

    report.record("cone", (h[d] == 0) == is_cone(m), describe(bm, h=list(h)))

    total = [0] * (d + 1)
    for i_set, hg in fam.items():
        for j, v in enumerate(hg):
            total[j + popcount(i_set)] += v
    report.record("decomposition", tuple(total) == h, describe(bm, h=list(h), sum=total))

    if h[d] != 0:
        table = m.independent_table
        outside = m.ground & ~base
        for i_set, hg in fam.items():
            if hg[-1] == 0:
                ok = any(table[i_set | (1 << (z - 1))] for z in elements(outside & ~i_set))
                report.record("going-up", ok, describe(bm, I=list(elements(i_set))))

    for i_set in fam:
        ok = check_U_equals_V(bm, i_set, shelling=sr)
        report.record("U=V", ok, describe(bm, I=list(elements(i_set))))

    r_sets = set(sr.restriction_sets)
    for i_set in fam:
        report.record("R(B)=I exists", i_set in r_sets, describe(bm, I=list(elements(i_set))))
    for b, r in zip(sr.ordered_bases, sr.restriction_sets):
        extra = b & ~base
        report.record("B-base in R(B)", extra & r == extra, describe(bm, B=list(elements(b))))

    report.record("h from f", h_vector_from_f(_f(m)) == h, describe(bm, h=list(h)))


def _f(m: Matroid) -> tuple[int, ...]:
    from .matroid import f_vector

    return f_vector(m)


def verify_structure(corpus: Corpus, based: Sequence[BasedMatroid] | None = None) -> VerificationReport:
    """Structural identities for every based matroid given (default: every
    matroid of the corpus with each of its bases and the natural order)."""
    start = time.perf_counter()
    report = VerificationReport(f"rank {corpus.rank}, n <= {corpus.max_n}")
    if based is None:
        based = [
            BasedMatroid(m, b, elements(m.ground & ~b)) for m in corpus.matroids for b in m.bases
        ]
    report.counts["classes"] = len(corpus.matroids)
    report.counts["based"] = len(based)
    for bm in based:
        structure_checks(bm, report)
    report.duration = time.perf_counter() - start
    return report


# -- full pipeline -------------------------------------------------------------


class _RestrictionCache:
    """Constructor outputs on restrictions ``Delta|_{B + I}``, shared across orders."""

    def __init__(self):
        self.matroid: Matroid | None = None
        self.base = -1
        self.store: dict[tuple, OrderIdeal] = {}
        self.families: dict[int, dict] = {}

    def get(self, bm: BasedMatroid, i_set: int) -> OrderIdeal:
        if bm.matroid is not self.matroid or bm.base != self.base:
            self.matroid, self.base = bm.matroid, bm.base
            self.store.clear()
            self.families.clear()
        key = (i_set, tuple(v for v in bm.order if i_set >> (v - 1) & 1))
        out = self.store.get(key)
        if out is None:
            fam = self.families.get(i_set)
            if fam is None:
                sub = restriction(bm.matroid, bm.base | i_set)
                fam = self.families[i_set] = label_family(sub, bm.base)
            out = self.store[key] = construct_from_family(bm.rank, bm.order, fam)
        return out


def verify_based(bm: BasedMatroid, report: VerificationReport, cache: _RestrictionCache | None = None) -> None:
    """Construct, then check ideal, purity, conditions 1-4, F = h and the union property."""
    cache = cache or _RestrictionCache()
    fam = label_family(bm.matroid, bm.base)
    try:
        o = construct_from_family(bm.rank, bm.order, fam)
    except Exception as exc:  # a construction crash is a finding, not a harness error
        report.record("construct", False, describe(bm, error=repr(exc)))
        return
    report.record("construct", True)
    cond = check_conditions(bm, o, family=fam, restricted_outputs=cache.get)
    for name, witness in cond.witnesses.items():
        report.record(name, witness is None, None if witness is None else describe(bm, witness=witness))
    union: set = set()
    for i_set in fam:
        union |= cache.get(bm, i_set).monomials
    report.record("union", union == o.monomials, describe(bm, size=len(o), union=len(union)))


def _verify_chunk(rank: int, chunk: list[BasedMatroid]) -> VerificationReport:
    report = VerificationReport(f"rank {rank}")
    cache = _RestrictionCache()
    for bm in chunk:
        verify_based(bm, report, cache)
    return report


def _chunks(items: list, size: int) -> list[list]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def available_cores() -> int:
    if hasattr(os, "sched_getaffinity"):
        return len(os.sched_getaffinity(0))
    return os.cpu_count() or 1


def verify_corpus(corpus: Corpus, jobs: int | None = None) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(f"rank {corpus.rank}, n <= {corpus.max_n}")
    report.counts["classes"] = len(corpus.matroids)
    report.counts["signatures"] = len(corpus.based)
    jobs = jobs or available_cores()
    if jobs <= 1:
        report.merge(_verify_chunk(corpus.rank, corpus.based))
    else:
        with ProcessPoolExecutor(jobs) as pool:
            parts = pool.map(_verify_chunk, repeat(corpus.rank), _chunks(corpus.based, 500))
            for part in parts:
                report.merge(part)
    report.duration = time.perf_counter() - start
    return report


def build_corpus(rank: int, max_n: int | None = None) -> Corpus:
    if rank not in (3, 4):
        raise RankUnsupported(f"rank {rank} is not 3 or 4")
    corpus = enumerate_up_to(rank, max_n if max_n is not None else 2 * rank)
    return based_matroids(corpus)


def run_full_verification(rank: int, jobs: int | None = None, corpus: Corpus | None = None) -> VerificationReport:
    """Enumerate rank-``rank`` matroids on at most 2 * rank elements and verify every signature."""
    start = time.perf_counter()
    try:
        corpus = corpus or build_corpus(rank)
    except RankUnsupported as exc:
        report = VerificationReport(f"rank {rank}")
        report.errors.append(f"RankUnsupported: {exc}")
        return report
    report = verify_corpus(corpus, jobs)
    report.duration = time.perf_counter() - start
    return report


def lemma_corpus(rank: int, max_n: int) -> Corpus:
    return based_matroids(enumerate_up_to(rank, max_n))
