"""Monomials, order ideals (multicomplexes) and the based-matroid condition checks."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .matroid import MatroidError, elements, popcount, restriction, to_mask
from .shelling import BasedMatroid, HVector, h_vector

MONOMIAL_FACTOR = re.compile(r"^x_?\{?(\d+)\}?(?:\^\{?(\d+)\}?)?$")


class NotAnIdeal(MatroidError):
    pass


class NotAnIsomorphism(MatroidError):
    pass


class Monomial(tuple):
    """Sorted ``(label, exponent)`` pairs with positive exponents; ``()`` is 1."""

    __slots__ = ()

    def __new__(cls, items: Iterable[tuple[int, int]] = ()):
        return super().__new__(cls, sorted((int(v), int(e)) for v, e in items if e))

    @classmethod
    def of(cls, exponents: Mapping[int, int]) -> "Monomial":
        return cls(exponents.items())

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip().replace(" ", "")
        if text == "1":
            return cls()
        exps: dict[int, int] = {}
        for factor in re.split(r"\*|(?<=\d)(?=x)|(?<=\})(?=x)", text):
            match = MONOMIAL_FACTOR.match(factor)
            if not match:
                raise ValueError(f"cannot parse monomial factor {factor!r} in {text!r}")
            v = int(match.group(1))
            exps[v] = exps.get(v, 0) + int(match.group(2) or 1)
        return cls(exps.items())

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    @property
    def support(self) -> int:
        return to_mask(v for v, _ in self)

    def exponents(self) -> dict[int, int]:
        return dict(self)

    def divides(self, other: "Monomial") -> bool:
        theirs = dict(other)
        return all(theirs.get(v, 0) >= e for v, e in self)

    def times(self, v: int) -> "Monomial":
        exps = dict(self)
        exps[v] = exps.get(v, 0) + 1
        return Monomial(exps.items())

    def lower_neighbours(self) -> list["Monomial"]:
        out = []
        for v, e in self:
            exps = dict(self)
            exps[v] = e - 1
            out.append(Monomial(exps.items()))
        return out

    def relabel(self, mapping: Mapping[int, int]) -> "Monomial":
        return Monomial((mapping[v], e) for v, e in self)

    def sort_key(self):
        return (self.degree, tuple(v for v, e in self for _ in range(e)))

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


def monomial(text: str) -> Monomial:
    return Monomial.parse(text)


@dataclass(frozen=True)
class OrderIdeal:
    monomials: frozenset[Monomial]

    @classmethod
    def of(cls, items: Iterable[Monomial | str]) -> "OrderIdeal":
        return cls(frozenset(Monomial.parse(m) if isinstance(m, str) else m for m in items))

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, m) -> bool:
        return m in self.monomials

    def sorted(self) -> list[Monomial]:
        return sorted(self.monomials, key=Monomial.sort_key)

    @property
    def variables(self) -> int:
        mask = 0
        for m in self.monomials:
            mask |= m.support
        return mask

    def relabel(self, mapping: Mapping[int, int]) -> "OrderIdeal":
        return OrderIdeal(frozenset(m.relabel(mapping) for m in self.monomials))

    def to_json(self) -> list[dict]:
        return [{"vars": {str(v): e for v, e in m}} for m in self.sorted()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "OrderIdeal":
        return cls(frozenset(Monomial((int(v), int(e)) for v, e in row["vars"].items()) for row in data))


def is_order_ideal(o: OrderIdeal) -> tuple[bool, Monomial | None]:
    """Divisor closure; the witness is a monomial with a missing immediate divisor."""
    if not o.monomials:
        return False, None
    mons = o.monomials
    for m in o.sorted():
        for lower in m.lower_neighbours():
            if lower not in mons:
                return False, m
    return True, None


def maximal_monomials(o: OrderIdeal) -> list[Monomial]:
    mons = o.monomials
    variables = elements(o.variables)
    return [m for m in o.sorted() if not any(m.times(v) in mons for v in variables)]


def is_pure(o: OrderIdeal) -> tuple[bool, Monomial | None]:
    ok, _ = is_order_ideal(o)
    if not ok:
        raise NotAnIdeal("purity is only defined for order ideals")
    top = max(m.degree for m in o.monomials)
    for m in maximal_monomials(o):
        if m.degree < top:
            return False, m
    return True, None


def F_vector(o: OrderIdeal) -> HVector:
    top = max((m.degree for m in o.monomials), default=-1)
    counts = [0] * (top + 1)
    for m in o.monomials:
        counts[m.degree] += 1
    return tuple(counts)


def restrict_support(o: OrderIdeal, variables: int) -> OrderIdeal:
    return OrderIdeal(frozenset(m for m in o.monomials if m.support & ~variables == 0))


@dataclass
class ConditionReport:
    """Outcome per check; ``witnesses[name]`` is None exactly when the check passed."""

    witnesses: dict[str, str | None] = field(default_factory=dict)

    CHECKS = ("variables", "supports", "counts", "restrictions", "ideal", "purity", "f_vector")

    def record(self, name: str, witness: str | None) -> None:
        self.witnesses[name] = witness

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def failures(self) -> dict[str, str]:
        return {k: w for k, w in self.witnesses.items() if w is not None}

    def lines(self) -> list[str]:
        return [f"{name}: {'pass' if w is None else 'FAIL ' + w}" for name, w in self.witnesses.items()]


def _fmt_set(mask: int) -> str:
    return "{" + ",".join(map(str, elements(mask))) + "}"


def check_conditions(
    bm: BasedMatroid,
    o: OrderIdeal,
    family: Mapping[int, HVector] | None = None,
    construct: Callable[[BasedMatroid], OrderIdeal] | None = None,
    restricted_outputs: Callable[[BasedMatroid, int], OrderIdeal] | None = None,
) -> ConditionReport:
    """Check the four based-matroid conditions plus purity and F = h.

    The conditions: variables avoid the base; every support is independent;
    monomials with support I count h(Gamma_I) by degree; restricting to the
    variables in I gives the output for ``Delta|_{B + I}``.
    ``family`` maps independent sets (as masks) disjoint from the base to
    h(Gamma_I); it is computed from ``bm`` when omitted.
    """
    from .gamma import label_family

    if construct is None:
        from .constructor import construct
    m, base = bm.matroid, bm.base
    if family is None:
        family = label_family(m, base)
    report = ConditionReport()
    outside = m.ground & ~base

    bad = o.variables & ~outside
    report.record("variables", None if not bad else f"variables {_fmt_set(bad)} meet the base")

    table = m.independent_table
    witness = None
    for mon in o.sorted():
        s = mon.support
        if s & base or not table[s]:
            witness = f"{mon} has support {_fmt_set(s)}"
            break
    report.record("supports", witness)

    by_support: dict[int, list[int]] = {}
    for mon in o.monomials:
        s = mon.support
        row = by_support.setdefault(s, [])
        j = mon.degree - popcount(s)
        while len(row) <= j:
            row.append(0)
        row[j] += 1
    witness = None
    for s in sorted(set(family) | set(by_support)):
        want = list(family.get(s, ()))
        got = by_support.get(s, [])
        width = max(len(want), len(got))
        want += [0] * (width - len(want))
        got = got + [0] * (width - len(got))
        if want != got:
            witness = f"I={_fmt_set(s)}: expected {tuple(want)}, found {tuple(got)}"
            break
    report.record("counts", witness)

    witness = None
    for s in sorted(family):
        sub = restricted_outputs(bm, s) if restricted_outputs else construct(restricted_based(bm, s))
        mine = restrict_support(o, s)
        if mine != sub:
            extra = sorted(mine.monomials - sub.monomials, key=Monomial.sort_key)
            missing = sorted(sub.monomials - mine.monomials, key=Monomial.sort_key)
            witness = (
                f"I={_fmt_set(s)}: extra {[str(x) for x in extra]}, missing {[str(x) for x in missing]}"
            )
            break
    report.record("restrictions", witness)

    ok, w = is_order_ideal(o)
    report.record("ideal", None if ok else f"{w} lacks a divisor")
    if ok:
        pure, w = is_pure(o)
        report.record("purity", None if pure else f"{w} is maximal of low degree")
    else:
        report.record("purity", "not an order ideal")

    h = h_vector(m)
    f = F_vector(o)
    report.record("f_vector", None if f == _trim(h) else f"F={f} but h={h}")
    return report


def _trim(h: Sequence[int]) -> tuple[int, ...]:
    h = list(h)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return tuple(h)


def restricted_based(bm: BasedMatroid, i_set: int) -> BasedMatroid:
    """``(Delta|_{B + I}, B, <)`` with the order inherited from ``bm``."""
    return BasedMatroid(restriction(bm.matroid, bm.base | i_set), bm.base, bm.order)


def relabel_based(bm: BasedMatroid, perm: Sequence[int]) -> BasedMatroid:
    from .matroid import permute_mask, relabel

    return BasedMatroid(
        relabel(bm.matroid, perm), permute_mask(bm.base, perm), tuple(perm[v - 1] for v in bm.order)
    )


def is_based_isomorphism(bm: BasedMatroid, target: BasedMatroid, perm: Sequence[int]) -> bool:
    from .matroid import permute_mask, relabel

    n = bm.matroid.n
    if sorted(perm) != list(range(1, n + 1)) or target.matroid.n != n:
        return False
    if relabel(bm.matroid, perm).bases != target.matroid.bases:
        return False
    if permute_mask(bm.base, perm) != target.base:
        return False
    return tuple(perm[v - 1] for v in bm.order) == target.order


def check_naturality(
    bm: BasedMatroid,
    perm: Sequence[int],
    target: BasedMatroid | None = None,
    construct: Callable[[BasedMatroid], OrderIdeal] | None = None,
) -> bool:
    """construct(target) equals construct(bm) with every variable relabeled by ``perm``."""
    if construct is None:
        from .constructor import construct
    if target is None:
        if sorted(perm) != list(range(1, bm.matroid.n + 1)):
            raise NotAnIsomorphism("relabeling is not a permutation of the ground set")
        target = relabel_based(bm, perm)
    elif not is_based_isomorphism(bm, target, perm):
        raise NotAnIsomorphism("relabeling does not carry bm onto target")
    mapping = {i + 1: p for i, p in enumerate(perm)}
    return construct(target) == construct(bm).relabel(mapping)


def table_rows(bm: BasedMatroid, o: OrderIdeal, family: Mapping[int, HVector] | None = None):
    """Rows ``(I, h(Gamma_I), monomials)`` ordered by |I| then lexicographically."""
    from .gamma import label_family

    if family is None:
        family = label_family(bm.matroid, bm.base)
    groups: dict[int, list[Monomial]] = {}
    for mon in o.sorted():
        groups.setdefault(mon.support, []).append(mon)
    keys = sorted(family, key=lambda s: (popcount(s), elements(s)))
    return [(s, family[s], groups.get(s, [])) for s in keys]


def format_table(bm: BasedMatroid, o: OrderIdeal, family: Mapping[int, HVector] | None = None) -> str:
    rows = table_rows(bm, o, family)
    cells = [("I", "h(Gamma_I)", "Monomials")]
    for s, h, mons in rows:
        cells.append((_fmt_set(s), "(" + ",".join(map(str, h)) + ")", ", ".join(map(str, mons))))
    widths = [max(len(row[c]) for row in cells) for c in range(2)]
    lines = []
    for row in cells:
        lines.append(f"{row[0]:<{widths[0]}} | {row[1]:<{widths[1]}} | {row[2]}".rstrip())
    return "\n".join(lines)


def parse_table(text: str) -> dict[int, tuple[HVector, list[Monomial]]]:
    """Inverse of :func:`format_table` (header and blank lines ignored)."""
    out: dict[int, tuple[HVector, list[Monomial]]] = {}
    for line in text.strip().splitlines():
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3 or parts[0] == "I":
            continue
        inner = parts[0].strip("{}")
        s = to_mask(int(v) for v in inner.split(",") if v)
        h = tuple(int(v) for v in parts[1].strip("()").split(",") if v)
        mons = [Monomial.parse(t) for t in parts[2].split(",") if t.strip()]
        out[s] = (h, mons)
    return out
