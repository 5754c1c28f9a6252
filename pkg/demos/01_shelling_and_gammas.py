"""Lexicographic shelling of the Fano plane and its restricted h-vectors."""

from lexmatroid import BasedMatroid, fano, f_vector, h_vector, lex_shelling
from lexmatroid.gamma import gamma, label_family
from lexmatroid.matroid import elements, to_mask

m = fano()
print(m, "f =", f_vector(m), "h =", h_vector(m))

# base {1,2,3}, other elements in natural order
bm = BasedMatroid.natural(m)
sr = lex_shelling(bm)
for b, r in list(zip(sr.ordered_bases, sr.restriction_sets))[:8]:
    print(elements(b), "R =", elements(r))
print("...")

# Gamma_{6}: bases of the link restricted to the base
print("Gamma_6 bases:", [elements(b) for b in gamma(bm, to_mask([6])).bases])

# every independent I outside the base, with h(Gamma_I)
fam = label_family(m, bm.base)
for i_set in sorted(fam, key=lambda s: (len(elements(s)), elements(s))):
    print(f"{str(elements(i_set)):>10}  {fam[i_set]}")

# shifted h-vectors add up to h(Fano)
total = [0] * 4
for i_set, h in fam.items():
    for j, v in enumerate(h):
        total[j + len(elements(i_set))] += v
print("sum of shifted h(Gamma_I):", tuple(total))
