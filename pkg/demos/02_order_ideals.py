"""Pure order ideals for the Fano plane and its dual."""

from lexmatroid import BasedMatroid, construct, dual, fano, check_conditions
from lexmatroid.oseq import F_vector, format_table, maximal_monomials

for name, m in [("Fano", fano()), ("dual Fano", dual(fano()))]:
    bm = BasedMatroid.natural(m)
    o = construct(bm)
    print(f"== {name}: {len(o)} monomials, F = {F_vector(o)}")
    print(format_table(bm, o))
    print("maximal:", ", ".join(map(str, maximal_monomials(o))))
    print("\n".join(check_conditions(bm, o).lines()))
    print()

# another vertex order gives another ideal with the same F-vector
bm = BasedMatroid(fano(), 0b111, (7, 6, 5, 4))
o = construct(bm)
print("order 7,6,5,4:", F_vector(o), check_conditions(bm, o).passed)
