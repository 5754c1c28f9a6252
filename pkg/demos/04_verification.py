"""Corpus verification for rank 3, and the tied Step 0 case in rank 4."""

from lexmatroid import BasedMatroid, construct, new_matroid
from lexmatroid.matroid import to_mask
from lexmatroid.oseq import format_table, is_pure
from lexmatroid.verifier import build_corpus, verify_corpus, verify_lemma_rank3, verify_structure

corpus = build_corpus(3, 6)
print(verify_corpus(corpus, jobs=1).summary())
print()
print(verify_structure(corpus).summary())
print()
# clause 1 fails only on cones
print(verify_lemma_rank3(corpus).summary())
print()

# elements 2 and 7 both lie in three bases of Gamma; the order between them
# decides which rank-4 case fires for the triple {2,6,7}
bases = [
    (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (1, 2, 3, 6), (1, 2, 4, 6),
    (1, 3, 4, 6), (1, 2, 3, 7), (1, 2, 4, 7), (2, 3, 4, 7), (1, 3, 5, 7), (2, 3, 5, 7),
    (1, 4, 5, 7), (2, 4, 5, 7), (3, 4, 5, 7), (1, 3, 6, 7), (2, 3, 6, 7), (1, 4, 6, 7),
    (2, 4, 6, 7), (3, 4, 6, 7),
]
m = new_matroid(7, bases)
for order in [(2, 6, 7), (6, 7, 2)]:
    bm = BasedMatroid(m, to_mask([1, 3, 4, 5]), order)
    o = construct(bm)
    print("order", order, "pure:", is_pure(o))
    print(format_table(bm, o))
    print()
