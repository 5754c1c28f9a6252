"""Small matroid corpora, two ways, and the revlex database format."""

import io
import time

from lexmatroid.enumeration import (
    brute_force_enumerate,
    enumerate_up_to,
    extension_enumerate,
    read_database,
    parse_revlex,
    write_database,
)
from lexmatroid.matroid import canonical_form

# isomorphism classes on six elements, rank by rank
print("n=6:", [len(brute_force_enumerate(6, r)) for r in range(7)])

# the extension route reaches the same classes
for n, r in [(5, 2), (6, 3)]:
    a = {canonical_form(m) for m in extension_enumerate(n, r)}
    b = {canonical_form(m) for m in brute_force_enumerate(n, r)}
    print(f"({n},{r}) extension == brute force: {a == b} ({len(a)} classes)")

# rank 4 up to seven elements
t = time.perf_counter()
corpus = enumerate_up_to(4, 7)
print("rank 4 by size:", corpus.by_size(), f"{time.perf_counter() - t:.1f}s")

# write and re-read a database
buf = io.StringIO()
write_database(buf, corpus.matroids[:5])
print(buf.getvalue())
again = [parse_revlex(rec) for rec in read_database(io.StringIO(buf.getvalue()))]
print("round trip ok:", again == corpus.matroids[:5])
