"""
Sub-contexts, restriction and embedding
=======================================

Cutting a context down to some objects and attributes changes which sets
are closed.  This script compares derivations in a 6x6 context with the
derivations in its sub-context, then maps concepts in both directions.
"""

from latql import build_lattice, embed_subconcept, restrict_concepts
from latql.datasets import k6x6

k = k6x6()
H, N = ["2", "3", "5", "6"], ["a", "b", "d", "f"]
sub = k.subcontext(H, N)

U = ["2", "3"]
print("U' in K:          ", k.derive_objects(U))
print("U'' in K:         ", k.closure_objects(U))
print("U' in the sub:    ", sub.derive_objects(U))
print("U'' in the sub:   ", sub.closure_objects(U))

# in K the closure of U picks up 4, which is outside H; in the sub-context
# the smaller attribute set lets 5 in instead
lat, small = build_lattice(k), build_lattice(sub)
print(f"\n|B(K)| = {len(lat)}, |B(sub)| = {len(small)}")

# restricting each concept of K to (H, N): the report says which pieces
# are concepts of the sub-context
report = restrict_concepts(lat, H, N)
print("restriction compatible:", report.compatible)
for e in report.entries[:5]:
    print(f"  {e.parent.extent!s:32} -> {e.extent} | {e.intent}  concept: {e.is_concept}")

# the other way: each sub-context concept sits in an interval of B(K)
u = small.concept_from_objects(U)
lo, hi = embed_subconcept(lat, small, u)
print(f"\nsub-concept {u.extent} | {u.intent}")
print(f"  lowest parent:  {lo.extent} | {lo.intent}")
print(f"  highest parent: {hi.extent} | {hi.intent}")
