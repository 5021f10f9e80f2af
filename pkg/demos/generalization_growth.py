"""
Generalizing attributes can grow a lattice
==========================================

Merging two attributes into one coarser attribute usually shrinks a
lattice, but not always.  This script shows a 3x4 context where it grows
from 7 to 8 concepts, and compares the three incidence semantics.
"""

from fractions import Fraction

from latql import (
    AttributeCover, GeneralizationSemantics, build_lattice, compare_lattice_sizes,
    generalize,
)
from latql.datasets import STAR_ALLIANCE_COVER, k3x4, star_alliance


def show(ctx):
    width = max(len(g) for g in ctx.objects)
    print(" " * width, " ".join(ctx.attributes))
    for g, row in zip(ctx.objects, ctx.incidence):
        cells = " ".join("X".center(len(m)) if v else ".".center(len(m))
                         for m, v in zip(ctx.attributes, row))
        print(g.ljust(width), cells)


k = k3x4()
show(k)

# merge m1 and m2: an object gets m12 when it has either of them
cover = AttributeCover({"m12": ("m1", "m2")})
k_gen = generalize(k, cover, "exists")
print()
show(k_gen)
print("\nlattice sizes (before, after, delta):", tuple(compare_lattice_sizes(k, cover)))

# g2 and g3 now share m12, which creates a concept ({g2, g3}, {m12})
print("new concept:", build_lattice(k_gen).concept_from_attributes(["m12"]).extent)

# the three semantics nest: forall <= alpha <= exists
cover = AttributeCover({"s34": ("m3", "m4")})
for sem in ("forall", GeneralizationSemantics("alpha", Fraction(1, 2)), "exists"):
    g = generalize(k, cover, sem)
    name = sem if isinstance(sem, str) else f"alpha >= {sem.thresholds}"
    print(f"{name:>12}: s34 held by {[o for o in g.objects if g.has(o, 's34')]}")

# the same operation on the airline table: regions to continents
sa = star_alliance()
cont = generalize(sa, AttributeCover(STAR_ALLIANCE_COVER), "exists")
print(f"\nStar Alliance: {len(sa.attributes)} regions -> {len(cont.attributes)} columns,",
      f"{len(build_lattice(sa))} -> {len(build_lattice(cont))} concepts")
