"""Brute-force reference computations.

Everything here works on plain frozensets read straight from the
incidence matrix and enumerates all subsets, so it shares no code with
the bitmask derivations or NextClosure.  Exponential; keep |M| small.
"""

from __future__ import annotations

from itertools import chain, combinations

from .context import FormalContext


def _prime_objects(ctx: FormalContext, objects) -> frozenset:
    return frozenset(m for j, m in enumerate(ctx.attributes)
                     if all(ctx.incidence[ctx.objects.index(g), j] for g in objects))


def _prime_attributes(ctx: FormalContext, attributes) -> frozenset:
    return frozenset(g for i, g in enumerate(ctx.objects)
                     if all(ctx.incidence[i, ctx.attributes.index(m)] for m in attributes))


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def concepts(ctx: FormalContext) -> set[tuple[frozenset, frozenset]]:
    """All (extent, intent) pairs, as {(B', B'') | B subset of M}."""
    out = set()
    for subset in powerset(ctx.attributes):
        extent = _prime_attributes(ctx, subset)
        out.add((extent, _prime_objects(ctx, extent)))
    return out


def covering_pairs(pairs) -> set[tuple]:
    """(lower, upper) pairs with no concept strictly between them."""
    pairs = list(pairs)
    out = set()
    for lo in pairs:
        for hi in pairs:
            if lo[0] < hi[0] and not any(lo[0] < mid[0] < hi[0] for mid in pairs):
                out.add((lo, hi))
    return out


def lattice_diff(lat) -> tuple[set, set]:
    """Concepts missing from ``lat`` and concepts ``lat`` has in excess."""
    expected = concepts(lat.context)
    got = {(frozenset(c.extent), frozenset(c.intent)) for c in lat}
    return expected - got, got - expected
