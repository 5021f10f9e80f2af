"""Concept lattices: enumeration, order, joins and meets, ideals and filters.

Concepts are enumerated with NextClosure over intents, so concept ids
follow the lectic order of intents (id 0 is the top concept, whose intent
is the closure of the empty set).  The order is materialized as two
reachability bitmasks per concept (``up`` and ``down``, indexed by concept
id), which makes ideal/filter queries single ``|`` / ``&`` operations.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .context import FormalContext, bits, popcount
from .errors import DomainError, InvariantError


@dataclass(frozen=True)
class Concept:
    """A formal concept (extent, intent) of some lattice."""

    index: int
    extent: tuple[str, ...]
    intent: tuple[str, ...]
    extent_mask: int = field(repr=False)
    intent_mask: int = field(repr=False)

    def __str__(self):
        return f"c{self.index}: {{{', '.join(self.extent)}}} | {{{', '.join(self.intent)}}}"


def next_closure(ctx: FormalContext) -> Iterator[int]:
    """Yield every closed attribute set (as a bitmask) in lectic order."""
    n = len(ctx.attributes)
    current = ctx.up(ctx.down(0))
    yield current
    full = ctx.all_attributes
    while current != full:
        for j in range(n - 1, -1, -1):
            bit = 1 << j
            if current & bit:
                continue
            below = bit - 1
            candidate = ctx.up(ctx.down((current & below) | bit))
            if candidate & below == current & below:
                current = candidate
                yield current
                break
        else:  # pragma: no cover - NextClosure always finds a successor
            raise InvariantError("NextClosure stalled before reaching M")


class ConceptLattice:
    """All concepts of a context with their order and covering relation."""

    def __init__(self, context: FormalContext):
        self.context = context
        concepts = []
        for k, intent in enumerate(next_closure(context)):
            extent = context.down(intent)
            concepts.append(Concept(k, context.objects_of(extent),
                                    context.attributes_of(intent), extent, intent))
        self.concepts: tuple[Concept, ...] = tuple(concepts)
        self._by_extent = {c.extent_mask: c.index for c in concepts}
        self._order()
        self.top = self.concept_with_extent(context.all_objects)
        self.bottom = self.concept_with_extent(
            context.down(context.all_attributes))

    def _order(self):
        n = len(self.concepts)
        exts = [c.extent_mask for c in self.concepts]
        up = [0] * n
        down = [0] * n
        for i in range(n):
            ei = exts[i]
            for j in range(n):
                if ei & exts[j] == ei:
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        # a strict upper neighbour of i is a strict upper bound with no other
        # strict upper bound of i strictly below it
        upper = []
        for i in range(n):
            strict = up[i] & ~(1 << i)
            covers = strict
            for j in bits(strict):
                covers &= ~(up[j] & ~(1 << j))
            upper.append(covers)
        lower = [0] * n
        for i in range(n):
            for j in bits(upper[i]):
                lower[j] |= 1 << i
        self._up = tuple(up)
        self._down = tuple(down)
        self._upper = tuple(upper)
        self._lower = tuple(lower)

    # -- container protocol ---------------------------------------------

    def __len__(self):
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    def __getitem__(self, index: int) -> Concept:
        return self.concepts[index]

    def __repr__(self):
        return f"<ConceptLattice {len(self)} concepts of {self.context!r}>"

    def _own(self, c: Concept) -> int:
        if not isinstance(c, Concept):
            raise DomainError(f"expected a Concept, got {type(c).__name__}")
        if not (0 <= c.index < len(self.concepts)) or self.concepts[c.index] != c:
            raise DomainError(f"{c} does not belong to this lattice")
        return c.index

    def concept_with_extent(self, extent_mask: int) -> Concept:
        try:
            return self.concepts[self._by_extent[extent_mask]]
        except KeyError:
            raise DomainError("object set is not an extent of this lattice") from None

    def concept_from_objects(self, objects) -> Concept:
        """The concept generated by an object set, (A'', A')."""
        ctx = self.context
        return self.concept_with_extent(ctx.down(ctx.up(ctx.object_mask(objects))))

    def concept_from_attributes(self, attributes) -> Concept:
        """The concept generated by an attribute set, (B', B'')."""
        ctx = self.context
        return self.concept_with_extent(ctx.down(ctx.attribute_mask(attributes)))

    def find(self, extent=None, intent=None) -> Concept:
        """Look a concept up by its exact extent or intent."""
        ctx = self.context
        if extent is not None:
            c = self.concept_with_extent(ctx.object_mask(extent))
            if intent is not None and c.intent_mask != ctx.attribute_mask(intent):
                raise DomainError("extent and intent do not form a concept")
            return c
        if intent is None:
            raise TypeError("give an extent or an intent")
        mask = ctx.attribute_mask(intent)
        c = self.concept_with_extent(ctx.down(mask))
        if c.intent_mask != mask:
            raise DomainError("attribute set is not an intent of this lattice")
        return c

    # -- order ----------------------------------------------------------

    def leq(self, c: Concept, d: Concept) -> bool:
        """c <= d, i.e. ext(c) is a subset of ext(d)."""
        return bool(self._up[self._own(c)] >> self._own(d) & 1)

    def upper_covers(self, c: Concept) -> tuple[Concept, ...]:
        return self._members(self._upper[self._own(c)])

    def lower_covers(self, c: Concept) -> tuple[Concept, ...]:
        return self._members(self._lower[self._own(c)])

    def covering_pairs(self) -> list[tuple[int, int]]:
        """All (lower, upper) id pairs of the Hasse diagram, sorted."""
        return [(i, j) for i in range(len(self)) for j in bits(self._upper[i])]

    def _members(self, mask: int) -> tuple[Concept, ...]:
        return tuple(self.concepts[k] for k in bits(mask))

    # -- object and attribute concepts ----------------------------------

    def gamma(self, g) -> Concept:
        """The object concept (g'', g')."""
        ctx = self.context
        return self.concept_with_extent(ctx.down(ctx.row(g)))

    def mu(self, m) -> Concept:
        """The attribute concept (m', m'')."""
        return self.concept_with_extent(self.context.column(m))

    # -- lattice operations ---------------------------------------------

    def join(self, c: Concept, d: Concept) -> Concept:
        """((A | C)'', B & D)."""
        self._own(c), self._own(d)
        ctx = self.context
        result = self.concept_with_extent(ctx.down(c.intent_mask & d.intent_mask))
        if result.extent_mask != ctx.down(ctx.up(c.extent_mask | d.extent_mask)):
            raise InvariantError("join formula disagrees with itself")
        return result

    def meet(self, c: Concept, d: Concept) -> Concept:
        """(A & C, (B | D)'')."""
        self._own(c), self._own(d)
        return self.concept_with_extent(c.extent_mask & d.extent_mask)

    def supremum(self, concepts: Iterable[Concept]) -> Concept:
        result = self.bottom
        for c in concepts:
            result = self.join(result, c)
        return result

    def infimum(self, concepts: Iterable[Concept]) -> Concept:
        result = self.top
        for c in concepts:
            result = self.meet(result, c)
        return result

    # -- regions --------------------------------------------------------

    def _ids(self, seeds) -> list[int]:
        if isinstance(seeds, Concept):
            seeds = [seeds]
        return [self._own(c) for c in seeds]

    def order_ideal(self, seeds) -> ConceptRegion:
        """The smallest downward closed set containing ``seeds``."""
        mask = 0
        for k in self._ids(seeds):
            mask |= self._down[k]
        return ConceptRegion(self, mask, "order-ideal")

    def order_filter(self, seeds) -> ConceptRegion:
        """The smallest upward closed set containing ``seeds``."""
        mask = 0
        for k in self._ids(seeds):
            mask |= self._up[k]
        return ConceptRegion(self, mask, "order-filter")

    def lattice_ideal(self, seeds) -> ConceptRegion:
        """Smallest order ideal containing ``seeds`` and closed under joins.

        Computed by alternating pairwise join-closure and downward
        closure until nothing changes.
        """
        mask = self.order_ideal(seeds).mask
        while True:
            members = list(bits(mask))
            grown = mask
            for a, i in enumerate(members):
                for j in members[a + 1:]:
                    grown |= self._down[self._join_id(i, j)]
            if grown == mask:
                return ConceptRegion(self, mask, "lattice-ideal")
            mask = grown

    def _join_id(self, i: int, j: int) -> int:
        ctx = self.context
        common = self.concepts[i].intent_mask & self.concepts[j].intent_mask
        return self._by_extent[ctx.down(common)]

    def interval(self, lo: Concept, hi: Concept) -> ConceptRegion:
        """{x | lo <= x <= hi}; empty when lo is not below hi."""
        mask = self._up[self._own(lo)] & self._down[self._own(hi)]
        return ConceptRegion(self, mask, "interval")

    def region(self, concepts, shape: str = "arbitrary") -> ConceptRegion:
        mask = 0
        for k in self._ids(concepts):
            mask |= 1 << k
        return ConceptRegion(self, mask, shape)

    def is_down_closed(self, mask: int) -> bool:
        return all(self._down[k] & ~mask == 0 for k in bits(mask))

    def is_up_closed(self, mask: int) -> bool:
        return all(self._up[k] & ~mask == 0 for k in bits(mask))


REGION_SHAPES = ("order-ideal", "order-filter", "lattice-ideal", "interval",
                 "arbitrary")


@dataclass(frozen=True)
class ConceptRegion:
    """A set of concepts of one lattice, stored as a bitmask over ids."""

    lattice: ConceptLattice = field(repr=False, compare=False)
    mask: int
    shape: str = "arbitrary"

    def __post_init__(self):
        if self.shape not in REGION_SHAPES:
            raise ValueError(f"unknown region shape {self.shape!r}")

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def concepts(self) -> tuple[Concept, ...]:
        return tuple(self.lattice.concepts[k] for k in bits(self.mask))

    def __len__(self):
        return popcount(self.mask)

    def __iter__(self):
        return iter(self.concepts)

    def __contains__(self, c):
        return isinstance(c, Concept) and bool(self.mask >> c.index & 1) and (
            self.lattice.concepts[c.index] == c)

    def __bool__(self):
        return self.mask != 0

    @property
    def empty(self) -> bool:
        return self.mask == 0

    def __and__(self, other: ConceptRegion) -> ConceptRegion:
        return ConceptRegion(self.lattice, self.mask & other.mask, "arbitrary")

    def __or__(self, other: ConceptRegion) -> ConceptRegion:
        return ConceptRegion(self.lattice, self.mask | other.mask, "arbitrary")


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    """Enumerate all concepts of ``ctx`` and materialize their order."""
    return ConceptLattice(ctx)
