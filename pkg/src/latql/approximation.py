"""Approximating a user-supplied (objects, attributes) pair by concepts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .lattice import Concept, ConceptLattice, ConceptRegion

FORMAL_CONCEPT = "formal-concept"
PRECONCEPT = "preconcept"
DEGENERATED = "degenerated"


@dataclass(frozen=True)
class PresumedConcept:
    """A presumed concept (X, Y); members are names of the reference context."""

    extent: tuple[str, ...]
    intent: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "extent", tuple(self.extent))
        object.__setattr__(self, "intent", tuple(self.intent))

    def masks(self, lat: ConceptLattice) -> tuple[int, int]:
        ctx = lat.context
        try:
            return ctx.object_mask(self.extent), ctx.attribute_mask(self.intent)
        except DomainError as exc:
            raise DomainError(f"presumed concept outside the context: {exc}") from None


@dataclass(frozen=True)
class ApproxResult:
    presumed: PresumedConcept
    kind: str
    lower: Concept
    upper: Concept
    interval: ConceptRegion = field(repr=False)

    @property
    def degenerated(self) -> bool:
        return self.kind == DEGENERATED


def _coerce(c) -> PresumedConcept:
    if isinstance(c, PresumedConcept):
        return c
    extent, intent = c
    return PresumedConcept(extent, intent)


def classify(lat: ConceptLattice, c) -> str:
    """``formal-concept``, ``preconcept`` (X x Y inside I) or ``degenerated``."""
    c = _coerce(c)
    x, y = c.masks(lat)
    ctx = lat.context
    if ctx.up(x) == y and ctx.down(y) == x:
        return FORMAL_CONCEPT
    if y & ~ctx.up(x) == 0:
        return PRECONCEPT
    return DEGENERATED


def lower_approx(lat: ConceptLattice, c) -> Concept:
    """L(c) = (X'', X'), the smallest concept whose extent contains X."""
    x, _ = _coerce(c).masks(lat)
    ctx = lat.context
    return lat.concept_with_extent(ctx.down(ctx.up(x)))


def upper_approx(lat: ConceptLattice, c) -> Concept:
    """H(c) = (Y', Y''), the largest concept whose intent contains Y."""
    _, y = _coerce(c).masks(lat)
    return lat.concept_with_extent(lat.context.down(y))


def approx_interval(lat: ConceptLattice, c) -> ApproxResult:
    c = _coerce(c)
    kind = classify(lat, c)
    lower, upper = lower_approx(lat, c), upper_approx(lat, c)
    return ApproxResult(c, kind, lower, upper, lat.interval(lower, upper))


def projective_repr(lat: ConceptLattice, c, target: Concept):
    """(f2(B & Y), B & Y) for target (A, B), as name tuples."""
    _, y = _coerce(c).masks(lat)
    lat._own(target)
    ctx = lat.context
    kept = target.intent_mask & y
    return ctx.objects_of(ctx.down(kept)), ctx.attributes_of(kept)


def selective_repr(lat: ConceptLattice, c, target: Concept):
    """(A & X, f1(A & X)) for target (A, B), as name tuples."""
    x, _ = _coerce(c).masks(lat)
    lat._own(target)
    ctx = lat.context
    kept = target.extent_mask & x
    return ctx.objects_of(kept), ctx.attributes_of(ctx.up(kept))


def projective_preimage(lat: ConceptLattice, c) -> ConceptRegion:
    """Concepts whose intent contains Y: the principal ideal of H(c)."""
    return lat.order_ideal(upper_approx(lat, c))


def selective_preimage(lat: ConceptLattice, c) -> ConceptRegion:
    """Concepts whose extent contains X: the principal filter of L(c)."""
    return lat.order_filter(lower_approx(lat, c))
