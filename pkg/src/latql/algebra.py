"""Relational-algebra style operators on contexts and concept lattices.

Selection and projection act on a built lattice; apposition, subposition
and glue combine contexts; natural join combines keyed relations; and
:func:`restrict_concepts` / :func:`embed_subconcept` relate a lattice to
the lattice of one of its sub-contexts.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .context import FormalContext, Relation
from .errors import AlignmentError, ConflictError, DomainError, InvariantError
from .lattice import Concept, ConceptLattice, ConceptRegion, build_lattice

# ---------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class Atom:
    """``attribute`` (binary context) or ``attribute=value`` (scaled)."""

    attribute: str
    value: str | None = None

    @property
    def scaled_name(self) -> str:
        if self.value is None:
            return self.attribute
        return f"{self.attribute}={self.value}"


@dataclass(frozen=True)
class Not:
    atom: Atom

    def __post_init__(self):
        if not isinstance(self.atom, Atom):
            raise DomainError("negation applies to atoms only")


@dataclass(frozen=True)
class And:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) < 2:
            raise DomainError("a conjunction needs at least two terms")


@dataclass(frozen=True)
class Or:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) < 2:
            raise DomainError("a disjunction needs at least two terms")


Condition = Atom | Not | And | Or


def atoms(cond) -> list[Atom]:
    """Every atom of ``cond``, left to right."""
    if isinstance(cond, Atom):
        return [cond]
    if isinstance(cond, Not):
        return [cond.atom]
    return [a for t in cond.terms for a in atoms(t)]


def resolve_atom(ctx: FormalContext, atom: Atom) -> int:
    """Column index of the (scaled) attribute an atom refers to."""
    try:
        return ctx.attributes.index(atom.scaled_name)
    except ValueError:
        raise DomainError(f"unknown attribute {atom.scaled_name!r} in condition") from None


def holds(lat: ConceptLattice, cond, c: Concept) -> bool:
    """Definition-level truth of ``cond`` on a concept.

    An atom holds when its attribute is in the intent; a negated atom holds
    when no object of the extent has the attribute.
    """
    ctx = lat.context
    if isinstance(cond, Atom):
        return bool(c.intent_mask >> resolve_atom(ctx, cond) & 1)
    if isinstance(cond, Not):
        column = ctx.column(resolve_atom(ctx, cond.atom))
        return c.extent_mask & column == 0
    if isinstance(cond, And):
        return all(holds(lat, t, c) for t in cond.terms)
    if isinstance(cond, Or):
        return any(holds(lat, t, c) for t in cond.terms)
    raise DomainError(f"not a condition: {cond!r}")


@dataclass(frozen=True)
class SelectionResult:
    """Concepts selected by a condition.

    ``shape`` is ``"order-ideal"`` or ``"sub-hierarchy"``.  For conditions
    with negated atoms, ``negation_closed`` records whether every
    complement G minus a' was a closed object set.
    """

    region: ConceptRegion
    shape: str
    negation_closed: bool | None = None

    @property
    def concepts(self) -> tuple[Concept, ...]:
        return self.region.concepts

    @property
    def ids(self) -> tuple[int, ...]:
        return self.region.ids

    def __len__(self):
        return len(self.region)

    def __iter__(self):
        return iter(self.region)

    def __contains__(self, c):
        return c in self.region


def select(lat: ConceptLattice, cond) -> SelectionResult:
    """Select the concepts satisfying ``cond``.

    A pure conjunction of atoms gives the principal ideal below the meet of
    the attribute concepts, a pure disjunction the union of their principal
    ideals.  A negated atom keeps the concepts whose extent avoids a'; the
    result is flagged an order ideal only when G minus a' is closed.
    Anything else is evaluated term by term on each concept.
    """
    ctx = lat.context
    for a in atoms(cond):
        resolve_atom(ctx, a)
    if isinstance(cond, Atom):
        region = lat.order_ideal(lat.mu(resolve_atom(ctx, cond)))
        return SelectionResult(region, "order-ideal")
    if isinstance(cond, And) and all(isinstance(t, Atom) for t in cond.terms):
        meet = lat.infimum(lat.mu(resolve_atom(ctx, t)) for t in cond.terms)
        return SelectionResult(lat.order_ideal(meet), "order-ideal")
    if isinstance(cond, Or) and all(isinstance(t, Atom) for t in cond.terms):
        region = lat.order_ideal([lat.mu(resolve_atom(ctx, t)) for t in cond.terms])
        return SelectionResult(region, "order-ideal")

    mask = 0
    for c in lat:
        if holds(lat, cond, c):
            mask |= 1 << c.index
    negated = list(_negations(cond))
    closed = None
    if negated:
        closed = True
        for atom in negated:
            rest = ctx.all_objects & ~ctx.column(resolve_atom(ctx, atom))
            closed &= ctx.down(ctx.up(rest)) == rest
    if isinstance(cond, Not):
        shape = "order-ideal" if closed else "sub-hierarchy"
    else:
        shape = "order-ideal" if lat.is_down_closed(mask) else "sub-hierarchy"
    return SelectionResult(ConceptRegion(lat, mask, "arbitrary"), shape, closed)


def _negations(cond):
    if isinstance(cond, Not):
        yield cond.atom
    elif isinstance(cond, (And, Or)):
        for t in cond.terms:
            yield from _negations(t)


def weak_negation(lat: ConceptLattice, c: Concept) -> Concept:
    """((G minus A)'', (G minus A)')."""
    lat._own(c)
    ctx = lat.context
    rest = ctx.all_objects & ~c.extent_mask
    return lat.concept_with_extent(ctx.down(ctx.up(rest)))


def weak_opposition(lat: ConceptLattice, c: Concept) -> Concept:
    """((M minus B)', (M minus B)'')."""
    lat._own(c)
    ctx = lat.context
    rest = ctx.all_attributes & ~c.intent_mask
    return lat.concept_with_extent(ctx.down(rest))


# ---------------------------------------------------------------------------
# projection


@dataclass(frozen=True)
class ProjectionResult:
    """Lattice of (G, Y, I restricted to G x Y) plus the parent mapping.

    ``representative[i]`` is the id (in the parent lattice) of the
    greatest concept Y-equivalent to parent concept ``i``; ``image[i]`` is
    the id of the projected concept that parent concept ``i`` maps to.
    """

    parent: ConceptLattice = field(repr=False)
    attributes: tuple[str, ...]
    lattice: ConceptLattice = field(repr=False)
    representative: Mapping[int, int]
    image: Mapping[int, int]

    @property
    def classes(self) -> dict[int, tuple[int, ...]]:
        """Y-equivalence classes keyed by their representative's id."""
        out: dict[int, list[int]] = {}
        for i, r in sorted(self.representative.items()):
            out.setdefault(r, []).append(i)
        return {r: tuple(v) for r, v in sorted(out.items())}

    def __len__(self):
        return len(self.lattice)


def project(lat: ConceptLattice, attributes) -> ProjectionResult:
    """Project the lattice on the attribute set Y."""
    ctx = lat.context
    ymask = ctx.attribute_mask(attributes)
    y_names = ctx.attributes_of(ymask)
    sub = build_lattice(ctx.subcontext(None, y_names))
    representative, image = {}, {}
    for c in lat:
        kept = c.intent_mask & ymask
        rep = lat.concept_with_extent(ctx.down(kept))
        if rep.intent_mask & ymask != kept:
            raise InvariantError("class representative leaves its Y-class")
        representative[c.index] = rep.index
        image[c.index] = sub.find(intent=ctx.attributes_of(kept)).index
    return ProjectionResult(lat, y_names, sub, representative, image)


# ---------------------------------------------------------------------------
# combining contexts


def _tag_collisions(first, second):
    shared = set(first) & set(second)
    a = [f"{x}#1" if x in shared else x for x in first]
    b = [f"{x}#2" if x in shared else x for x in second]
    return a, b


def apposition(k1: FormalContext, k2: FormalContext) -> FormalContext:
    """K1 | K2: same objects, attributes side by side."""
    if k1.objects != k2.objects:
        raise AlignmentError("apposition needs identical object lists")
    m1, m2 = _tag_collisions(k1.attributes, k2.attributes)
    return FormalContext(k1.objects, m1 + m2, np.hstack([k1.incidence, k2.incidence]))


def subposition(k1: FormalContext, k2: FormalContext) -> FormalContext:
    """K1 over K2: same attributes, objects stacked."""
    if k1.attributes != k2.attributes:
        raise AlignmentError("subposition needs identical attribute lists")
    g1, g2 = _tag_collisions(k1.objects, k2.objects)
    return FormalContext(g1 + g2, k1.attributes, np.vstack([k1.incidence, k2.incidence]))


def glue(k1: FormalContext, k2: FormalContext) -> FormalContext:
    """Union of two contexts that agree on their shared rectangle.

    Cells outside both inputs are false.
    """
    shared_m = [m for m in k1.attributes if m in set(k2.attributes)]
    g2 = set(k2.objects)
    for g in k1.objects:
        if g not in g2:
            continue
        for m in shared_m:
            if k1.has(g, m) != k2.has(g, m):
                raise ConflictError(g, m)
    objects = list(k1.objects) + [g for g in k2.objects if g not in set(k1.objects)]
    attributes = list(k1.attributes) + [m for m in k2.attributes
                                        if m not in set(k1.attributes)]
    table = np.zeros((len(objects), len(attributes)), dtype=bool)
    for k in (k1, k2):
        rows = [objects.index(g) for g in k.objects]
        cols = [attributes.index(m) for m in k.attributes]
        table[np.ix_(rows, cols)] |= k.incidence
    return FormalContext(objects, attributes, table)


def natural_join(r: Relation, s: Relation) -> Relation:
    """All concatenations t1|t2 of tuples agreeing on the shared attributes.

    The result keeps ``r``'s key when its values stay unique, otherwise it
    has no key.
    """
    common = [a for a in r.scheme if a in s.scheme]
    scheme = list(r.scheme) + [a for a in s.scheme if a not in r.scheme]
    index: dict[tuple, list] = {}
    for t2 in s.tuples:
        index.setdefault(tuple(t2[a] for a in common), []).append(t2)
    out = []
    for t1 in r.tuples:
        for t2 in index.get(tuple(t1[a] for a in common), ()):
            out.append({a: (t1[a] if a in t1 else t2[a]) for a in scheme})
    key = r.key
    if key is not None and len({t[key] for t in out}) != len(out):
        key = None
    return Relation(scheme, out, key=key)


# ---------------------------------------------------------------------------
# sub-contexts


@dataclass(frozen=True)
class Restriction:
    """One parent concept (A, B) and its restriction (A & H, B & N)."""

    parent: Concept
    extent: tuple[str, ...]
    intent: tuple[str, ...]
    is_concept: bool


@dataclass(frozen=True)
class RestrictionReport:
    """Outcome of restricting every concept of a lattice to (H, N).

    ``compatible`` is true when every restriction is a concept of the
    sub-context.  Only then are ``mapping`` (parent id to sub-lattice id),
    ``surjective`` and ``homomorphism`` filled in.
    """

    parent: ConceptLattice = field(repr=False)
    sublattice: ConceptLattice = field(repr=False)
    entries: tuple[Restriction, ...]
    compatible: bool
    mapping: Mapping[int, int] | None = None
    surjective: bool | None = None
    homomorphism: bool | None = None


def restrict_concepts(lat: ConceptLattice, objects, attributes) -> RestrictionReport:
    ctx = lat.context
    hmask = ctx.object_mask(objects)
    nmask = ctx.attribute_mask(attributes)
    subctx = ctx.subcontext(ctx.objects_of(hmask), ctx.attributes_of(nmask))
    sub = build_lattice(subctx)
    known = {(c.extent, c.intent): c.index for c in sub}
    entries, mapping = [], {}
    for c in lat:
        ext = ctx.objects_of(c.extent_mask & hmask)
        itt = ctx.attributes_of(c.intent_mask & nmask)
        hit = known.get((ext, itt))
        entries.append(Restriction(c, ext, itt, hit is not None))
        if hit is not None:
            mapping[c.index] = hit
    compatible = all(e.is_concept for e in entries)
    if not compatible:
        return RestrictionReport(lat, sub, tuple(entries), False)
    surjective = set(mapping.values()) == set(range(len(sub)))
    homomorphism = all(
        mapping[lat.join(c, d).index] == sub.join(sub[mapping[c.index]],
                                                  sub[mapping[d.index]]).index
        and mapping[lat.meet(c, d).index] == sub.meet(sub[mapping[c.index]],
                                                      sub[mapping[d.index]]).index
        for c in lat for d in lat)
    return RestrictionReport(lat, sub, tuple(entries), True, mapping,
                             surjective, homomorphism)


def embed_subconcept(parent: ConceptLattice, sub: ConceptLattice,
                     u: Concept) -> tuple[Concept, Concept]:
    """(U'', U') and (V', V''), derived in the parent context."""
    sub._own(u)
    ctx, sctx = parent.context, sub.context
    try:
        ctx.object_mask(sctx.objects)
        ctx.attribute_mask(sctx.attributes)
    except DomainError:
        raise DomainError("lattice is not built on a sub-context of the parent") from None
    if not _agrees(ctx, sctx):
        raise DomainError("lattice is not built on a sub-context of the parent")
    umask = ctx.object_mask(u.extent)
    vmask = ctx.attribute_mask(u.intent)
    phi1 = parent.concept_with_extent(ctx.down(ctx.up(umask)))
    phi2 = parent.concept_with_extent(ctx.down(vmask))
    return phi1, phi2


def _agrees(ctx: FormalContext, sctx: FormalContext) -> bool:
    return all(ctx.has(g, m) == sctx.has(g, m)
               for g in sctx.objects for m in sctx.attributes)


def interval_members_restrict_to(parent: ConceptLattice, u: Concept,
                                 phi1: Concept, phi2: Concept,
                                 objects, attributes) -> bool:
    """Check that every concept in [phi1, phi2] restricts to ``u``."""
    ctx = parent.context
    hmask = ctx.object_mask(objects)
    nmask = ctx.attribute_mask(attributes)
    return all(ctx.objects_of(c.extent_mask & hmask) == u.extent
               and ctx.attributes_of(c.intent_mask & nmask) == u.intent
               for c in parent.interval(phi1, phi2))


__all__ = [
    "And", "Atom", "Condition", "Not", "Or", "ProjectionResult", "Restriction",
    "RestrictionReport", "SelectionResult", "apposition", "atoms", "embed_subconcept",
    "glue", "holds", "interval_members_restrict_to", "natural_join", "project",
    "restrict_concepts", "select", "subposition", "weak_negation", "weak_opposition",
]
