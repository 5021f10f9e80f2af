"""latql: relational-algebra style queries over formal contexts and concept lattices."""

from .algebra import (
    And, Atom, Not, Or, ProjectionResult, RestrictionReport, SelectionResult,
    apposition, embed_subconcept, glue, natural_join, project, restrict_concepts,
    select, subposition, weak_negation, weak_opposition,
)
from .approximation import (
    ApproxResult, PresumedConcept, approx_interval, classify, lower_approx,
    projective_preimage, projective_repr, selective_preimage, selective_repr,
    upper_approx,
)
from .context import (
    ConceptualScale, FormalContext, ManyValuedContext, Relation, derive_context,
    from_relation, scale_attribute,
)
from .errors import LatqlError
from .generalization import (
    AttributeCover, GeneralizationSemantics, compare_lattice_sizes, generalize,
)
from .io import read_burmeister, write_burmeister, write_lattice
from .lattice import Concept, ConceptLattice, ConceptRegion, build_lattice
from .query import Catalog, execute, parse_query, pretty

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "Not", "Or", "ProjectionResult", "RestrictionReport", "SelectionResult",
    "apposition", "embed_subconcept", "glue", "natural_join", "project", "restrict_concepts",
    "select", "subposition", "weak_negation", "weak_opposition",
    "ApproxResult", "PresumedConcept", "approx_interval", "classify", "lower_approx",
    "projective_preimage", "projective_repr", "selective_preimage", "selective_repr",
    "upper_approx",
    "ConceptualScale", "FormalContext", "ManyValuedContext", "Relation", "derive_context",
    "from_relation", "scale_attribute",
    "LatqlError",
    "AttributeCover", "GeneralizationSemantics", "compare_lattice_sizes", "generalize",
    "read_burmeister", "write_burmeister", "write_lattice",
    "Concept", "ConceptLattice", "ConceptRegion", "build_lattice",
    "Catalog", "execute", "parse_query", "pretty",
    "oracle",
]
