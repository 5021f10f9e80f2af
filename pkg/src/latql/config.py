"""Session configuration files (TOML).

Example::

    [contexts.k3x4]
    path = "k3x4.cxt"

    [relations.cars]            # CSV, first column is the key
    path = "cars.csv"

    [relations.cars.scales.price]
    kind = "ordinal"            # nominal | ordinal | cross
    thresholds = [10, 20, 30]

    [covers.merge12]
    groups = { m12 = ["m1", "m2"] }
    alpha = { m12 = 0.5 }       # only read by GENERALIZE(..., alpha)

Paths are relative to the config file.  A ``cross`` scale spells out its
context: ``values``, ``attributes`` and one ``X``/``.`` string per value
in ``rows``.
"""

from __future__ import annotations

import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .context import ConceptualScale, FormalContext, Relation
from .errors import ConfigurationError, FormatError
from .generalization import AttributeCover
from .io import load_context, read_csv_relation
from .query import Catalog


def _number(v):
    """int when the text is integral, else float."""
    if isinstance(v, (int, float)):
        return v
    try:
        return int(v)
    except ValueError:
        return float(v)


def _scale(attribute: str, spec: dict, relation: Relation) -> ConceptualScale:
    kind = spec.get("kind", "nominal")
    observed = [t[attribute] for t in relation.tuples if t[attribute] is not None]
    if kind == "nominal":
        return ConceptualScale.nominal(attribute, spec.get("values", observed))
    if kind == "ordinal":
        try:
            values = sorted({_number(v) for v in observed})
            thresholds = [_number(v) for v in spec.get("thresholds", values)]
        except (TypeError, ValueError):
            raise ConfigurationError(f"ordinal scale on {attribute!r} needs numbers") from None
        return ConceptualScale.ordinal(attribute, values, thresholds)
    if kind == "cross":
        values = [str(v) for v in spec["values"]]
        attributes = list(spec["attributes"])
        rows = spec["rows"]
        if len(rows) != len(values) or any(len(r) != len(attributes) for r in rows):
            raise ConfigurationError(f"cross scale on {attribute!r} has a malformed table")
        table = [[ch == "X" for ch in r] for r in rows]
        return ConceptualScale(attribute, FormalContext(values, attributes, table))
    raise ConfigurationError(f"unknown scale kind {kind!r} for {attribute!r}")


def _numeric_cells(relation: Relation, scales: dict) -> Relation:
    """Cast the cells of ordinal-scaled attributes to numbers."""
    numeric = [a for a, s in scales.items() if s.attribute == a and s.values and
               all(isinstance(v, (int, float)) for v in s.values)]
    if not numeric:
        return relation
    rows = []
    for t in relation.tuples:
        t = dict(t)
        for a in numeric:
            if t[a] is not None:
                t[a] = _number(t[a])
        rows.append(t)
    return Relation(relation.scheme, rows, key=relation.key, name=relation.name)


def load_catalog(path) -> Catalog:
    path = Path(path)
    try:
        doc = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(str(exc), source=str(path)) from None
    base = path.parent
    cat = Catalog()
    for name, spec in doc.get("contexts", {}).items():
        if "path" not in spec:
            raise ConfigurationError(f"context {name!r} has no path")
        cat.add_context(name, load_context(base / spec["path"], spec.get("format")))
    for name, spec in doc.get("relations", {}).items():
        if "path" not in spec:
            raise ConfigurationError(f"relation {name!r} has no path")
        source = base / spec["path"]
        r = read_csv_relation(source.read_text(encoding="utf-8"), source=str(source))
        unknown = set(spec.get("scales", {})) - set(r.scheme)
        if unknown:
            raise ConfigurationError(f"scales for unknown columns {sorted(unknown)}")
        scales = {a: _scale(a, s, r) for a, s in spec.get("scales", {}).items()}
        cat.add_relation(name, _numeric_cells(r, scales), scales)
    for name, spec in doc.get("covers", {}).items():
        cat.add_cover(name, AttributeCover(spec.get("groups", {})), spec.get("alpha"))
    return cat
