"""Formal contexts, derivation operators and conceptual scaling.

A :class:`FormalContext` keeps its incidence as a dense boolean numpy
matrix and caches every row and column as a Python ``int`` bitmask, so
that both derivation operators reduce to chains of ``&``.  Object sets
and attribute sets are passed around internally as such bitmasks (bit
``i`` = the ``i``-th object or attribute in file order); the public
methods accept any iterable of names or indices and report results as
tuples in the context's canonical order.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import (
    ConfigurationError,
    DomainError,
    IntegrityError,
    ScaleCoverageError,
)


def bits(mask: int) -> Iterable[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _check_unique(names, kind):
    seen = set()
    for name in names:
        if name in seen:
            raise IntegrityError(f"duplicate {kind} name {name!r}")
        seen.add(name)


class FormalContext:
    """A binary context (G, M, I) with named, ordered objects and attributes.

    Parameters
    ----------
    objects, attributes : sequence of str
        Pairwise distinct names, kept in the given order.
    incidence : array_like of bool, shape (len(objects), len(attributes))
        ``incidence[i, j]`` is true iff object ``i`` has attribute ``j``.
    name : str, optional
        Free-form label (the Burmeister header carries one).
    """

    def __init__(self, objects, attributes, incidence=None, name: str = ""):
        self.objects = tuple(str(g) for g in objects)
        self.attributes = tuple(str(m) for m in attributes)
        _check_unique(self.objects, "object")
        _check_unique(self.attributes, "attribute")
        shape = (len(self.objects), len(self.attributes))
        if incidence is None:
            incidence = np.zeros(shape, dtype=bool)
        table = np.array(incidence, dtype=bool)
        if table.size == 0:
            table = table.reshape(shape)
        if table.shape != shape:
            raise IntegrityError(
                f"incidence has shape {table.shape}, expected {shape}")
        table.setflags(write=False)
        self.incidence = table
        self.name = name
        self._obj_index = {g: i for i, g in enumerate(self.objects)}
        self._attr_index = {m: j for j, m in enumerate(self.attributes)}
        self._rows = tuple(_pack(row) for row in table)
        self._cols = tuple(_pack(col) for col in table.T)
        self.all_objects = (1 << len(self.objects)) - 1
        self.all_attributes = (1 << len(self.attributes)) - 1

    @classmethod
    def from_rows(cls, objects, attributes, rows: Mapping[str, Iterable[str]],
                  name: str = "") -> FormalContext:
        """Build a context from ``{object: attributes it has}``."""
        objects, attributes = list(objects), list(attributes)
        col = {m: j for j, m in enumerate(attributes)}
        table = np.zeros((len(objects), len(attributes)), dtype=bool)
        for i, g in enumerate(objects):
            for m in rows.get(g, ()):
                if m not in col:
                    raise DomainError(f"unknown attribute {m!r} in row {g!r}")
                table[i, col[m]] = True
        return cls(objects, attributes, table, name=name)

    # -- basic protocol -------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.incidence.shape

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.objects == other.objects
                and self.attributes == other.attributes
                and np.array_equal(self.incidence, other.incidence))

    def __hash__(self):
        return hash((self.objects, self.attributes, self._rows))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"<FormalContext{label} {len(self.objects)} objects x "
                f"{len(self.attributes)} attributes>")

    def has(self, g, m) -> bool:
        """True iff object ``g`` has attribute ``m``."""
        return bool(self._rows[self._object_pos(g)] >> self._attribute_pos(m) & 1)

    # -- set encoding ---------------------------------------------------

    def _object_pos(self, g) -> int:
        return _position(g, self._obj_index, len(self.objects), "object")

    def _attribute_pos(self, m) -> int:
        return _position(m, self._attr_index, len(self.attributes), "attribute")

    def object_mask(self, objects) -> int:
        """Encode object names (or indices) as a bitmask."""
        if isinstance(objects, int) and not isinstance(objects, bool):
            raise TypeError("pass an iterable of objects, not an int")
        mask = 0
        for g in objects:
            mask |= 1 << self._object_pos(g)
        return mask

    def attribute_mask(self, attributes) -> int:
        """Encode attribute names (or indices) as a bitmask."""
        if isinstance(attributes, int) and not isinstance(attributes, bool):
            raise TypeError("pass an iterable of attributes, not an int")
        mask = 0
        for m in attributes:
            mask |= 1 << self._attribute_pos(m)
        return mask

    def objects_of(self, mask: int) -> tuple[str, ...]:
        if mask >> len(self.objects):
            raise DomainError("object bitmask out of range")
        return tuple(self.objects[i] for i in bits(mask))

    def attributes_of(self, mask: int) -> tuple[str, ...]:
        if mask >> len(self.attributes):
            raise DomainError("attribute bitmask out of range")
        return tuple(self.attributes[j] for j in bits(mask))

    # -- derivations on bitmasks ----------------------------------------

    def up(self, objmask: int) -> int:
        """Attributes shared by every object in ``objmask``."""
        result = self.all_attributes
        for i in bits(objmask):
            result &= self._rows[i]
            if not result:
                break
        return result

    def down(self, attrmask: int) -> int:
        """Objects having every attribute in ``attrmask``."""
        result = self.all_objects
        for j in bits(attrmask):
            result &= self._cols[j]
            if not result:
                break
        return result

    def row(self, g) -> int:
        return self._rows[self._object_pos(g)]

    def column(self, m) -> int:
        return self._cols[self._attribute_pos(m)]

    # -- derivations on names -------------------------------------------

    def derive_objects(self, objects) -> tuple[str, ...]:
        """The attributes common to all given objects (A')."""
        return self.attributes_of(self.up(self.object_mask(objects)))

    def derive_attributes(self, attributes) -> tuple[str, ...]:
        """The objects having all given attributes (B')."""
        return self.objects_of(self.down(self.attribute_mask(attributes)))

    def closure_objects(self, objects) -> tuple[str, ...]:
        return self.objects_of(self.down(self.up(self.object_mask(objects))))

    def closure_attributes(self, attributes) -> tuple[str, ...]:
        return self.attributes_of(
            self.up(self.down(self.attribute_mask(attributes))))

    # -- structural operations ------------------------------------------

    def subcontext(self, objects=None, attributes=None) -> FormalContext:
        """Restrict to (H, N), keeping the parent's order.

        ``None`` keeps every object (resp. attribute).
        """
        hmask = self.all_objects if objects is None else self.object_mask(objects)
        nmask = (self.all_attributes if attributes is None
                 else self.attribute_mask(attributes))
        rows = list(bits(hmask))
        cols = list(bits(nmask))
        table = self.incidence[np.ix_(rows, cols)]
        return FormalContext([self.objects[i] for i in rows],
                             [self.attributes[j] for j in cols], table,
                             name=self.name)

    def transpose(self) -> FormalContext:
        return FormalContext(self.attributes, self.objects, self.incidence.T,
                             name=self.name)

    def rename(self, objects: Mapping[str, str] | None = None,
               attributes: Mapping[str, str] | None = None) -> FormalContext:
        objects = objects or {}
        attributes = attributes or {}
        return FormalContext([objects.get(g, g) for g in self.objects],
                             [attributes.get(m, m) for m in self.attributes],
                             self.incidence, name=self.name)


def _pack(vector) -> int:
    mask = 0
    for k in np.flatnonzero(vector):
        mask |= 1 << int(k)
    return mask


def _position(item, index, size, kind) -> int:
    if isinstance(item, (int, np.integer)) and not isinstance(item, bool):
        if 0 <= item < size:
            return int(item)
        raise DomainError(f"{kind} index {item} out of range 0..{size - 1}")
    try:
        return index[item]
    except (KeyError, TypeError):
        raise DomainError(f"unknown {kind} {item!r}") from None


# ---------------------------------------------------------------------------
# many-valued data


class ManyValuedContext:
    """Tabular data (G, M, W, I) with at most one value per cell.

    ``cells`` maps ``(object, attribute)`` to a value; a missing key means
    the attribute is undefined for that object.
    """

    def __init__(self, objects, attributes, cells: Mapping[tuple[str, str], Any]):
        self.objects = tuple(objects)
        self.attributes = tuple(attributes)
        _check_unique(self.objects, "object")
        _check_unique(self.attributes, "attribute")
        known_g, known_m = set(self.objects), set(self.attributes)
        for g, m in cells:
            if g not in known_g:
                raise DomainError(f"cell for unknown object {g!r}")
            if m not in known_m:
                raise DomainError(f"cell for unknown attribute {m!r}")
        self.cells = dict(cells)

    def value(self, g, m, default=None):
        return self.cells.get((g, m), default)

    def values(self, m=None) -> list:
        """Occurring values (of attribute ``m``, or of all), first-seen order."""
        seen = {}
        for g in self.objects:
            for a in self.attributes if m is None else (m,):
                if (g, a) in self.cells:
                    seen.setdefault(self.cells[g, a], None)
        return list(seen)

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return (f"<ManyValuedContext {len(self.objects)} objects x "
                f"{len(self.attributes)} attributes, {len(self.cells)} cells>")


@dataclass(frozen=True)
class ConceptualScale:
    """A scale S_m = (G_m, M_m, I_m) for the many-valued attribute ``attribute``.

    The scale's objects are attribute values; values are matched by
    equality, and by their string form when they are not found directly
    (so that ``2`` read from a CSV file as ``"2"`` still hits).
    """

    attribute: str
    context: FormalContext
    values: tuple = field(default=())

    def __post_init__(self):
        if not self.values:
            object.__setattr__(self, "values", self.context.objects)
        if len(self.values) != len(self.context.objects):
            raise ConfigurationError("scale values and scale objects differ in length")

    @classmethod
    def nominal(cls, attribute: str, values, template: str = "{attribute}={value}"):
        """Scale where each value is its own scaled attribute."""
        values = list(dict.fromkeys(values))
        names = [template.format(attribute=attribute, value=v) for v in values]
        table = np.eye(len(values), dtype=bool)
        return cls(attribute, FormalContext([str(v) for v in values], names, table),
                   tuple(values))

    @classmethod
    def from_relation(cls, attribute: str, values, scaled, relates: Callable,
                      template: str = "{attribute}{scaled}"):
        """Scale with I_m given by a predicate ``relates(value, scaled)``."""
        values, scaled = list(values), list(scaled)
        table = np.array([[bool(relates(v, s)) for s in scaled] for v in values],
                         dtype=bool).reshape(len(values), len(scaled))
        names = [template.format(attribute=attribute, scaled=s) for s in scaled]
        return cls(attribute, FormalContext([str(v) for v in values], names, table),
                   tuple(values))

    @classmethod
    def ordinal(cls, attribute: str, values, thresholds=None):
        """``value <= threshold`` scale; thresholds default to the values."""
        values = sorted(set(values))
        thresholds = values if thresholds is None else list(thresholds)
        return cls.from_relation(attribute, values, thresholds,
                                 lambda v, s: v <= s, template="{attribute}<={scaled}")

    def row_of(self, value) -> int | None:
        """Index of ``value`` among the scale objects, or None."""
        for i, v in enumerate(self.values):
            if v == value:
                return i
        text = str(value)
        for i, v in enumerate(self.values):
            if str(v) == text:
                return i
        return None


def scale_attribute(mv: ManyValuedContext, attribute: str,
                    scale: ConceptualScale) -> FormalContext:
    """Binarize one attribute: g has s iff m(g) relates to s in the scale."""
    if scale.attribute != attribute:
        raise ConfigurationError(
            f"scale is for {scale.attribute!r}, not {attribute!r}")
    if attribute not in mv.attributes:
        raise DomainError(f"unknown attribute {attribute!r}")
    sc = scale.context
    table = np.zeros((len(mv.objects), len(sc.attributes)), dtype=bool)
    for i, g in enumerate(mv.objects):
        if (g, attribute) not in mv.cells:
            continue
        value = mv.cells[g, attribute]
        k = scale.row_of(value)
        if k is None:
            raise ScaleCoverageError(
                f"value {value!r} of {attribute!r} (object {g!r}) "
                f"is not an object of its scale")
        table[i] = sc.incidence[k]
    return FormalContext(mv.objects, sc.attributes, table)


def derive_context(mv: ManyValuedContext,
                   scales: Mapping[str, ConceptualScale] | None = None,
                   default_nominal: bool = True) -> FormalContext:
    """The derived context K^S: scale every attribute and put them side by side.

    Attributes without a scale get a nominal one unless ``default_nominal``
    is false, in which case a missing scale is an error.  A scaled
    attribute name used by more than one scale is prefixed ``"attr:"``.
    """
    scales = dict(scales or {})
    unknown = set(scales) - set(mv.attributes)
    if unknown:
        raise ConfigurationError(f"scales given for unknown attributes {sorted(unknown)}")
    parts = []
    for m in mv.attributes:
        if m not in scales:
            if not default_nominal:
                raise ConfigurationError(f"no scale for attribute {m!r}")
            scales[m] = ConceptualScale.nominal(m, mv.values(m))
        parts.append((m, scale_attribute(mv, m, scales[m])))
    counts: dict[str, int] = {}
    for _, part in parts:
        for s in part.attributes:
            counts[s] = counts.get(s, 0) + 1
    names, blocks = [], []
    for m, part in parts:
        names.extend(s if counts[s] == 1 else f"{m}:{s}" for s in part.attributes)
        blocks.append(part.incidence)
    table = (np.hstack(blocks) if blocks
             else np.zeros((len(mv.objects), 0), dtype=bool))
    return FormalContext(mv.objects, names, table)


# ---------------------------------------------------------------------------
# relations


class Relation:
    """A finite relation over ``scheme`` with key attribute ``key``.

    ``key`` may be None for derived relations (a Cartesian product, say)
    whose tuples are not identified by any single attribute.
    """

    def __init__(self, scheme, tuples: Iterable[Mapping[str, Any]],
                 key: str | None = None, name: str = ""):
        self.scheme = tuple(scheme)
        _check_unique(self.scheme, "scheme attribute")
        if key is not None and key not in self.scheme:
            raise IntegrityError(f"key {key!r} is not in the scheme")
        self.key = key
        self.name = name
        rows = []
        for t in tuples:
            if set(t) != set(self.scheme):
                raise IntegrityError(f"tuple {dict(t)!r} does not match scheme "
                                     f"{list(self.scheme)}")
            rows.append({a: t[a] for a in self.scheme})
        if key is not None:
            seen = set()
            for t in rows:
                if t[key] in seen:
                    raise IntegrityError(f"duplicate key value {t[key]!r}")
                seen.add(t[key])
        self.tuples = tuple(rows)

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __repr__(self):
        return f"<Relation {list(self.scheme)} key={self.key!r} {len(self)} tuples>"

    def as_set(self) -> frozenset:
        """Order-free view of the tuples, for comparisons."""
        return frozenset(frozenset(t.items()) for t in self.tuples)


def from_relation(r: Relation) -> ManyValuedContext:
    """The many-valued context of a keyed relation: one object per tuple."""
    if r.key is None:
        raise IntegrityError("relation has no key attribute")
    objects = [str(t[r.key]) for t in r.tuples]
    if len(set(objects)) != len(objects):
        raise IntegrityError("key values collide once converted to names")
    attributes = [a for a in r.scheme if a != r.key]
    cells = {}
    for g, t in zip(objects, r.tuples):
        for a in attributes:
            if t[a] is not None and t[a] != "":
                cells[g, a] = t[a]
    return ManyValuedContext(objects, attributes, cells)
