"""Reading and writing contexts, relations and lattices.

Burmeister layout, one item per newline-terminated line::

    B
    <context name, possibly empty>
    <number of objects>
    <number of attributes>
    <object names ...>
    <attribute names ...>
    <one row of X/. per object ...>
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .approximation import ApproxResult
from .context import FormalContext, Relation
from .errors import FormatError, IntegrityError
from .lattice import ConceptLattice, ConceptRegion

ENCODING = "utf-8"
ERRORS = "surrogateescape"


def read_burmeister(data: bytes | str, source: str | None = None) -> FormalContext:
    """Parse a Burmeister ``.cxt`` document."""
    text = data.decode(ENCODING, ERRORS) if isinstance(data, bytes) else data
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def line(k):
        if k >= len(lines):
            raise FormatError("unexpected end of file", k + 1, source)
        return lines[k]

    if line(0) != "B":
        raise FormatError("first line must be 'B'", 1, source)
    name = line(1)
    counts = []
    for k in (2, 3):
        try:
            value = int(line(k))
        except ValueError:
            raise FormatError(f"expected an integer, got {line(k)!r}", k + 1, source) from None
        if value < 0 or line(k).strip() != line(k):
            raise FormatError(f"bad count {line(k)!r}", k + 1, source)
        counts.append(value)
    n_obj, n_att = counts
    pos = 4
    objects = [line(pos + i) for i in range(n_obj)]
    pos += n_obj
    attributes = [line(pos + j) for j in range(n_att)]
    pos += n_att
    for kind, names, start in (("object", objects, 4), ("attribute", attributes, 4 + n_obj)):
        seen = {}
        for k, nm in enumerate(names):
            if nm in seen:
                raise FormatError(f"duplicate {kind} name {nm!r}", start + k + 1, source)
            seen[nm] = k
    table = np.zeros((n_obj, n_att), dtype=bool)
    for i in range(n_obj):
        row = line(pos + i)
        if len(row) != n_att:
            raise FormatError(f"row has {len(row)} cells, expected {n_att}",
                              pos + i + 1, source)
        for j, ch in enumerate(row):
            if ch == "X":
                table[i, j] = True
            elif ch != ".":
                raise FormatError(f"unexpected cell character {ch!r}", pos + i + 1, source)
    pos += n_obj
    if pos != len(lines):
        raise FormatError("trailing content after the incidence rows", pos + 1, source)
    return FormalContext(objects, attributes, table, name=name)


def write_burmeister(ctx: FormalContext) -> bytes:
    for nm in (ctx.name, *ctx.objects, *ctx.attributes):
        if "\n" in nm:
            raise FormatError(f"name {nm!r} contains a newline")
    out = ["B", ctx.name, str(len(ctx.objects)), str(len(ctx.attributes))]
    out += list(ctx.objects) + list(ctx.attributes)
    out += ["".join("X" if v else "." for v in row) for row in ctx.incidence]
    return ("\n".join(out) + "\n").encode(ENCODING, ERRORS)


def load_context(path, fmt: str | None = None) -> FormalContext:
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "burmeister")
    if fmt == "burmeister":
        return read_burmeister(path.read_bytes(), source=str(path))
    if fmt == "csv":
        from .context import derive_context, from_relation
        return derive_context(from_relation(read_csv_relation(path.read_text(ENCODING),
                                                              source=str(path))))
    raise FormatError(f"unknown context format {fmt!r}", source=str(path))


def read_csv_relation(text: str, source: str | None = None) -> Relation:
    """A CSV table whose first column is the key; empty cells are undefined."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise FormatError("empty CSV table", 1, source)
    header = rows[0]
    if len(set(header)) != len(header):
        raise FormatError("duplicate column names", 1, source)
    tuples = []
    for k, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise FormatError(f"row has {len(row)} cells, expected {len(header)}", k, source)
        tuples.append({a: (v if v != "" else None) for a, v in zip(header, row)})
    try:
        return Relation(header, tuples, key=header[0])
    except IntegrityError as exc:
        raise FormatError(str(exc), source=source) from None


def write_csv_relation(r: Relation) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(r.scheme)
    for t in r.tuples:
        w.writerow(["" if t[a] is None else t[a] for a in r.scheme])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# lattice output


def reduced_labels(lat: ConceptLattice):
    """Objects and attributes introduced at each concept (gamma/mu labels)."""
    objs = {c.index: [] for c in lat}
    atts = {c.index: [] for c in lat}
    for g in lat.context.objects:
        objs[lat.gamma(g).index].append(g)
    for m in lat.context.attributes:
        atts[lat.mu(m).index].append(m)
    return objs, atts


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(lat: ConceptLattice, region: ConceptRegion | None = None,
           name: str = "lattice") -> str:
    objs, atts = reduced_labels(lat)
    marked = region.mask if region is not None else 0
    out = [f"digraph {_quote(name)} {{", "  rankdir=BT;",
           "  node [shape=box, style=rounded];"]
    for c in lat:
        label = "\\n".join(x for x in (", ".join(atts[c.index]),
                                       ", ".join(objs[c.index])) if x)
        attrs = [f"label={_quote(label)}"]
        if marked >> c.index & 1:
            attrs.append('highlight="true"')
            attrs.append('style="rounded,filled"')
            attrs.append('fillcolor="lightblue"')
        out.append(f"  c{c.index} [{', '.join(attrs)}];")
    for lo, hi in lat.covering_pairs():
        out.append(f"  c{lo} -> c{hi};")
    out.append("}")
    return "\n".join(out) + "\n"


def lattice_record(lat: ConceptLattice, region: ConceptRegion | None = None) -> dict:
    objs, atts = reduced_labels(lat)
    marked = region.mask if region is not None else 0
    concepts = []
    for c in lat:
        entry = {
            "id": c.index,
            "extent": list(c.extent),
            "intent": list(c.intent),
            "objects": objs[c.index],
            "attributes": atts[c.index],
        }
        if region is not None:
            entry["in_region"] = bool(marked >> c.index & 1)
        concepts.append(entry)
    record = {
        "objects": list(lat.context.objects),
        "attributes": list(lat.context.attributes),
        "top": lat.top.index,
        "bottom": lat.bottom.index,
        "concepts": concepts,
        "edges": [list(p) for p in lat.covering_pairs()],
    }
    if region is not None:
        record["region"] = {"shape": region.shape, "ids": list(region.ids)}
    return record


def to_json(lat: ConceptLattice, region: ConceptRegion | None = None) -> str:
    return json.dumps(lattice_record(lat, region), indent=2, ensure_ascii=False) + "\n"


def to_text(lat: ConceptLattice, region: ConceptRegion | None = None) -> str:
    marked = region.mask if region is not None else 0
    out = [f"{len(lat)} concepts, {len(lat.covering_pairs())} covering edges"]
    for c in lat:
        flag = "*" if marked >> c.index & 1 else " "
        uppers = " ".join(f"c{d.index}" for d in lat.upper_covers(c))
        out.append(f"{flag}c{c.index}: {{{', '.join(c.extent)}}} | "
                   f"{{{', '.join(c.intent)}}} -> [{uppers}]")
    return "\n".join(out) + "\n"


def approx_record(result: ApproxResult) -> dict:
    return {
        "kind": result.kind,
        "presumed": {"extent": list(result.presumed.extent),
                     "intent": list(result.presumed.intent)},
        "lower": {"id": result.lower.index, "extent": list(result.lower.extent),
                  "intent": list(result.lower.intent)},
        "upper": {"id": result.upper.index, "extent": list(result.upper.extent),
                  "intent": list(result.upper.intent)},
        "interval": list(result.interval.ids),
    }


WRITERS = {"dot": to_dot, "json": to_json, "text": to_text}


def write_lattice(lat: ConceptLattice, fmt: str = "text",
                  region: ConceptRegion | None = None) -> bytes:
    """Render a lattice (optionally with a highlighted region) as bytes."""
    try:
        writer = WRITERS[fmt]
    except KeyError:
        raise ValueError(f"unknown output format {fmt!r}") from None
    return writer(lat, region).encode(ENCODING, ERRORS)
