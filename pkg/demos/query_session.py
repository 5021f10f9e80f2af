"""
Running queries against a session catalog
=========================================

The session file ``data/session.toml`` names contexts, a CSV relation
with its scales, and attribute covers.  Queries compose the operators in
a small text language; the CLI runs the same queries.
"""

from pathlib import Path

from latql import Catalog, execute, parse_query, pretty
from latql.io import write_lattice

HERE = Path(__file__).resolve().parent
cat = Catalog.from_config(HERE / "data" / "session.toml")
print("contexts:", sorted(cat.contexts), " relations:", sorted(cat.relations),
      " covers:", sorted(cat.covers))

# a query is parsed once; pretty() prints the canonical spelling
ast = parse_query('PROJECT( sa , [ Canada,"Asia Pacific" ] )')
print("\ncanonical:", pretty(ast))
print("concepts:", len(execute(ast, cat).lattice))

# the relation is scaled on the fly: ordinal size_index, nominal year,
# and a hand-written cross scale grouping hubs by continent
lat = execute("BUILD(fleet)", cat)
print("\nfleet context attributes:")
for m in lat.context.attributes:
    print("  ", m)

# mixed conditions are evaluated concept by concept
sel = execute('SELECT(fleet, "size_index<=200" & !"hub in Europe")', cat)
print(f"\nsmall fleets outside Europe: {len(sel)} concepts, shape {sel.shape}")
for c in sel:
    if c.extent:
        print("  ", ", ".join(c.extent))

# operators nest; GENERALIZE reads its thresholds from the cover
q = "BUILD(GENERALIZE(sa, continents, alpha))"
print(f"\n{q}:", len(execute(q, cat)), "concepts")

# the text rendering used by `latql query`
print()
print(write_lattice(execute("BUILD(k3x4)", cat)).decode())
