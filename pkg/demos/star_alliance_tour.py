"""
Querying the Star Alliance lattice
==================================

Build the concept lattice of the airline/destination table, then select
and project it.
"""

# the table ships with the package; demos/data/star_alliance.cxt holds the
# same context in Burmeister format
from latql import And, Atom, Not, build_lattice, project, select
from latql.datasets import star_alliance

sa = star_alliance()
lat = build_lattice(sa)
print(f"{len(sa.objects)} airlines x {len(sa.attributes)} regions -> {len(lat)} concepts")

# top and bottom of the lattice
print("top:   ", lat.top.extent and len(lat.top.extent), "airlines,", lat.top.intent)
print("bottom:", lat.bottom.extent, "|", len(lat.bottom.intent), "regions")

# every airline sits at its object concept; the intent lists where it flies
for g in ("Lufthansa", "British Midland"):
    print(f"gamma({g}) intent: {lat.gamma(g).intent}")

# selecting with a conjunction gives an order ideal below one concept
res = select(lat, And((Atom("Canada"), Atom("Asia Pacific"))))
biggest = max(res.concepts, key=lambda c: len(c.extent))
print(f"\nCanada & Asia Pacific: {len(res)} concepts, shape {res.shape}")
print("  flown by:", ", ".join(biggest.extent))

# negated atoms: concepts none of whose airlines serve the region.  Ansett
# and Mexicana skip Europe, but every concept holding either of them also
# holds a European carrier, so only the bottom concept qualifies and
# {Ansett, Mexicana} is not closed
res = select(lat, Not(Atom("Europe")))
print(f"!Europe: {len(res)} concepts, negation closed: {res.negation_closed}")

# projecting on two regions groups concepts by what they say about them
proj = project(lat, ["Canada", "Asia Pacific"])
print(f"\nprojection on Canada, Asia Pacific: {len(proj.lattice)} concepts")
# each class is keyed by its greatest member in the parent lattice
for rep, members in proj.classes.items():
    c = proj.lattice[proj.image[rep]]
    print(f"  {', '.join(c.intent) or '(none)'}: {len(members)} parent concepts,"
          f" {len(c.extent)} airlines")
