"""
Approximating a presumed concept
================================

A user guesses that Air Canada and Lufthansa form a group characterised
by Canada and Europe.  The guess is not a formal concept; this script
finds the closest concepts below and above it and the interval between.
"""

import json

from latql import (
    PresumedConcept, approx_interval, build_lattice, projective_preimage,
    selective_preimage,
)
from latql.datasets import star_alliance
from latql.io import approx_record, write_lattice

lat = build_lattice(star_alliance())
guess = PresumedConcept(["Air Canada", "Lufthansa"], ["Canada", "Europe"])

res = approx_interval(lat, guess)
print("kind:", res.kind)

# L: the smallest concept whose extent contains the guessed airlines
print("\nL =", res.lower.extent)
print("   ", res.lower.intent)

# H: the largest concept whose intent contains the guessed regions
print("H =", res.upper.extent)
print("   ", res.upper.intent)

# the interval [L, H] holds every concept that contains the guess as a
# rectangle of crosses
print(f"\n{len(res.interval)} concepts in [L, H]:")
for c in res.interval:
    print(f"  c{c.index}: {len(c.extent)} airlines, {len(c.intent)} regions")
    assert set(guess.extent) <= set(c.extent) and set(guess.intent) <= set(c.intent)

# inverse images: concepts whose intent covers the regions form the ideal
# below H, those whose extent covers the airlines the filter above L
print("\nideal below H:", len(projective_preimage(lat, guess)), "concepts")
print("filter above L:", len(selective_preimage(lat, guess)), "concepts")

# a guess that is not a rectangle of crosses is degenerated: L and H still
# exist but L is not below H, so the interval is empty
bad = approx_interval(lat, (["Ansett Australia", "Mexicana"], ["Europe"]))
print("\n(Ansett, Mexicana ; Europe):", bad.kind, "interval size", len(bad.interval))

# JSON summary, and a DOT diagram with the interval highlighted
print(json.dumps(approx_record(res))[:120], "...")
dot = write_lattice(lat, "dot", res.interval).decode()
print(dot.count('highlight="true"'), "highlighted nodes in the DOT output")
