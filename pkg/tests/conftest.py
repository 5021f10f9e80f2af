import numpy as np
import pytest
from hypothesis import strategies as st

from latql import FormalContext, build_lattice
from latql.datasets import k6x6, k3x4, star_alliance


@pytest.fixture
def k34():
    return k3x4()


@pytest.fixture
def lat34(k34):
    return build_lattice(k34)


@pytest.fixture(scope="session")
def sa():
    return star_alliance()


@pytest.fixture(scope="session")
def sa_lat(sa):
    return build_lattice(sa)


@pytest.fixture
def k66():
    return k6x6()


def random_context(rng, n_obj, n_att, density):
    table = rng.random((n_obj, n_att)) < density
    return FormalContext([f"g{i}" for i in range(n_obj)],
                         [f"m{j}" for j in range(n_att)], table)


@st.composite
def contexts(draw, max_objects=6, max_attributes=6, min_objects=0, min_attributes=0):
    n = draw(st.integers(min_objects, max_objects))
    m = draw(st.integers(min_attributes, max_attributes))
    cells = draw(st.lists(st.booleans(), min_size=n * m, max_size=n * m))
    table = np.array(cells, dtype=bool).reshape(n, m)
    return FormalContext([f"g{i}" for i in range(n)], [f"m{j}" for j in range(m)], table)


def brute_prime_objects(ctx, objects):
    """A' computed cell by cell."""
    return {m for m in ctx.attributes if all(ctx.has(g, m) for g in objects)}


def brute_prime_attributes(ctx, attributes):
    return {g for g in ctx.objects if all(ctx.has(g, m) for m in attributes)}


def concept_set(lat):
    return {(frozenset(c.extent), frozenset(c.intent)) for c in lat}


def ids_of(lat, pairs):
    """Concept ids for a list of (extent, intent) name collections."""
    return sorted(lat.find(extent=e).index for e, _ in pairs)


# ---------------------------------------------------------------------------
# query generation, shared by the parser tests and the acceptance suite

_NAMES = ["k3x4", "sa", "m1", "Asia Pacific", "x-1", "a.b", "SELECT", "say \"hi\"",
          "back\\slash", "", "0.5", "Air Canada", "é", "a=b", "(paren)"]


def random_name(rng):
    return rng.choice(_NAMES)


def random_condition(rng, depth=2):
    from latql import And, Atom, Not, Or
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        value = random_name(rng) if rng.random() < 0.3 else None
        atom = Atom(random_name(rng), value)
        return Not(atom) if rng.random() < 0.3 else atom
    terms = tuple(random_condition(rng, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(terms) if roll < 0.7 else Or(terms)


def random_query(rng, depth=3):
    from latql.query import (
        Approx, Build, Combine, Generalize, Project, Ref, Select,
    )
    if depth == 0 or rng.random() < 0.2:
        return Ref(random_name(rng))
    kind = rng.choice(["select", "project", "combine", "generalize", "approx", "build"])
    src = random_query(rng, depth - 1)
    names = lambda: tuple(random_name(rng) for _ in range(rng.randint(0, 3)))
    if kind == "select":
        return Select(src, random_condition(rng))
    if kind == "project":
        return Project(src, names())
    if kind == "combine":
        op = rng.choice(["APPOSE", "SUBPOSE", "GLUE", "JOIN"])
        return Combine(op, src, random_query(rng, depth - 1))
    if kind == "generalize":
        mode = rng.choice(["exists", "forall", "alpha"])
        alpha = rng.choice([None, "0.5", "1"]) if mode == "alpha" else None
        return Generalize(src, random_name(rng), mode, alpha)
    if kind == "approx":
        return Approx(src, names(), names())
    return Build(src)


@st.composite
def queries(draw):
    import random
    return random_query(random.Random(draw(st.integers(0, 2**32 - 1))))


def fixture_contexts():
    """Every bundled context, by name."""
    from latql.datasets import k3x4_generalized_table, star_alliance_generalized_table
    return {"k3x4": k3x4(), "k3x4_gen": k3x4_generalized_table(), "star_alliance": star_alliance(),
            "star_alliance_gen": star_alliance_generalized_table(), "k6x6": k6x6()}
