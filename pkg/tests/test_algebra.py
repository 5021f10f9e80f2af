import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import concept_set, contexts
from latql import (
    And, Atom, FormalContext, Not, Or, Relation, apposition, build_lattice,
    derive_context, embed_subconcept, from_relation, glue, natural_join, oracle,
    project, restrict_concepts, select, subposition, weak_negation, weak_opposition,
)
from latql.algebra import interval_members_restrict_to
from latql.errors import AlignmentError, ConflictError, DomainError


def pairs(concepts):
    return sorted((c.extent, c.intent) for c in concepts)


def definition_filter(lat, cond):
    """Concepts satisfying cond, judged set-theoretically from names."""
    ctx = lat.context

    def ok(cond, c):
        if isinstance(cond, Atom):
            return cond.scaled_name in c.intent
        if isinstance(cond, Not):
            having = {g for g in ctx.objects if ctx.has(g, cond.atom.scaled_name)}
            return not (set(c.extent) & having)
        if isinstance(cond, And):
            return all(ok(t, c) for t in cond.terms)
        return any(ok(t, c) for t in cond.terms)

    return {c.index for c in lat if ok(cond, c)}


class TestSelect:
    def test_atom(self, lat34):
        res = select(lat34, Atom("m4"))
        assert pairs(res) == pairs([lat34.mu("m4"), lat34.gamma("g1"),
                                    lat34.gamma("g2"), lat34.bottom])
        assert res.shape == "order-ideal"

    def test_conjunction(self, lat34):
        res = select(lat34, And((Atom("m3"), Atom("m4"))))
        assert pairs(res) == pairs([lat34.gamma("g1"), lat34.bottom])

    def test_negation(self, lat34):
        res = select(lat34, Not(Atom("m4")))
        assert pairs(res) == pairs([lat34.gamma("g3"), lat34.bottom])
        assert res.negation_closed is True
        assert res.shape == "order-ideal"

    def test_negation_not_closed(self):
        # G minus x' = {b, c} whose closure is {a, b, c}
        ctx = FormalContext(["a", "b", "c"], ["x", "y", "z"],
                            [[1, 1, 1], [0, 1, 0], [0, 0, 1]])
        lat = build_lattice(ctx)
        res = select(lat, Not(Atom("x")))
        assert res.negation_closed is False
        assert res.shape == "sub-hierarchy"
        assert set(res.ids) == definition_filter(lat, Not(Atom("x")))

    def test_star_alliance_conjunction_class(self, sa_lat):
        res = select(sa_lat, And((Atom("Canada"), Atom("Asia Pacific"))))
        top = max(res.concepts, key=lambda c: len(c.extent))
        flying_both = tuple(g for g in sa_lat.context.objects
                            if sa_lat.context.has(g, "Canada")
                            and sa_lat.context.has(g, "Asia Pacific"))
        assert top.extent == flying_both
        assert set(res.ids) == set(sa_lat.order_ideal(top).ids)

    def test_unknown_attribute(self, lat34):
        with pytest.raises(DomainError):
            select(lat34, Atom("nope"))

    def test_negation_of_compound_rejected(self):
        with pytest.raises(DomainError):
            Not(And((Atom("a"), Atom("b"))))

    def test_scaled_atom(self):
        ctx = FormalContext(["p", "q"], ["colour=red", "colour=blue"],
                            [[1, 0], [0, 1]])
        lat = build_lattice(ctx)
        res = select(lat, Atom("colour", "red"))
        assert [c.extent for c in res if c.extent] == [("p",)]

    @settings(max_examples=60, deadline=None)
    @given(contexts(max_objects=6, max_attributes=5, min_attributes=2), st.data())
    def test_matches_definition(self, ctx, data):
        lat = build_lattice(ctx)
        a, b = data.draw(st.lists(st.sampled_from(ctx.attributes), min_size=2,
                                  max_size=2, unique=True))
        conds = [Atom(a), And((Atom(a), Atom(b))), Or((Atom(a), Atom(b))),
                 Not(Atom(a)), And((Or((Atom(a), Atom(b))), Not(Atom(b)))),
                 Or((And((Atom(a), Atom(b))), Not(Atom(a))))]
        for cond in conds:
            res = select(lat, cond)
            assert set(res.ids) == definition_filter(lat, cond)
            if res.shape == "order-ideal":
                assert lat.is_down_closed(res.region.mask)
        neg = select(lat, Not(Atom(a)))
        rest = set(ctx.objects) - set(ctx.derive_attributes([a]))
        closed = set(ctx.closure_objects(rest)) == rest
        assert neg.negation_closed == closed
        assert (neg.shape == "order-ideal") == closed


class TestWeakOperations:
    def test_weak_negation(self, lat34):
        assert weak_negation(lat34, lat34.gamma("g3")) == lat34.mu("m4")
        assert lat34.bottom.extent == ()
        assert weak_negation(lat34, lat34.bottom) == lat34.top
        assert weak_negation(lat34, lat34.top) == lat34.bottom

    def test_weak_opposition(self, lat34, k34):
        assert weak_opposition(lat34, lat34.top) == lat34.concept_from_attributes(k34.attributes)
        c = weak_opposition(lat34, lat34.mu("m4"))
        assert (c.extent, c.intent) == ((), ("m1", "m2", "m3", "m4"))
        assert weak_opposition(lat34, lat34.bottom) == lat34.top


class TestProject:
    def test_star_alliance(self, sa_lat):
        res = project(sa_lat, ["Canada", "Asia Pacific"])
        assert len(res.lattice) == 4
        assert len(res.classes) == 4

    def test_k3x4(self, lat34):
        res = project(lat34, ["m3", "m4"])
        assert pairs(res.lattice) == sorted([
            (("g1", "g2", "g3"), ()), (("g1", "g3"), ("m3",)),
            (("g1", "g2"), ("m4",)), (("g1",), ("m3", "m4"))])

    def test_identity(self, lat34, k34):
        res = project(lat34, k34.attributes)
        assert pairs(res.lattice) == pairs(lat34)

    def test_unknown(self, lat34):
        with pytest.raises(DomainError):
            project(lat34, ["zz"])

    @settings(max_examples=60, deadline=None)
    @given(contexts(max_objects=6, max_attributes=6, min_attributes=1), st.data())
    def test_projection_laws(self, ctx, data):
        lat = build_lattice(ctx)
        Y = data.draw(st.lists(st.sampled_from(ctx.attributes), unique=True))
        res = project(lat, Y)
        assert concept_set(res.lattice) == oracle.concepts(ctx.subcontext(None, Y))
        reps = set(res.representative.values())
        for c in lat:
            r = lat[res.representative[c.index]]
            assert set(r.intent) & set(Y) == set(c.intent) & set(Y)
            members = [d for d in lat if set(d.intent) & set(Y) == set(c.intent) & set(Y)]
            assert all(lat.leq(d, r) for d in members)
            img = res.lattice[res.image[c.index]]
            assert set(img.intent) == set(c.intent) & set(Y)
        for i in reps:
            for j in reps:
                assert lat.meet(lat[i], lat[j]).index in reps
        expected = {(frozenset(ctx.derive_attributes(set(lat[r].intent) & set(Y))),
                     frozenset(set(lat[r].intent) & set(Y))) for r in reps}
        assert concept_set(res.lattice) == expected


class TestCombine:
    def test_apposition_reconstitutes(self, k34):
        left = k34.subcontext(None, ["m1", "m2"])
        right = k34.subcontext(None, ["m3", "m4"])
        assert apposition(left, right) == k34

    def test_apposition_extent_law_on_halves(self, k34):
        left = k34.subcontext(None, ["m1", "m2"])
        right = k34.subcontext(None, ["m3", "m4"])
        e1 = {e for e, _ in oracle.concepts(left)}
        e2 = {e for e, _ in oracle.concepts(right)}
        expected = {a & b for a in e1 for b in e2}
        got = {frozenset(c.extent) for c in build_lattice(apposition(left, right))}
        assert got == expected

    def test_apposition_empty_side(self, k34):
        empty = FormalContext(k34.objects, [], np.zeros((3, 0), dtype=bool))
        assert apposition(k34, empty) == k34

    def test_apposition_collisions(self, k34):
        both = apposition(k34, k34)
        assert both.attributes[:2] == ("m1#1", "m2#1")
        assert both.attributes[4] == "m1#2"

    def test_apposition_alignment(self, k34):
        with pytest.raises(AlignmentError):
            apposition(k34, k34.subcontext(["g1"], None))

    def test_subposition(self, k34):
        top = k34.subcontext(["g1", "g2"], None)
        bottom = k34.subcontext(["g3"], None)
        joined = subposition(top, bottom)
        assert joined == k34
        assert concept_set(build_lattice(joined)) == oracle.concepts(k34)
        empty = FormalContext([], k34.attributes, np.zeros((0, 4), dtype=bool))
        assert subposition(k34, empty) == k34
        with pytest.raises(AlignmentError):
            subposition(k34, k34.subcontext(None, ["m1"]))

    def test_glue_disjoint(self):
        a = FormalContext(["p"], ["x"], [[1]])
        b = FormalContext(["q"], ["y"], [[1]])
        g = glue(a, b)
        assert g.objects == ("p", "q") and g.attributes == ("x", "y")
        assert g.incidence.tolist() == [[True, False], [False, True]]

    def test_glue_self(self, k34):
        assert glue(k34, k34) == k34

    def test_glue_fragments(self, k34):
        # fragments overlap on row g1 and column m3
        f1 = k34.subcontext(["g1", "g3"], ["m1", "m3"])
        f2 = k34.subcontext(["g1", "g2"], ["m3", "m4"])
        g = glue(f1, f2)
        assert set(g.objects) == {"g1", "g2", "g3"}
        assert set(g.attributes) == {"m1", "m3", "m4"}
        for obj in g.objects:
            for att in g.attributes:
                in_f1 = obj in f1.objects and att in f1.attributes
                in_f2 = obj in f2.objects and att in f2.attributes
                expected = (in_f1 or in_f2) and k34.has(obj, att)
                assert g.has(obj, att) == expected

    def test_glue_conflict(self):
        a = FormalContext(["p", "q"], ["x"], [[1], [0]])
        b = FormalContext(["q"], ["x"], [[1]])
        with pytest.raises(ConflictError) as info:
            glue(a, b)
        assert (info.value.object, info.value.attribute) == ("q", "x")

    @settings(max_examples=50, deadline=None)
    @given(contexts(max_objects=6, max_attributes=7, min_attributes=2), st.data())
    def test_apposition_extent_law(self, ctx, data):
        cut = data.draw(st.integers(1, len(ctx.attributes) - 1))
        left = ctx.subcontext(None, ctx.attributes[:cut])
        right = ctx.subcontext(None, ctx.attributes[cut:])
        e1 = {e for e, _ in oracle.concepts(left)}
        e2 = {e for e, _ in oracle.concepts(right)}
        got = {frozenset(c.extent) for c in build_lattice(apposition(left, right))}
        assert got == {a & b for a in e1 for b in e2}


def _relations():
    r = Relation(["K", "A"], [{"K": k, "A": v} for k, v in
                              [("x", "a1"), ("y", "a2"), ("z", "a1")]], key="K")
    s = Relation(["K", "B"], [{"K": k, "B": v} for k, v in
                              [("x", "b1"), ("y", "b1"), ("z", "b2")]], key="K")
    return r, s


class TestNaturalJoin:
    def test_shared_key(self):
        r, s = _relations()
        q = natural_join(r, s)
        assert len(q) == len(r) == len(s)
        assert q.scheme == ("K", "A", "B")
        assert q.key == "K"

    def test_cartesian(self):
        r = Relation(["K", "A"], [{"K": i, "A": i} for i in range(3)], key="K")
        s = Relation(["L", "B"], [{"L": i, "B": -i} for i in range(4)], key="L")
        q = natural_join(r, s)
        assert len(q) == 12
        assert q.key is None

    def test_join_is_apposition(self):
        r, s = _relations()
        joined = derive_context(from_relation(natural_join(r, s)))
        separate = apposition(derive_context(from_relation(r)),
                              derive_context(from_relation(s)))
        assert joined == separate

    def test_commutative_and_associative(self):
        r, s = _relations()
        t = Relation(["K", "C"], [{"K": "x", "C": 1}, {"K": "z", "C": 2}], key="K")
        assert natural_join(r, s).as_set() == natural_join(s, r).as_set()
        left = natural_join(natural_join(r, s), t)
        right = natural_join(r, natural_join(s, t))
        assert left.as_set() == right.as_set()
        assert len(left) == 2

    def test_no_match(self):
        r, _ = _relations()
        s = Relation(["K", "B"], [{"K": "w", "B": 0}], key="K")
        assert len(natural_join(r, s)) == 0


class TestSubcontextMaps:
    H, N = ["2", "3", "5", "6"], ["a", "b", "d", "f"]

    def test_k6x6_restriction(self, k66):
        lat = build_lattice(k66)
        report = restrict_concepts(lat, self.H, self.N)
        entry = next(e for e in report.entries if e.parent.extent == ("4", "5"))
        assert entry.extent == ("5",)
        sub = k66.subcontext(self.H, self.N)
        assert sub.closure_objects(["5"]) == ("5",)
        assert set(k66.closure_objects(["5"])) & set(self.H) == {"5"}

    def test_identity(self, lat34, k34):
        report = restrict_concepts(lat34, k34.objects, k34.attributes)
        assert report.compatible and report.surjective and report.homomorphism
        assert all(report.mapping[c.index] == c.index for c in lat34)

    def test_k3x4_incompatible(self, lat34, k34):
        H, N = ["g1", "g2"], ["m3", "m4"]
        report = restrict_concepts(lat34, H, N)
        sub = oracle.concepts(k34.subcontext(H, N))
        for e in report.entries:
            assert e.is_concept == ((frozenset(e.extent), frozenset(e.intent)) in sub)
        assert report.compatible is False
        assert [e.is_concept for e in report.entries] == [
            False, True, False, True, False, False, False]

    @settings(max_examples=60, deadline=None)
    @given(contexts(max_objects=5, max_attributes=5, min_objects=1, min_attributes=1),
           st.data())
    def test_compatible_maps_are_homomorphisms(self, ctx, data):
        lat = build_lattice(ctx)
        H = data.draw(st.lists(st.sampled_from(ctx.objects), unique=True, min_size=1))
        N = data.draw(st.lists(st.sampled_from(ctx.attributes), unique=True, min_size=1))
        report = restrict_concepts(lat, H, N)
        if report.compatible:
            assert report.surjective and report.homomorphism
        sub = report.sublattice
        for u in sub:
            phi1, phi2 = embed_subconcept(lat, sub, u)
            assert lat.leq(phi1, phi2)
            assert interval_members_restrict_to(lat, u, phi1, phi2, H, N)
        for u in sub:
            for v in sub:
                for k in (0, 1):
                    pu = embed_subconcept(lat, sub, u)[k]
                    pv = embed_subconcept(lat, sub, v)[k]
                    assert sub.leq(u, v) == lat.leq(pu, pv)


class TestEmbed:
    def test_k6x6(self, k66):
        lat = build_lattice(k66)
        sub = build_lattice(k66.subcontext(["2", "3", "5", "6"], ["a", "b", "d", "f"]))
        u = sub.concept_from_objects(["2", "3"])
        phi1, _ = embed_subconcept(lat, sub, u)
        # u's extent is the sub-context closure {2, 3, 5}
        assert u.extent == ("2", "3", "5")
        assert lat.concept_from_objects(["2", "3"]).extent == ("2", "3", "4")
        assert set(phi1.extent) == set(k66.closure_objects(u.extent))

    def test_full_subcontext(self, lat34, k34):
        sub = build_lattice(k34.subcontext())
        assert embed_subconcept(lat34, sub, sub.top) == (lat34.top, lat34.top)

    def test_k3x4(self, lat34, k34):
        sub = build_lattice(k34.subcontext(["g1", "g2"], ["m3", "m4"]))
        u = sub.find(extent=["g1"])
        assert u.intent == ("m3", "m4")
        assert embed_subconcept(lat34, sub, u) == (lat34.gamma("g1"), lat34.gamma("g1"))

    def test_foreign_lattice(self, lat34, sa_lat):
        with pytest.raises(DomainError):
            embed_subconcept(lat34, sa_lat, sa_lat.top)
