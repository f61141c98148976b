import itertools
import random

import pytest

from wapkit import amalgamation as am
from wapkit import classes as cl
from wapkit.amalgamation import AmalgamSpan, Over, amalgam_exists, free_amalgam, span_of_extensions
from wapkit.classes import GA, G_CLASS, K5, P, PZK, membership
from wapkit.structures import (
    CapExceeded,
    Embedding,
    SignatureMismatch,
    StructureError,
    cycle_graph,
    empty,
    graph,
    induced_substructure,
    is_embedding,
    path_graph,
    st,
    vl5,
)

CLASSES = [K5, P, G_CLASS, GA(3, 4), PZK]


class TestSpans:
    def test_legs_must_share_domain(self):
        f = Embedding(graph(1), path_graph(2), (0,))
        g = Embedding(path_graph(2), path_graph(3), (0, 1))
        with pytest.raises(StructureError):
            AmalgamSpan(graph(1), f, g)

    def test_signatures_must_agree(self):
        # the leg into a differently typed structure is already not an embedding
        with pytest.raises((SignatureMismatch, StructureError)):
            span_of_extensions(empty(G_CLASS.sig), graph(1), vl5([0]))

    def test_restrict_and_swap(self):
        span = span_of_extensions(path_graph(2), path_graph(3), graph(3, [(0, 1), (0, 2)]))
        sub = span.restrict([1])
        assert sub.Z == graph(1) and sub.f.map == (1,) and sub.g.map == (1,)
        assert span.swapped().X == span.Y


class TestFreeAmalgam:
    def test_two_pendants(self):
        span = span_of_extensions(graph(1), path_graph(2), path_graph(2))
        sol = free_amalgam(span)
        assert sol.W == graph(3, [(0, 1), (0, 2)])
        assert sol.g1.map == (0, 2)
        assert sol.verify(span, membership(G_CLASS))

    def test_no_cross_tuples(self):
        X = st(2, s=[(1, 0)])
        Y = st(2, t=[(1, 0)])
        sol = free_amalgam(span_of_extensions(st(1), X, Y))
        assert sol.W.s == {(1, 0)} and sol.W.t == {(2, 0)}
        # both arcs land on vertex 0 with different colours
        assert not cl.is_member(P, sol.W)

    def test_verify_catches_disagreement(self):
        span = span_of_extensions(graph(1), path_graph(2), path_graph(2))
        sol = free_amalgam(span)
        bad = am.AmalgamSolution(sol.W, sol.f1, Embedding(path_graph(2), sol.W, (2, 0)))
        assert not bad.verify(span)
        assert am.AmalgamSolution(bad.W, bad.f1, bad.g1, Over.BASE, ()).verify(span)


class TestOracle:
    def test_k5_conflicting_neighbours(self):
        Z = vl5([0])
        X = vl5([0, 1], [(0, 1)])
        Y = vl5([0, 2], [(0, 1)])
        span = span_of_extensions(Z, X, Y)
        cert = amalgam_exists(span, membership(K5))
        assert not cert.verdict
        assert cert.stats["identifications"] >= 1
        # agreeing on nothing, the disjoint union works
        assert amalgam_exists(span, membership(K5), base=[]).verdict

    def test_identification_is_used(self):
        # two connectors between the same pair close a 4-cycle unless glued
        X = graph(3, [(0, 2), (1, 2)])
        span = span_of_extensions(graph(2), X, X)
        assert not cl.is_member(G_CLASS, free_amalgam(span).W)
        cert = amalgam_exists(span, membership(G_CLASS))
        assert cert.verdict
        assert cert.witness["W"] == X and cert.witness["g1"].map == (0, 1, 2)

    def test_positive_witness_replays(self):
        span = span_of_extensions(path_graph(2), path_graph(3), graph(3, [(0, 1), (0, 2)]))
        cert = amalgam_exists(span, membership(G_CLASS))
        w = cert.witness
        assert is_embedding(span.X, w["W"], w["f1"].map) and is_embedding(span.Y, w["W"], w["g1"].map)
        assert cl.is_member(G_CLASS, w["W"])

    def test_hint_short_circuits(self):
        span = span_of_extensions(graph(1), path_graph(2), path_graph(2))
        cert = amalgam_exists(span, membership(G_CLASS), hint=free_amalgam(span))
        assert cert.verdict and cert.stats["candidates"] == 1

    def test_cap(self):
        span = span_of_extensions(empty(G_CLASS.sig), path_graph(7), path_graph(6))
        with pytest.raises(CapExceeded):
            amalgam_exists(span, membership(G_CLASS))
        assert amalgam_exists(span, membership(G_CLASS), cap_sum=13).verdict

    def test_base_must_lie_in_z(self):
        span = span_of_extensions(graph(1), path_graph(2), path_graph(2))
        with pytest.raises(StructureError):
            amalgam_exists(span, membership(G_CLASS), base=[3])

    @pytest.mark.parametrize("c", CLASSES, ids=str)
    def test_agrees_with_slow_enumeration(self, c):
        rng = random.Random(11)
        seen = set()
        for _ in range(12):
            span = am.random_span(c, rng, max_base=2, ext=1)
            for base in (None, ()):
                fast = amalgam_exists(span, membership(c), base=base).verdict
                slow = am.amalgam_exists_slow(span, am.class_candidates(c), base)
                assert fast == slow
                seen.add(fast)
        assert True in seen

    @pytest.mark.parametrize("c", [K5, P, GA(3, 4)], ids=str)
    def test_pruning_does_not_change_answers(self, c):
        rng = random.Random(5)
        for _ in range(8):
            span = am.random_span(c, rng, max_base=2, ext=1)
            a = amalgam_exists(span, membership(c)).verdict
            b = amalgam_exists(span, membership(c), hereditary=False).verdict
            assert a == b


class TestK5Connector:
    @pytest.mark.parametrize("lp,lq", list(itertools.product(range(5), repeat=2)))
    def test_every_label_pair(self, lp, lq):
        lab = am._k5_connector_label(lp, lq)
        # the connector sees labels lp and lq
        assert not {(lab + 1) % 5, (lab + 2) % 5} <= {lp, lq}
        # each endpoint gains a neighbour of label lab, which must not complete its forbidden pair
        for end in (lp, lq):
            assert lab not in ((end + 1) % 5, (end + 2) % 5)
        H = vl5([lp, lq])
        assert cl.is_member(K5, am._connect_k5(H))

    def test_with_existing_neighbours(self):
        # each endpoint already has one neighbour from its forbidden pair
        for lp, lq in itertools.product(range(5), repeat=2):
            H = vl5([lp, (lp + 1) % 5, lq, (lq + 2) % 5], [(0, 1), (2, 3)])
            assert cl.is_member(K5, am._connect_k5(H))


class TestWitnesses:
    @pytest.mark.parametrize("c,n", [(K5, 3), (P, 3), (G_CLASS, 5), (GA(3, 4), 5), (GA(4, 6), 5)], ids=str)
    def test_prefix_and_membership(self, c, n):
        for H in cl.members_upto(c, n):
            w = am.wap_witness(c, H)
            assert cl.is_member(c, w.intermediate) and cl.is_member(c, w.structure)
            assert induced_substructure(w.structure, w.base) == H
            assert induced_substructure(w.structure, w.middle) == w.intermediate
            assert w.inclusion().map == w.base

    @pytest.mark.parametrize("c", [K5, P], ids=str)
    def test_k5_p_witness_is_connected_and_determined(self, c):
        for H in cl.members_upto(c, 3):
            w = am.wap_witness(c, H)
            assert cl.is_connected(w.intermediate)
            # the added vertices may themselves be undetermined, the intermediate ones may not
            assert not set(cl.undetermined_vertices(c, w.structure)) & set(w.middle)

    def test_g_intermediate_is_tame(self):
        for H in cl.members_upto(G_CLASS, 5):
            assert cl.is_tame(am.wap_witness(G_CLASS, H).intermediate)

    def test_ga_witness_has_no_free_cycle(self):
        c = GA(3, 5)
        for H in cl.members_upto(c, 5):
            w = am.wap_witness(c, H)
            assert not cl.bridges(w.intermediate)
            assert not cl.free_cycles(w.structure)

    def test_pzk_and_non_members_rejected(self):
        with pytest.raises(ValueError):
            am.wap_witness(PZK, empty(PZK.sig))
        with pytest.raises(StructureError):
            am.wap_witness(G_CLASS, cycle_graph(3))
        with pytest.raises(SignatureMismatch):
            am.wap_witness(K5, graph(1))

    def test_tame_extension(self):
        assert am.certify_tame(6).verdict
        T = am.tame_extension(path_graph(3))
        assert induced_substructure(T, range(3)) == path_graph(3) and cl.is_tame(T)


class TestCounterexamples:
    @pytest.mark.parametrize("c,H", [
        (K5, vl5([0])),
        (P, st(1)),
        (G_CLASS, path_graph(2)),
        (GA(3, 4), path_graph(2)),
        (GA(4, 6), cycle_graph(4)),
    ], ids=str)
    def test_gadget_has_no_amalgam(self, c, H):
        span = am.cap_counterexample(c, H)
        assert span.Z == H
        assert cl.is_member(c, span.X) and cl.is_member(c, span.Y)
        cert = amalgam_exists(span, membership(c), cap_sum=span.X.n + span.Y.n)
        assert not cert.verdict
        assert not am.amalgam_exists_slow(span, am.class_candidates(c))

    def test_inputs_rejected(self):
        with pytest.raises(StructureError):
            am.cap_counterexample(K5, vl5([]))
        with pytest.raises(StructureError):
            am.cap_counterexample(G_CLASS, graph(3))

    @pytest.mark.parametrize("c,n", [(K5, 2), (P, 2), (G_CLASS, 4), (GA(3, 4), 4)], ids=str)
    def test_certificate(self, c, n):
        cert = am.certify_not_cap(c, n, replay_fraction=1.0)
        assert cert.verdict and cert.stats["spans"] > 0
        if c in (K5, P):
            assert cert.stats["replayed"] > 0


class TestBoundedCertifiers:
    @pytest.mark.parametrize("c,n", [(K5, 2), (P, 2), (G_CLASS, 4), (GA(3, 4), 4), (PZK, 3)], ids=str)
    def test_jep(self, c, n):
        assert am.certify_jep(c, n).verdict

    @pytest.mark.parametrize("c,n", [(K5, 1), (P, 2), (G_CLASS, 2), (GA(3, 4), 2)], ids=str)
    def test_wap_sample(self, c, n):
        cert = am.certify_wap_sample(c, n)
        assert cert.verdict and cert.stats["free_amalgam_members"] == cert.stats["spans"]

    def test_key_path(self):
        spider = graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        assert am.key_path_property(G_CLASS, spider).verdict
        # two isolated vertices can be joined through a new one
        cert = am.key_path_property(G_CLASS, graph(2), extra=1)
        assert not cert.verdict and cert.counterexample["from"] == 0

    def test_random_span_is_deterministic(self):
        a = am.random_span(P, random.Random(3))
        b = am.random_span(P, random.Random(3))
        assert (a.Z, a.X, a.Y) == (b.Z, b.X, b.Y)
