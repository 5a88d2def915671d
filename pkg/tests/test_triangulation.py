import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from mincusp.errors import ChainParityError, IdentityTwistError, ParityError
from mincusp.perm import S4, compose, inverse, sign
from mincusp.triangulation import (CUSP_PAIR, LEFT, RIGHT, T1A, T1B, T2A, T2B,
                                   Triangulation, build_chain, build_mk1k, build_mkk,
                                   close_chain, compute_edge_classes, disjoint_union,
                                   glue_ends, relabel, validate_minimal)


def test_perm_tables_are_a_group():
    for p in S4:
        assert compose(p, inverse(p)) == (0, 1, 2, 3)
        for q in S4:
            assert sign(compose(p, q)) == sign(p) * sign(q)


def test_chain_of_length_one():
    ch = build_chain(1)
    t = ch.triangulation
    assert len(t.tetra) == 2
    assert len(t.gluings) == 3     # the three cusp-pair faces, nothing finite
    table = compute_edge_classes(t)
    assert [c.incidence for c in table.cusp_classes] == [6]
    assert sorted(c.incidence for c in table.compact_classes) == [2, 2, 2]
    assert sorted(c.labels for c in table.compact_classes) == [("a",), ("b",), ("c",)]


@pytest.mark.parametrize("length", range(1, 17))
def test_label_order_agrees_iff_length_odd(length):
    ch = build_chain(length)
    assert len(ch.triangulation.tetra) == 2 * length
    assert ch.labels_agree() == (length % 2 == 1)


def test_close_chain_examples():
    t = close_chain(build_chain(2), LEFT)
    assert len(t.tetra) == 4
    assert compute_edge_classes(t).profile() == ((12,), (6, 6))
    with pytest.raises(ChainParityError):
        close_chain(build_chain(3), LEFT)
    t4 = close_chain(build_chain(4), RIGHT)
    assert len(t4.tetra) == 8
    assert compute_edge_classes(t4).profile() == ((24,), (6, 6, 6, 6))


def test_identity_twist_closure_is_not_minimal():
    ch = build_chain(4)
    with pytest.raises(IdentityTwistError):
        close_chain(ch, "identity")
    from mincusp.triangulation import closing_perm
    t = glue_ends(ch, closing_perm(ch, {"a": "a", "b": "b", "c": "c"}), {"g": 4, "k": 4})
    rep = validate_minimal(t, 4, 4)
    assert not rep.ok
    assert len(compute_edge_classes(t).compact_classes) == 3


@pytest.mark.parametrize("k", range(2, 17, 2))
@pytest.mark.parametrize("twist", [LEFT, RIGHT])
def test_mkk_validates(k, twist):
    assert validate_minimal(build_mkk(k, twist), k, k).ok


def test_mk1k_examples():
    t = build_mk1k(0, 1, T1A, T2A)
    assert len(t.tetra) == 3 and sum(x.compact for x in t.tetra) == 1
    assert compute_edge_classes(t).profile() == ((12,), (6,))
    with pytest.raises(ParityError):
        build_mk1k(2, 2)
    t = build_mk1k(1, 3, T1A, T2B)
    assert len(t.tetra) == 9
    assert compute_edge_classes(t).profile() == ((30,), (6, 6, 6, 6))
    assert compute_edge_classes(build_mk1k(0, 3)).profile() == ((24,), (6, 6, 6))


def test_mk1k_validates_for_all_admissible_partitions():
    from mincusp.census import admissible_partitions
    for k in range(1, 13):
        for i, j in admissible_partitions(k):
            for a in (T1A, T1B):
                for b in (T2A, T2B):
                    assert validate_minimal(build_mk1k(i, j, a, b), k + 1, k).ok, (i, j, a, b)


def test_disconnected_union_fails_validation():
    ch = build_chain(1)
    from mincusp.triangulation import closing_perm
    closed = glue_ends(ch, closing_perm(ch, {"a": "b", "b": "c", "c": "a"}))
    t = disjoint_union(closed, closed)
    rep = validate_minimal(t, 2, 2)
    assert not rep.ok and not rep.checks["connected"]


def test_slot_count():
    for t in (build_mkk(4), build_mk1k(1, 2), build_chain(3).triangulation):
        glued = 2 * len(t.gluings)
        assert glued + len(t.unglued_faces()) == 4 * len(t.tetra)


def test_every_gluing_is_orientation_reversing():
    for t in (build_mkk(2), build_mkk(4, RIGHT), build_mk1k(0, 1), build_mk1k(2, 5, T1B, T2B)):
        assert all(t.orientation_character(g) == -1 for g in t.gluings)
    for fa, fb, p in CUSP_PAIR:
        assert p[fa] == fb and p[3] == 3


def test_edge_classes_independent_of_gluing_order():
    rng = random.Random(7)
    for t in (build_mkk(4, RIGHT), build_mk1k(2, 3)):
        base = {frozenset(c.slots) for c in compute_edge_classes(t).classes}
        for _ in range(10):
            gl = list(t.gluings)
            rng.shuffle(gl)
            gl = [g.reversed() if rng.random() < 0.5 else g for g in gl]
            t2 = Triangulation(t.tetra, tuple(gl), t.meta)
            assert {frozenset(c.slots) for c in compute_edge_classes(t2).classes} == base


def test_json_round_trip_is_bit_exact():
    for t in (build_mkk(2), build_mkk(6, RIGHT), build_mk1k(3, 4, T1B, T2A)):
        s = t.to_json()
        t2 = Triangulation.from_json(s)
        assert t2 == t
        assert t2.to_json() == s
        d = json.loads(s)
        assert list(d) == ["tetra", "gluings", "meta"]
        assert all(len(g["map"]) == 3 for g in d["gluings"])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 4]), st.randoms(use_true_random=False))
def test_relabel_preserves_validity(k, rng):
    t = build_mkk(k, LEFT)
    order = list(range(len(t.tetra)))
    rng.shuffle(order)
    perms = []
    for x in t.tetra:
        # vertex maps must keep the ideal vertex at 3
        choices = [p for p in S4 if x.ideal_vertex is None or p[x.ideal_vertex] == 3]
        perms.append(rng.choice(choices))
    t2 = relabel(t, order, perms)
    assert validate_minimal(t2, k, k).ok
    assert compute_edge_classes(t2).profile() == compute_edge_classes(t).profile()
