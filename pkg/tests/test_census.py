import itertools
import random

import pytest

from mincusp import census as C
from mincusp.acceptance import MK1K_COUNTS, MKK_COUNTS, random_relabel
from mincusp.perm import S4, sign
from mincusp.triangulation import (LEFT, NONCOMPACT, RIGHT, T1A, T1B, T2A, T2B, FaceGluing,
                                   Tetra, Triangulation, build_chain, build_mk1k, build_mkk,
                                   compute_edge_classes)


def test_identity_witness():
    t = build_mkk(4)
    iso = C.is_isomorphic(t, t)
    assert iso is not None and C.check_iso(t, t, iso)


def test_left_right_witness_reverses_orientation():
    a, b = build_mkk(2, LEFT), build_mkk(2, RIGHT)
    iso = C.is_isomorphic(a, b)
    assert iso is not None and C.check_iso(a, b, iso)
    assert iso.character == -1
    assert iso.tet_map == tuple(range(4))


def test_witnesses_compose_and_invert():
    rng = random.Random(3)
    for k in range(1, 7):
        for t, _ in C.enumerate_family(C.MK1K, k):
            u = random_relabel(t, rng)
            v = random_relabel(t, rng)
            f, g = C.is_isomorphic(t, u), C.is_isomorphic(u, v)
            assert C.check_iso(u, t, f.inverse())
            assert C.check_iso(t, v, f.compose(g)) or C.check_iso(t, v, g.compose(f))


def test_distinct_partitions_are_not_isomorphic():
    assert C.is_isomorphic(build_mk1k(1, 4), build_mk1k(2, 3)) is None
    assert C.is_isomorphic(build_mk1k(1, 3, T1A, T2A), build_mk1k(1, 3, T1B, T2B)) is not None


@pytest.mark.parametrize("i,j", [(0, 1), (1, 2), (0, 3), (1, 4), (2, 3), (3, 3), (1, 6)])
def test_four_twist_variants_are_isomorphic(i, j):
    ts = [build_mk1k(i, j, a, b) for a in (T1A, T1B) for b in (T2A, T2B)]
    for t in ts[1:]:
        assert C.is_isomorphic(ts[0], t) is not None


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_mkk_automorphisms(k):
    grp = C.automorphism_group(build_mkk(k))
    assert grp.order == 6 * k
    assert grp.orientation_preserving_order == 3 * k
    assert grp.dihedral is not None
    r, t = grp.dihedral
    assert C.verify_dihedral(r, t, 3 * k)
    if k <= 4:
        assert grp.is_closed()


def test_mk1k_automorphism_examples():
    assert C.automorphism_group(build_mk1k(1, 3)).order == 1
    assert C.automorphism_group(build_mk1k(3, 3)).order == 2


def test_enumeration_examples():
    assert C.enumerate_family(C.MKK, 3) == []
    invs = [inv for _, inv in C.enumerate_family(C.MK1K, 5)]
    assert [(x.i, x.j) for x in invs] == [(0, 5), (1, 4), (2, 3)]
    invs = [inv for _, inv in C.enumerate_family(C.MK1K, 6)]
    assert [(x.i, x.j) for x in invs] == [(1, 5), (3, 3)]


@pytest.mark.parametrize("k", range(1, 9))
def test_counts_and_partitions(k):
    assert len(C.enumerate_family(C.MKK, k)) == MKK_COUNTS[k]
    invs = sorted((inv.i, inv.j) for _, inv in C.enumerate_family(C.MK1K, k))
    want = sorted((i, k - i) for i in range(k // 2 + 1) if i % 2 or (k - i) % 2)
    assert invs == want
    assert len(invs) == MK1K_COUNTS[k]


def test_partition_invariant_by_construction():
    assert (C.partition_invariant(build_mk1k(2, 3)).i,
            C.partition_invariant(build_mk1k(2, 3)).j) == (2, 3)
    assert (C.partition_invariant(build_mk1k(0, 1)).i,
            C.partition_invariant(build_mk1k(0, 1)).j) == (0, 1)


def test_edge_identification_parity():
    assert C.edge_identification_check("even", "even") == "disconnected"
    assert C.edge_identification_check("odd", "even") == "connected"
    assert C.edge_identification_check("odd", "odd") == "connected"


def test_canonical_form_is_relabel_invariant():
    rng = random.Random(11)
    for k in range(1, 6):
        for fam in (C.MKK, C.MK1K):
            for t, _ in C.enumerate_family(fam, k):
                h = C.canonical_hash(t)
                for _ in range(3):
                    assert C.canonical_hash(random_relabel(t, rng)) == h


def _cusp_pair_gluings():
    """Every orientation-reversing gluing of faces 0,1,2 of a (+) tet to those of a (-) tet."""
    fixing = [p for p in S4 if p[3] == 3]
    for faces_b in itertools.permutations(range(3)):
        for perms in itertools.product(fixing, repeat=3):
            gl = []
            ok = True
            for fa, fb, p in zip(range(3), faces_b, perms):
                if p[fa] != fb or sign(p) != 1:     # +1 * -1 * sign = -1
                    ok = False
                    break
                gl.append(FaceGluing(0, fa, 1, fb, p))
            if ok:
                yield tuple(gl)


def test_every_one_class_cusp_pair_matches_normal_form():
    """Oracle: all cusp-pair gluings with a single cusp edge class are the normal form."""
    tetra = (Tetra(0, NONCOMPACT, 3, 1), Tetra(1, NONCOMPACT, 3, -1))
    ref = build_chain(1).triangulation
    n = 0
    for gl in _cusp_pair_gluings():
        t = Triangulation(tetra, gl)
        table = compute_edge_classes(t)
        if len(table.cusp_classes) != 1:
            continue
        n += 1
        assert C.is_isomorphic(t, ref) is not None
    assert n > 0


def test_graph_gm_is_wedge_of_two_cycles():
    gm = C.graph_gm(build_mk1k(2, 5))
    assert sorted(C.wedge_cycle_lengths(gm)) == [2, 5]


@pytest.mark.parametrize("family,k", [(C.MKK, 1), (C.MKK, 2), (C.MK1K, 1), (C.MK1K, 2)])
def test_brute_force_symmetry_reduction_agrees(family, k):
    a = C.brute_force_census(family, k, use_symmetry=True)
    b = C.brute_force_census(family, k, use_symmetry=False)
    assert a.count == b.count
    assert {C.canonical_form(t) for t in a.classes} == {C.canonical_form(t) for t in b.classes}


@pytest.mark.parametrize("family,k,want", [(C.MKK, 2, 1), (C.MKK, 3, 0), (C.MK1K, 3, 2)])
def test_brute_force_examples(family, k, want):
    res = C.brute_force_census(family, k)
    assert res.count == want
    constructive = {C.canonical_form(t) for t, _ in C.enumerate_family(family, k)}
    assert {C.canonical_form(t) for t in res.classes} == constructive


def test_brute_force_budget_guard():
    from mincusp.errors import SearchBudgetExceeded
    with pytest.raises(SearchBudgetExceeded):
        C.brute_force_census(C.MK1K, 6, budget=10)


def test_census_rows_columns():
    rows = C.census_rows(C.MK1K, 3)
    assert [r["class_index"] for r in rows] == [0, 1]
    assert set(rows[0]) == {"k", "family", "class_index", "i", "j", "aut_order",
                            "aut_or_preserving", "canonical_hash"}
