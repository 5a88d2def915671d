import json

import pytest

from mincusp import census as C
from mincusp import spine as S
from mincusp.errors import NoBigFace, UnsupportedSlope, ValidationError
from mincusp.triangulation import (LEFT, RIGHT, build_mk1k, build_mkk,
                                   compute_edge_classes, validate_minimal)


def test_dual_of_M2():
    s = S.dualize(build_mkk(2))
    assert s.counts() == (4, 8, 3)
    assert s.euler_characteristic() == -1
    assert s.is_special()


@pytest.mark.parametrize("k", [2, 4, 6])
def test_big_face_diamond_words(k):
    n = 2 * k
    A = tuple(f"A{i}" for i in range(1, n + 1))
    B = tuple(f"B{i}" for i in range(1, n + 1))
    Cw = tuple(f"C{i}" for i in range(1, n + 1))
    assert S.big_face_word(S.dualize(build_mkk(k, LEFT))).canonical_diamonds == A + B + Cw
    assert S.big_face_word(S.dualize(build_mkk(k, RIGHT))).canonical_diamonds == A + Cw + B


def test_big_face_vertex_word_M2():
    bw = S.big_face_word(S.dualize(build_mkk(2)))
    assert bw.canonical_vertices == ("v1", "v2", "v3", "v4") * 3


def test_big_face_of_M01_alternates():
    bw = S.big_face_word(S.dualize(build_mk1k(0, 1)))
    assert len(bw) == 12
    kinds = ["E" if d.startswith("E") else "chain" for d in bw.diamonds]
    runs = [k for i, k in enumerate(kinds) if i == 0 or kinds[i - 1] != k]
    if kinds[0] == kinds[-1]:
        runs = runs[1:]
    assert all(runs[i] != runs[i + 1] for i in range(len(runs) - 1))
    assert "E" in runs and "chain" in runs


def test_no_big_face():
    s = S.dualize(build_mkk(2))
    f, _ = s.big_face()
    s.remove_face(f)
    with pytest.raises(NoBigFace):
        S.big_face_word(s)


@pytest.mark.parametrize("k", range(1, 9))
def test_duality_counts(k):
    for fam in (C.MKK, C.MK1K):
        for t, _ in C.enumerate_family(fam, k):
            s = S.dualize(t)
            assert s.counts() == (len(t.tetra), len(t.gluings),
                                  len(compute_edge_classes(t).classes))
            g = t.meta["g"]
            assert s.euler_characteristic() == 1 - g
            assert len(S.big_face_word(s)) == 6 * g
            assert all(len(f.word) == 6 for _, f in s.hexagonal_faces())


def test_redualize_round_trip():
    for t in (build_mkk(2), build_mkk(4, RIGHT), build_mk1k(1, 2), build_mk1k(0, 5)):
        back = S.redualize(S.dualize(t), t.meta["g"], t.meta["k"])
        assert C.is_isomorphic(back, t) is not None


def test_slope_normal_coordinates():
    assert S.model_counts(S.MODEL_SLOPE) == (1, 2, 0)
    coords = {str(sl): S.internal_counts(sl) for sl in S.THEOREM_SLOPES}
    assert sorted(coords.values()) == sorted(
        [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)])
    assert S.hexagon_counts(2, -1) == (2, 1, 0)
    assert S.hexagon_counts(3, 1) == (2, 0, 1)
    assert S.hexagon_counts(1, 3) == (0, 2, 1)
    assert S.hexagon_counts(0, 1) == (0, 1, 0)


def test_slope_parsing():
    assert S.SlopeCurve.parse("-1/2") == S.SlopeCurve(-1, 2)
    assert S.SlopeCurve(1, -2) == S.SlopeCurve(-1, 2)
    with pytest.raises(ValidationError):
        S.SlopeCurve(2, 4)


def test_basis_calibration():
    cal = S.calibrate_basis(2)
    assert cal["negate"] and cal["swap_negate"]
    assert not cal["identity"] and not cal["swap"]


def test_model_surgery_transcript():
    t = build_mkk(2)
    filled, tr = S.dehn_fill(t, 1, S.MODEL_SLOPE, model=True)
    assert len(tr.points) == 3
    assert len(tr.j_faces) == 4
    assert tr.final_counts == (3, 6, 2)
    assert tr.final_counts[0] - tr.final_counts[1] + tr.final_counts[2] == -1
    assert len(tr.deleted_vertices) == 4
    # J2, J3, J4, D and G merge into G'
    assert len(tr.merged_faces) == 5
    assert validate_minimal(filled, 2, 1).ok


def test_transcript_replay_is_cell_for_cell():
    for k, cusp, sl in [(2, 1, S.MODEL_SLOPE), (4, 3, S.THEOREM_SLOPES[2])]:
        t = build_mkk(k)
        _, tr = S.dehn_fill(t, cusp, sl, model=(sl == S.MODEL_SLOPE and k == 2))
        assert S.replay_transcript(t, tr).signature() == tr.final_spine.signature()


@pytest.mark.parametrize("k", [2, 4])
def test_theorem_slopes_fill_to_trivial_partition(k):
    ref = build_mk1k(0, k - 1)
    for tw in (LEFT, RIGHT):
        t = build_mkk(k, tw)
        for cusp in range(1, k + 1):
            for sl in S.THEOREM_SLOPES:
                filled, _ = S.dehn_fill(t, cusp, sl)
                assert C.is_isomorphic(filled, ref) is not None, (tw, cusp, str(sl))
                inv = C.partition_invariant(filled)
                assert (inv.i, inv.j) == (0, k - 1)


def test_k6_fillings_validate():
    t = build_mkk(6)
    hashes = set()
    for cusp in (1, 4):
        for sl in S.THEOREM_SLOPES:
            filled, _ = S.dehn_fill(t, cusp, sl)
            assert validate_minimal(filled, 6, 5).ok
            inv = C.partition_invariant(filled)
            assert (inv.i, inv.j) == (0, 5)
            hashes.add(C.canonical_hash(filled))
    assert len(hashes) == 1


def test_unsupported_slopes():
    t = build_mkk(2)
    with pytest.raises(UnsupportedSlope):
        S.dehn_fill(t, 1, S.SlopeCurve(1, 1))
    with pytest.raises(UnsupportedSlope):
        S.dehn_fill(t, 1, S.SlopeCurve(3, 1), model=True)
    with pytest.raises(ValidationError):
        S.dehn_fill(t, 3, S.THEOREM_SLOPES[0])
    with pytest.raises(ValidationError):
        S.dehn_fill(build_mk1k(0, 1), 1, S.THEOREM_SLOPES[0])


def test_exports():
    s = S.dualize(build_mkk(2))
    d = json.loads(json.dumps(s.to_dict()))
    assert len(d["vertices"]) == 4 and len(d["edges"]) == 8 and len(d["faces"]) == 3
    dot = S.big_face_dot(s)
    assert dot.startswith("graph") and dot.count(" -- ") == 12
    svg = S.big_face_svg(s)
    assert svg.startswith("<svg") and svg.count("<text") == 12
