"""Dehn filling on the dual spine of M_2, step by step, then all slopes up to k = 4.

Run:  python3 demos/02_dehn_filling.py
"""
from mincusp import census as C
from mincusp import spine as S
from mincusp.triangulation import LEFT, RIGHT, build_mk1k, build_mkk

t = build_mkk(2)
s = S.dualize(t)
print("spine of M_2: |V|,|E|,|F| =", s.counts(), " chi =", s.euler_characteristic())
bw = S.big_face_word(s)
print("big face (diamonds):", " ".join(bw.canonical_diamonds))

filled, tr = S.dehn_fill(t, 1, S.MODEL_SLOPE, model=True)
print(f"\nslope {tr.slope} on cusp {tr.cusp}")
print("  normal coordinates in the hexagon:", tr.counts)
print("  intersection points:", len(tr.points))
print("  pieces of the hexagon after cutting:", len(tr.j_faces))
print("  removed piece contains a whole spine edge:", tr.removed_has_full_edge)
print("  vertices deleted while collapsing:", len(tr.deleted_vertices))
print("  final |V|,|E|,|F| =", tr.final_counts)
print("  replay gives the same complex:",
      S.replay_transcript(t, tr).signature() == tr.final_spine.signature())
print("  result is M(0,1):", C.is_isomorphic(filled, build_mk1k(0, 1)) is not None)

print()
for k in (2, 4):
    ref = build_mk1k(0, k - 1)
    ok = total = 0
    for tw in (LEFT, RIGHT):
        for cusp in range(1, k + 1):
            for sl in S.THEOREM_SLOPES:
                f, _ = S.dehn_fill(build_mkk(k, tw), cusp, sl)
                total += 1
                ok += C.is_isomorphic(f, ref) is not None
    print(f"k={k}: {ok}/{total} fillings give the (0,{k - 1}) member")
