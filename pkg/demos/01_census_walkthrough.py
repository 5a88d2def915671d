"""Census walkthrough: build the two families, count classes, check a few by brute force.

Run:  python3 demos/01_census_walkthrough.py
"""
from mincusp import census as C
from mincusp.triangulation import LEFT, RIGHT, build_mkk

# M_{k,k} exists only for even k; the left and right closures of the chain agree
for k in (2, 4):
    a, b = build_mkk(k, LEFT), build_mkk(k, RIGHT)
    iso = C.is_isomorphic(a, b)
    print(f"k={k}: M_L ~ M_R via a map of character {iso.character:+d}")

print()
print(" k  |M_kk|  |M_k+1,k|  partitions")
for k in range(1, 9):
    kk = C.enumerate_family(C.MKK, k)
    k1 = C.enumerate_family(C.MK1K, k)
    parts = ", ".join(f"({inv.i},{inv.j})" for _, inv in k1)
    print(f"{k:2d}  {len(kk):6d}  {len(k1):9d}  {parts}")

# every class found by construction is found by the exhaustive search, and nothing else
print()
for fam, k in [(C.MKK, 2), (C.MK1K, 3)]:
    res = C.brute_force_census(fam, k)
    built = {C.canonical_form(t) for t, _ in C.enumerate_family(fam, k)}
    same = {C.canonical_form(t) for t in res.classes} == built
    print(f"brute force {fam} k={k}: {res.count} classes, matches construction: {same}")

grp = C.automorphism_group(build_mkk(4))
print(f"\n|Aut M_4| = {grp.order}, orientation preserving {grp.orientation_preserving_order}")
