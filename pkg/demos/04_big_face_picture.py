"""Draw the big face of the spine of M_L(k) and M_R(k) as SVG files.

Run:  python3 demos/04_big_face_picture.py [k] [outdir]
"""
import pathlib
import sys

from mincusp import spine as S
from mincusp.triangulation import LEFT, RIGHT, build_mkk

k = int(sys.argv[1]) if len(sys.argv) > 1 else 2
out = pathlib.Path(sys.argv[2] if len(sys.argv) > 2 else ".")
out.mkdir(parents=True, exist_ok=True)

for tw, name in ((LEFT, "L"), (RIGHT, "R")):
    s = S.dualize(build_mkk(k, tw))
    word = S.big_face_word(s)
    path = out / f"big_face_M{name}_{k}.svg"
    path.write_text(S.big_face_svg(s))
    print(f"M_{name}({k}): {len(word)}-gon, blocks of {2 * k}:",
          " | ".join(" ".join(word.canonical_diamonds[i:i + 2 * k])
                     for i in range(0, len(word), 2 * k)))
    print("  written", path)
