"""Dual spines of minimal triangulations and the Dehn-filling spine surgery.

A spine is stored as a general 2-complex: vertices, edges with a tail and a
head vertex, and faces given by cyclic words of oriented edges ``(e, +1/-1)``.
Edge ends are ``(e, "t")`` / ``(e, "h")``.  At a vertex, consecutive letters
of a face word meet in a *corner*, the pair of edge ends they use there.
For the dual spine of a triangulation the edge ends at the vertex of tet
``v`` are its four faces, and the corner between ends ``f1, f2`` is the
diamond of the tet edge complementary to ``{f1, f2}``.
"""
from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (NoBigFace, NormalPositionError, SurgeryError, UnsupportedSlope,
                     ValidationError)
from .perm import sign
from .triangulation import (COMPACT, EDGES, NONCOMPACT, FaceGluing, Tetra, Triangulation,
                            _two_colour, compute_edge_classes, edge_index, relabel,
                            validate_minimal)

BIG = "BigFace"
HEX = "Hexagonal"
OTHER = "Other"

Letter = Tuple[int, int]


def _in_end(letter: Letter):
    e, o = letter
    return (e, "h" if o == 1 else "t")


def _out_end(letter: Letter):
    e, o = letter
    return (e, "t" if o == 1 else "h")


@dataclass
class Face:
    word: List[Letter]
    tag: str
    label: str = ""
    index: Optional[int] = None      # cusp index for hexagonal faces
    diamonds: Optional[List[str]] = None


class SpineComplex:
    """Mutable 2-complex with a log of every surgery primitive applied."""

    def __init__(self):
        self.vertices: Dict[int, str] = {}
        self.edges: Dict[int, List] = {}      # id -> [tail, head, label]
        self.faces: Dict[int, Face] = {}
        self.log: List[Tuple[str, tuple]] = []
        self._next = {"v": 0, "e": 0, "f": 0}

    # -- bookkeeping ------------------------------------------------------
    def _new(self, kind: str) -> int:
        i = self._next[kind]
        self._next[kind] += 1
        return i

    def add_vertex(self, label: str = "") -> int:
        v = self._new("v")
        self.vertices[v] = label or f"v{v}"
        return v

    def add_edge(self, tail: int, head: int, label: str = "") -> int:
        e = self._new("e")
        self.edges[e] = [tail, head, label or f"e{e}"]
        return e

    def new_face(self, word, tag, label="", index=None, diamonds=None) -> int:
        f = self._new("f")
        self.faces[f] = Face(list(word), tag, label or f"F{f}", index, diamonds)
        return f

    def copy(self) -> "SpineComplex":
        return copy.deepcopy(self)

    # -- queries ------------------------------------------------------------
    def start(self, letter: Letter) -> int:
        e, o = letter
        return self.edges[e][0] if o == 1 else self.edges[e][1]

    def end(self, letter: Letter) -> int:
        e, o = letter
        return self.edges[e][1] if o == 1 else self.edges[e][0]

    def counts(self) -> Tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    def edge_occurrences(self, e: int) -> List[Tuple[int, int]]:
        return [(f, m) for f, face in sorted(self.faces.items())
                for m, (x, _) in enumerate(face.word) if x == e]

    def edge_valence(self, e: int) -> int:
        return len(self.edge_occurrences(e))

    def vertex_ends(self, v: int) -> List[Tuple[int, str]]:
        ends = []
        for e, (t, h, _) in sorted(self.edges.items()):
            if t == v:
                ends.append((e, "t"))
            if h == v:
                ends.append((e, "h"))
        return ends

    def corners(self) -> List[Tuple[int, int, int, tuple, tuple]]:
        """(face, position, vertex, in_end, out_end) for every corner."""
        out = []
        for f, face in sorted(self.faces.items()):
            w = face.word
            for m in range(len(w)):
                prev = w[m - 1]
                out.append((f, m, self.start(w[m]), _in_end(prev), _out_end(w[m])))
        return out

    def check_words(self):
        for f, face in self.faces.items():
            w = face.word
            for m in range(len(w)):
                if self.end(w[m - 1]) != self.start(w[m]):
                    raise SurgeryError(f"face {f} word is not a closed path")

    def is_special(self) -> bool:
        """Every vertex 4-valent with the six corner pairs each used once; edges 3-valent."""
        if any(self.edge_valence(e) != 3 for e in self.edges):
            return False
        by_vertex: Dict[int, List[frozenset]] = {v: [] for v in self.vertices}
        for _, _, v, a, b in self.corners():
            by_vertex[v].append(frozenset((a, b)))
        for v in self.vertices:
            ends = self.vertex_ends(v)
            if len(ends) != 4:
                return False
            pairs = by_vertex[v]
            if len(pairs) != 6 or len(set(pairs)) != 6:
                return False
            if any(len(p) != 2 for p in pairs):
                return False
        return True

    # -- primitives (each logged) -----------------------------------------
    def subdivide_edge(self, e: int, n: int) -> Tuple[List[int], List[int]]:
        """Insert n vertices on e; returns (new vertices, sub-edges tail->head)."""
        self.log.append(("subdivide_edge", (e, n)))
        tail, head, label = self.edges.pop(e)
        pts = [self.add_vertex(f"{label}.p{i + 1}") for i in range(n)]
        chain = [tail] + pts + [head]
        subs = [self.add_edge(chain[i], chain[i + 1], f"{label}.{i}") for i in range(n + 1)]
        for face in self.faces.values():
            new = []
            for x, o in face.word:
                if x != e:
                    new.append((x, o))
                elif o == 1:
                    new.extend((s, 1) for s in subs)
                else:
                    new.extend((s, -1) for s in reversed(subs))
            face.word = new
        return pts, subs

    def add_arc(self, f: int, i: int, j: int, label: str = "") -> Tuple[int, int, int]:
        """Split face f by a new edge from the corner at position i to the one at j."""
        self.log.append(("add_arc", (f, i, j, label)))
        face = self.faces.pop(f)
        w = face.word
        if i == j:
            raise SurgeryError("arc endpoints coincide")
        if i > j:
            i, j = j, i
        e = self.add_edge(self.start(w[i]), self.start(w[j]), label)
        fa = self.new_face(w[i:j] + [(e, -1)], face.tag, face.label + "a", face.index)
        fb = self.new_face(w[j:] + w[:i] + [(e, 1)], face.tag, face.label + "b", face.index)
        return e, fa, fb

    def add_face(self, word: Sequence[Letter], tag: str = OTHER, label: str = "") -> int:
        self.log.append(("add_face", (tuple(word), tag, label)))
        return self.new_face(word, tag, label)

    def remove_face(self, f: int):
        self.log.append(("remove_face", (f,)))
        del self.faces[f]

    def erase_edge(self, e: int) -> int:
        """Merge the two distinct faces meeting along a 2-valent edge."""
        occ = self.edge_occurrences(e)
        if len(occ) != 2 or occ[0][0] == occ[1][0]:
            raise SurgeryError(f"edge {e} is not a 2-valent edge between distinct faces")
        self.log.append(("erase_edge", (e,)))
        (f1, m1), (f2, m2) = occ
        F1, F2 = self.faces.pop(f1), self.faces.pop(f2)
        w1 = F1.word[m1 + 1:] + F1.word[:m1]
        o1 = F1.word[m1][1]
        w2 = F2.word[m2 + 1:] + F2.word[:m2]
        if F2.word[m2][1] == o1:
            w2 = [(x, -o) for x, o in reversed(w2)]
        del self.edges[e]
        tag = BIG if BIG in (F1.tag, F2.tag) else F1.tag
        label = F1.label if F1.tag == BIG or F2.tag != BIG else F2.label
        return self.new_face(w1 + w2, tag, label)

    def erase_vertex(self, v: int) -> int:
        """Remove a 2-valent vertex, concatenating its two edges."""
        ends = self.vertex_ends(v)
        if len(ends) != 2 or ends[0][0] == ends[1][0]:
            raise SurgeryError(f"vertex {v} is not 2-valent with distinct edges")
        self.log.append(("erase_vertex", (v,)))
        (e1, s1), (e2, s2) = ends
        # orient e1 towards v and e2 away from v
        o1 = 1 if s1 == "h" else -1
        o2 = 1 if s2 == "t" else -1
        a = self.start((e1, o1))
        b = self.end((e2, o2))
        lab = self.edges[e1][2] + "+" + self.edges[e2][2]
        del self.edges[e1]
        del self.edges[e2]
        del self.vertices[v]
        e = self.add_edge(a, b, lab)
        for face in self.faces.values():
            w = face.word
            if not any(x in (e1, e2) for x, _ in w):
                continue
            # rotate so no e1/e2 pair straddles the end of the word
            r = next(m for m in range(len(w)) if w[m][0] not in (e1, e2))
            w = w[r:] + w[:r]
            new = []
            m = 0
            while m < len(w):
                x, o = w[m]
                if (x, o) == (e1, o1):
                    if w[m + 1] != (e2, o2):
                        raise SurgeryError("edges of an erased vertex are not consecutive")
                    new.append((e, 1))
                    m += 2
                elif (x, o) == (e2, -o2):
                    if w[m + 1] != (e1, -o1):
                        raise SurgeryError("edges of an erased vertex are not consecutive")
                    new.append((e, -1))
                    m += 2
                elif x in (e1, e2):
                    raise SurgeryError("inconsistent orientation at an erased vertex")
                else:
                    new.append((x, o))
                    m += 1
            face.word = new
        return e

    def collapse_free_edge(self, e: int):
        occ = self.edge_occurrences(e)
        if len(occ) != 1:
            raise SurgeryError(f"edge {e} is not free")
        self.log.append(("collapse_free_edge", (e,)))
        del self.faces[occ[0][0]]
        del self.edges[e]

    def delete_edge(self, e: int):
        if self.edge_occurrences(e):
            raise SurgeryError(f"edge {e} still bounds a face")
        self.log.append(("delete_edge", (e,)))
        del self.edges[e]

    def delete_vertex(self, v: int):
        if self.vertex_ends(v):
            raise SurgeryError(f"vertex {v} is not isolated")
        self.log.append(("delete_vertex", (v,)))
        del self.vertices[v]

    def reduce(self) -> List[Tuple[str, int]]:
        """Erase 2-valent edges, free edges and 2-valent vertices until none remain."""
        done = []
        while True:
            step = None
            for e in sorted(self.edges):
                occ = self.edge_occurrences(e)
                if len(occ) == 2 and occ[0][0] != occ[1][0]:
                    step = ("erase_edge", e)
                elif len(occ) == 1:
                    step = ("collapse_free_edge", e)
                elif not occ:
                    step = ("delete_edge", e)
                if step:
                    break
            if step is None:
                for v in sorted(self.vertices):
                    ends = self.vertex_ends(v)
                    if len(ends) == 2 and ends[0][0] != ends[1][0]:
                        step = ("erase_vertex", v)
                    elif not ends:
                        step = ("delete_vertex", v)
                    if step:
                        break
            if step is None:
                return done
            getattr(self, step[0])(step[1])
            done.append(step)

    def replay(self, log) -> "SpineComplex":
        """Apply a primitive log to a copy of this complex."""
        out = self.copy()
        out.log = []
        for name, args in log:
            if name == "add_face":
                word, tag, label = args
                out.add_face(list(word), tag, label)
            else:
                getattr(out, name)(*args)
        return out

    def signature(self):
        """Cell-for-cell description used to compare complexes."""
        return (sorted(self.vertices), sorted((e, t, h) for e, (t, h, _) in self.edges.items()),
                sorted((f, tuple(face.word), face.tag) for f, face in self.faces.items()))

    # -- export -------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v, "label": lab} for v, lab in sorted(self.vertices.items())],
            "edges": [{"id": e, "tail": t, "head": h, "label": lab}
                      for e, (t, h, lab) in sorted(self.edges.items())],
            "faces": [{"id": f, "tag": face.tag, "label": face.label,
                       "word": [[x, o] for x, o in face.word],
                       **({"diamonds": face.diamonds} if face.diamonds else {})}
                      for f, face in sorted(self.faces.items())],
        }

    def big_face(self) -> Tuple[int, Face]:
        for f, face in sorted(self.faces.items()):
            if face.tag == BIG:
                return f, face
        raise NoBigFace("complex has no big face")

    def hexagonal_faces(self) -> List[Tuple[int, Face]]:
        return [(f, face) for f, face in sorted(self.faces.items()) if face.tag == HEX]


# ---------------------------------------------------------------------------
# dualization

def _diamond_name(t: Triangulation, slot) -> str:
    lab = t.edge_labels.get(slot)
    if lab is None:
        lab = "x"
    if lab.startswith("E"):
        return lab
    return f"{lab.upper()}{slot[0] + (0 if any(x.compact for x in t.tetra) else 1)}"


def dualize(t: Triangulation) -> SpineComplex:
    """Spine dual to a closed triangulation: vertex per tet, edge per gluing,
    face per edge class with its boundary word read around the class."""
    if t.unglued_faces():
        raise ValidationError("dualize needs every face glued")
    s = SpineComplex()
    for x in t.tetra:
        s.add_vertex(f"v{x.id + (0 if any(y.compact for y in t.tetra) else 1)}")
    from .census import cusp_pairs
    pairs = cusp_pairs(t)
    pair_of = {}
    for i, (a, b) in enumerate(pairs, start=1):
        pair_of[a] = pair_of[b] = (i, a)
    glue_edge = {}
    for g in t.gluings:
        if g.tet_a in pair_of and pair_of[g.tet_a] == pair_of.get(g.tet_b) \
                and g.face_a != 3 and g.face_b != 3:
            i, a = pair_of[g.tet_a]
            face_of_a = g.face_a if g.tet_a == a else g.face_b
            label = f"e^{i}_{face_of_a + 1}"
        else:
            label = f"e^{{{g.tet_a},{g.tet_b}}}"
        e = s.add_edge(g.tet_a, g.tet_b, label)
        glue_edge[g.slot_a] = (e, 1)
        glue_edge[g.slot_b] = (e, -1)
    pm = t.partner_map()
    table = compute_edge_classes(t)
    for c in table.classes:
        start = c.slots[0]
        tet, ei = start
        u, w = EDGES[ei]
        faces = sorted(set(range(4)) - {u, w})
        word, diamonds = [], []
        cur_tet, cur_edge, out_face = tet, (u, w), faces[0]
        for _ in range(4 * len(c.slots) + 4):
            diamonds.append(_diamond_name(t, (cur_tet, edge_index(*cur_edge))))
            word.append(glue_edge[(cur_tet, out_face)])
            nt, nf, p = pm[(cur_tet, out_face)]
            ne = (p[cur_edge[0]], p[cur_edge[1]])
            other = sorted(set(range(4)) - set(ne) - {nf})[0]
            cur_tet, cur_edge, out_face = nt, tuple(sorted(ne)), other
            if (cur_tet, edge_index(*cur_edge)) == start and out_face == faces[0]:
                break
        else:
            raise SurgeryError("edge-class walk did not close")
        if c.compact:
            s.new_face(word, BIG, "G", diamonds=diamonds)
        else:
            i = pair_of[c.slots[0][0]][0]
            s.new_face(word, HEX, f"H{i}", index=i, diamonds=diamonds)
    s.check_words()
    return s


# ---------------------------------------------------------------------------
# big face word

@dataclass
class BigFaceWord:
    vertices: Tuple[str, ...]
    diamonds: Tuple[str, ...]

    @staticmethod
    def _canon(seq):
        n = len(seq)
        return min(tuple(seq[r:]) + tuple(seq[:r]) for r in range(n)) if n else ()

    @property
    def canonical_vertices(self):
        return self._canon(self.vertices)

    @property
    def canonical_diamonds(self):
        return self._canon(self.diamonds)

    def __len__(self):
        return len(self.diamonds)


def big_face_word(s: SpineComplex) -> BigFaceWord:
    _, face = s.big_face()
    verts = tuple(s.vertices[s.start(l)] for l in face.word)
    return BigFaceWord(verts, tuple(face.diamonds or ()))


# ---------------------------------------------------------------------------
# slopes

@dataclass(frozen=True)
class SlopeCurve:
    p: int
    q: int

    def __post_init__(self):
        if gcd(abs(self.p), abs(self.q)) != 1:
            raise ValidationError(f"slope {self.p}/{self.q} is not in lowest terms")
        if self.q < 0 or (self.q == 0 and self.p != 1):
            p, q = (-self.p, -self.q) if self.q != 0 else (1, 0)
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "SlopeCurve":
        fr = Fraction(text)
        return cls(fr.numerator, fr.denominator)

    def __str__(self):
        return f"{self.p}/{self.q}" if self.q != 1 else f"{self.p}"

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


THEOREM_SLOPES = tuple(SlopeCurve.parse(x) for x in ("-2", "-1/2", "1/3", "2/3", "3/2", "3"))
MODEL_SLOPE = SlopeCurve(1, 2)
MODEL_COUNTS = (1, 2, 0)


def hexagon_counts(a: int, b: int) -> Tuple[int, int, int]:
    """Intersections of the class a*t1 + b*t2 with the hexagon sides e1, e2, e3.

    t_j is the step across e_j, t1 + t2 + t3 = 0; a normal curve crosses at
    most two of the three edge classes."""
    if a * b <= 0:
        return (abs(a), abs(b), 0)
    if abs(a) >= abs(b):
        return (abs(a) - abs(b), 0, abs(b))
    return (0, abs(b) - abs(a), abs(a))


# candidate changes of basis (p, q) -> internal (a, b)
BASIS_MAPS = {
    "identity": lambda p, q: (p, q),
    "negate": lambda p, q: (-p, q),
    "swap": lambda p, q: (q, p),
    "swap_negate": lambda p, q: (-q, p),
}


def internal_counts(slope: SlopeCurve, basis: str = "negate") -> Tuple[int, int, int]:
    """Normal coordinates of a slope given in theorem coordinates.

    Internal coordinates are those of the worked model slope (1/2 meets e1
    once and e2 twice); ``basis`` maps theorem slopes into them."""
    a, b = BASIS_MAPS[basis](slope.p, slope.q)
    return hexagon_counts(-a, b)


def model_counts(slope: SlopeCurve) -> Tuple[int, int, int]:
    """Counts of a slope given directly in internal (model) coordinates."""
    return hexagon_counts(-slope.p, slope.q)


# ---------------------------------------------------------------------------
# re-dualization

def redualize(s: SpineComplex, g: Optional[int] = None, k: Optional[int] = None) -> Triangulation:
    """Triangulation dual to a special spine; ideal vertices read from the
    hexagonal (non-big) faces."""
    if not s.is_special():
        raise SurgeryError("spine is not special")
    verts = sorted(s.vertices)
    tet_of = {v: i for i, v in enumerate(verts)}
    slot = {}
    for v in verts:
        for n, end in enumerate(s.vertex_ends(v)):
            slot[(v, end)] = n
    corner_face = {}
    for f, m, v, a, b in s.corners():
        corner_face[(v, frozenset((slot[(v, a)], slot[(v, b)])))] = f
    # gluings
    gl = []
    for e in sorted(s.edges):
        tail, head, _ = s.edges[e]
        st, sh = slot[(tail, (e, "t"))], slot[(head, (e, "h"))]
        perm = {st: sh}
        for f, m in s.edge_occurrences(e):
            w = s.faces[f].word
            prev, nxt = w[m - 1], w[(m + 1) % len(w)]
            o = w[m][1]
            if o == 1:
                a = slot[(tail, _in_end(prev))]
                b = slot[(head, _out_end(nxt))]
            else:
                b = slot[(head, _in_end(prev))]
                a = slot[(tail, _out_end(nxt))]
            if perm.get(a, b) != b:
                raise SurgeryError(f"inconsistent vertex map across edge {e}")
            perm[a] = b
        if sorted(perm) != [0, 1, 2, 3] or sorted(perm.values()) != [0, 1, 2, 3]:
            raise SurgeryError(f"edge {e} does not induce a face bijection")
        gl.append(FaceGluing(tet_of[tail], st, tet_of[head], sh,
                             tuple(perm[i] for i in range(4))))
    # ideal vertices: all three corners avoiding the slot lie off the big face
    tetra = []
    perms = []
    for v in verts:
        ideal = []
        for x in range(4):
            others = [y for y in range(4) if y != x]
            if all(s.faces[corner_face[(v, frozenset(pr))]].tag != BIG
                   for pr in itertools.combinations(others, 2)):
                ideal.append(x)
        if len(ideal) > 1:
            raise SurgeryError(f"vertex {v} has {len(ideal)} ideal candidates")
        if ideal:
            x = ideal[0]
            vp = tuple(3 if y == x else (x if y == 3 else y) for y in range(4))
            tetra.append(Tetra(tet_of[v], NONCOMPACT, x))
        else:
            vp = (0, 1, 2, 3)
            tetra.append(Tetra(tet_of[v], COMPACT, None))
        perms.append(vp)
    raw = Triangulation(tuple(tetra), tuple(gl))
    t = relabel(raw, list(range(len(verts))), perms)
    signs = _two_colour(t.n, t.gluings)
    meta = {}
    if g is not None:
        meta["g"] = g
    if k is not None:
        meta["k"] = k
    return Triangulation(tuple(Tetra(x.id, x.kind, x.ideal_vertex, signs[x.id]) for x in t.tetra),
                         t.gluings, meta)


# ---------------------------------------------------------------------------
# Dehn filling

@dataclass
class SurgeryTranscript:
    cusp: int
    slope: str
    counts: Tuple[int, int, int]
    points: List[int]
    arcs: List[int]
    disk: int
    j_faces: List[int]
    removed: int
    removed_has_full_edge: bool
    matching: Tuple[Tuple[int, int], ...]
    merged_faces: List[int]
    deleted_edges: List[int]
    deleted_vertices: List[int]
    new_edges: List[int]
    final_counts: Tuple[int, int, int]
    log: List[Tuple[str, tuple]] = field(default_factory=list)
    candidates: int = 0
    alternatives: int = 0


def _hex_sides(s: SpineComplex, f: int):
    """Sides e1, e2, e3 of a hexagon whose word is x1 x2 x3 x1^-1 x2^-1 x3^-1
    (each x_i an oriented edge), rotated to start at the lowest positive edge."""
    w = s.faces[f].word
    if len(w) != 6:
        raise NormalPositionError(f"face {f} is not a hexagon")
    r = min(range(6), key=lambda m: (w[m][1] != 1, w[m][0]))
    w = w[r:] + w[:r]
    if any(w[m + 3] != (w[m][0], -w[m][1]) for m in range(3)):
        raise NormalPositionError(f"hexagon word {w} does not repeat its sides reversed")
    return [x for x, _ in w[:3]]


def _matchings(n: int):
    """Non-crossing perfect matchings of 0..n-1 on a circle."""
    if n == 0:
        yield ()
        return
    for j in range(1, n, 2):
        for inner in _matchings(j - 1):
            for outer in _matchings(n - j - 1):
                yield ((0, j),) + tuple((a + 1, b + 1) for a, b in inner) + \
                      tuple((a + j + 1, b + j + 1) for a, b in outer)


def _fill_candidates(P: SpineComplex, hex_face: int, counts):
    """Spines after laying the curve, adding D and removing one piece of H."""
    sides = _hex_sides(P, hex_face)
    base = P.copy()
    base.log = []
    points = []
    side_of_point = {}
    for side, (e, n) in enumerate(zip(sides, counts)):
        if n:
            pts, _ = base.subdivide_edge(e, n)
            points.extend(pts)
            for x in pts:
                side_of_point[x] = side
    if not points:
        raise NormalPositionError("slope misses the hexagon")
    # corner occurrences of points on the hexagon, in cyclic order
    w = base.faces[hex_face].word
    occ = []   # (position, point, side occurrence index)
    side_idx = -1
    for m in range(len(w)):
        v = base.start(w[m])
        if v in side_of_point:
            occ.append((m, v))
    # which of the six sides each position belongs to
    pos_side = []
    cur = -1
    orig_of = {}
    for e, (t, h, lab) in base.edges.items():
        orig_of[e] = lab.split(".")[0]
    for m in range(len(w)):
        prev_lab = orig_of[w[m - 1][0]]
        pos_side.append((orig_of[w[m][0]], w[m][1], orig_of[w[m - 1][0]], w[m - 1][1]))
    out = []
    for match in _matchings(len(occ)):
        ok = True
        for a, b in match:
            ma, va = occ[a]
            mb, vb = occ[b]
            # a point sits inside one side: both letters around it come from that side
            if (pos_side[ma][0], pos_side[ma][1]) == (pos_side[mb][0], pos_side[mb][1]):
                ok = False
        if not ok:
            continue
        # one closed curve
        adj = {x: [] for x in points}
        for a, b in match:
            adj[occ[a][1]].append(b)
            adj[occ[b][1]].append(a)
        comp, stack = {points[0]}, [points[0]]
        ends_of = {}
        for idx, (a, b) in enumerate(match):
            ends_of.setdefault(occ[a][1], []).append(idx)
            ends_of.setdefault(occ[b][1], []).append(idx)
        while stack:
            x = stack.pop()
            for idx in ends_of[x]:
                a, b = match[idx]
                for y in (occ[a][1], occ[b][1]):
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
        if len(comp) != len(points):
            continue
        out.append((match, base, occ, points))
    return sides, out


def _lay_curve(base: SpineComplex, hex_face: int, match, occ, label_prefix="d"):
    s = base.copy()
    w = s.faces[hex_face].word
    hex_index = s.faces[hex_face].index
    keys = []
    for a, b in match:
        ma, mb = occ[a][0], occ[b][0]
        keys.append(((w[ma - 1], w[ma]), (w[mb - 1], w[mb])))
    arcs = []
    arc_ends = []
    for n, (ka, kb) in enumerate(keys):
        found = None
        for f, face in sorted(s.faces.items()):
            if face.tag != HEX or face.index != hex_index:
                continue
            ww = face.word
            pa = [m for m in range(len(ww)) if (ww[m - 1], ww[m]) == ka]
            pb = [m for m in range(len(ww)) if (ww[m - 1], ww[m]) == kb]
            if pa and pb:
                found = (f, pa[0], pb[0])
                break
        if found is None:
            raise NormalPositionError("arc endpoints lie in different pieces")
        f, i, j = found
        e, _, _ = s.add_arc(f, i, j, f"{label_prefix}{n + 1}")
        arcs.append(e)
    # disk along the closed curve
    at = {}
    for e in arcs:
        t, h, _ = s.edges[e]
        at.setdefault(t, []).append((e, 1))
        at.setdefault(h, []).append((e, -1))
    word = [(arcs[0], 1)]
    while True:
        cur = s.end(word[-1])
        nxt = [l for l in at[cur] if l[0] != word[-1][0]]
        if len(nxt) != 1:
            raise NormalPositionError("curve is not a simple closed curve")
        if nxt[0][0] == arcs[0]:
            break
        word.append(nxt[0])
    if len(word) != len(arcs):
        raise NormalPositionError("curve has several components")
    disk = s.add_face(word, OTHER, "D")
    return s, arcs, disk


def _cells_before(s: SpineComplex):
    return set(s.vertices), set(s.edges), set(s.faces)


def dehn_fill(t: Triangulation, cusp: int, slope: SlopeCurve, basis: str = "negate",
              model: bool = False) -> Tuple[Triangulation, SurgeryTranscript]:
    """Fill cusp ``cusp`` (1-based pair index) of an M_{k,k} member along ``slope``.

    ``model=True`` reads the slope in the internal coordinates of the worked
    example instead of the theorem's coordinates."""
    k = t.meta.get("k")
    if k is None or t.meta.get("g") != k or k % 2:
        raise ValidationError("dehn_fill expects an M_{k,k} member with even k")
    if model:
        if slope != MODEL_SLOPE:
            raise UnsupportedSlope(f"model slope must be {MODEL_SLOPE}")
        counts = model_counts(slope)
    else:
        if slope not in THEOREM_SLOPES:
            raise UnsupportedSlope(f"slope {slope} is outside the verified set")
        counts = internal_counts(slope, basis)
    if not 1 <= cusp <= k:
        raise ValidationError(f"cusp index must be in 1..{k}")
    P = dualize(t)
    hexes = [f for f, face in P.hexagonal_faces() if face.index == cusp]
    if len(hexes) != 1:
        raise ValidationError(f"no hexagonal face for cusp {cusp}")
    hf = hexes[0]
    sides, cands = _fill_candidates(P, hf, counts)
    results = []
    n_tried = 0
    for match, base, occ, points in cands:
        laid, arcs, disk = _lay_curve(base, hf, match, occ)
        j_faces = sorted(f for f, face in laid.faces.items()
                         if face.tag == HEX and face.index == cusp)
        for J in j_faces:
            n_tried += 1
            s = laid.copy()
            v0, e0, f0 = _cells_before(s)
            s.remove_face(J)
            try:
                steps = s.reduce()
                s.check_words()
            except SurgeryError:
                continue
            if not s.is_special():
                continue
            try:
                filled = redualize(s, g=k, k=k - 1)
            except SurgeryError:
                continue
            if not validate_minimal(filled, k, k - 1).ok:
                continue
            full_edges = set(P.edges)
            has_full = any(x in full_edges for x, _ in laid.faces[J].word)
            log = list(P.copy().log) + base.log + laid.log[len(base.log):] + s.log[len(laid.log):]
            results.append((sum(s.counts()), match, J, s, filled, steps, arcs, disk,
                            j_faces, points, has_full, laid, log))
    if not results:
        raise SurgeryError(f"no admissible surgery for counts {counts}")
    best = min(r[0] for r in results)
    minimal = [r for r in results if r[0] == best]
    from .census import is_isomorphic
    ref = minimal[0][4]
    for r in minimal[1:]:
        if is_isomorphic(ref, r[4]) is None:
            raise SurgeryError("surgery result depends on the choice of removed face")
    (_, match, J, s, filled, steps, arcs, disk, j_faces, points, has_full, laid, log) = minimal[0]
    before_v, before_e, before_f = _cells_before(laid)
    tr = SurgeryTranscript(
        cusp=cusp, slope=str(slope), counts=counts, points=points, arcs=arcs, disk=disk,
        j_faces=j_faces, removed=J, removed_has_full_edge=has_full, matching=match,
        merged_faces=sorted(f for f in before_f if f not in s.faces and f != J),
        deleted_edges=sorted(e for e in before_e if e not in s.edges),
        deleted_vertices=sorted(v for v in before_v if v not in s.vertices),
        new_edges=sorted(e for e in s.edges if e not in before_e),
        final_counts=s.counts(), log=log, candidates=n_tried, alternatives=len(minimal))
    tr.final_spine = s   # type: ignore[attr-defined]
    return filled, tr


def replay_transcript(t: Triangulation, tr: SurgeryTranscript) -> SpineComplex:
    return dualize(t).replay(tr.log)


def calibrate_basis(k: int = 2) -> Dict[str, bool]:
    """For each candidate basis map: do all six theorem slopes give isomorphic fillings?"""
    from .census import is_isomorphic
    from .triangulation import build_mkk
    t = build_mkk(k)
    out = {}
    for name in BASIS_MAPS:
        ok = True
        ref = None
        for sl in THEOREM_SLOPES:
            try:
                filled, _ = dehn_fill(t, 1, sl, basis=name)
            except (SurgeryError, NormalPositionError):
                ok = False
                break
            if ref is None:
                ref = filled
            elif is_isomorphic(ref, filled) is None:
                ok = False
                break
        out[name] = ok
    return out


# ---------------------------------------------------------------------------
# drawing

def big_face_dot(s: SpineComplex) -> str:
    bw = big_face_word(s)
    n = len(bw.diamonds)
    lines = ["graph bigface {", "  layout=circo;", "  node [shape=circle];"]
    for i in range(n):
        lines.append(f'  c{i} [label="{bw.vertices[i]}"];')
    for i in range(n):
        lines.append(f'  c{i} -- c{(i + 1) % n} [label="{bw.diamonds[i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def big_face_svg(s: SpineComplex, size: int = 480) -> str:
    """Regular polygon with one labelled diamond sector per corner."""
    import math
    bw = big_face_word(s)
    n = max(len(bw.diamonds), 1)
    cx = cy = size / 2
    R = size * 0.4
    pts = [(cx + R * math.cos(2 * math.pi * i / n - math.pi / 2),
            cy + R * math.sin(2 * math.pi * i / n - math.pi / 2)) for i in range(n)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<polygon fill="none" stroke="black" points="'
           + " ".join(f"{x:.2f},{y:.2f}" for x, y in pts) + '"/>']
    for i, (x, y) in enumerate(pts):
        out.append(f'<line x1="{cx:.2f}" y1="{cy:.2f}" x2="{x:.2f}" y2="{y:.2f}" '
                   f'stroke="#bbb"/>')
        lx, ly = cx + 0.8 * (x - cx), cy + 0.8 * (y - cy)
        label = bw.diamonds[i] if i < len(bw.diamonds) else ""
        out.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="10" text-anchor="middle">'
                   f'{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
