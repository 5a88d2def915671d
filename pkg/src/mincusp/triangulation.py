"""Partially truncated tetrahedra, face pairings and the explicit constructions.

Conventions
-----------
* Face ``f`` of a tetrahedron is the face opposite vertex ``f``.
* A non-compact tetrahedron has its ideal vertex at 3, so face 3 is its
  finite (hexagonal) face and faces 0, 1, 2 are the cusp faces.
* A gluing of face ``fa`` of tet ``a`` to face ``fb`` of tet ``b`` is stored as
  a full permutation ``p`` of ``{0,1,2,3}`` with ``p[fa] == fb``; ``p[v]`` is
  the vertex of ``b`` that vertex ``v`` of ``a`` is identified with.
* Each tetrahedron carries a sign.  A gluing reverses the induced face
  orientations iff ``sign(p) * s_a * s_b == -1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import (ChainParityError, IdentityTwistError, InvalidPartition,
                     ParityError, ValidationError)
from .perm import IDENTITY, compose, inverse, perms_sending, sign

NONCOMPACT = "nc"
COMPACT = "c"

# edge index -> vertex pair, in a fixed order
EDGES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {e: i for i, e in enumerate(EDGES)}

LEFT = "Left"
RIGHT = "Right"
T1A, T1B, T2A, T2B = "T1a", "T1b", "T2a", "T2b"

# the 3-cycle 0 -> 1 -> 2 -> 0 fixing the ideal vertex
_C = (1, 2, 0, 3)
_C2 = compose(_C, _C)

# cusp-pair normal form: (face of A, face of B, permutation)
CUSP_PAIR = ((0, 0, IDENTITY), (1, 2, _C), (2, 1, _C2))

# Delta_0 labels: vertices A,B,C,D = 0,1,2,3
DELTA0_FACES = {"F1": 3, "F2": 2, "F3": 1, "F4": 0}
DELTA0_EDGES = {"E1": (0, 1), "E4": (0, 2), "E5": (1, 2),
                "E2": (0, 3), "E3": (1, 3), "E6": (2, 3)}
_E_OF_PAIR = {v: k for k, v in DELTA0_EDGES.items()}


def edge_index(u: int, w: int) -> int:
    return EDGE_INDEX[(min(u, w), max(u, w))]


@dataclass(frozen=True)
class Tetra:
    id: int
    kind: str
    ideal_vertex: Optional[int]
    orientation: int = 1

    def __post_init__(self):
        if self.kind not in (NONCOMPACT, COMPACT):
            raise ValidationError(f"bad tetrahedron kind {self.kind!r}")
        if (self.kind == NONCOMPACT) != (self.ideal_vertex is not None):
            raise ValidationError("ideal vertex present iff non-compact")
        if self.orientation not in (1, -1):
            raise ValidationError("orientation must be +1 or -1")

    @property
    def compact(self) -> bool:
        return self.kind == COMPACT


@dataclass(frozen=True)
class FaceGluing:
    tet_a: int
    face_a: int
    tet_b: int
    face_b: int
    perm: Tuple[int, int, int, int]

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2, 3]:
            raise ValidationError(f"not a permutation: {self.perm}")
        if self.perm[self.face_a] != self.face_b:
            raise ValidationError("gluing permutation must carry face_a to face_b")

    @property
    def slot_a(self):
        return (self.tet_a, self.face_a)

    @property
    def slot_b(self):
        return (self.tet_b, self.face_b)

    def reversed(self) -> "FaceGluing":
        return FaceGluing(self.tet_b, self.face_b, self.tet_a, self.face_a, inverse(self.perm))

    def face_map(self) -> List[int]:
        """Images of the sorted vertices of face_a (the JSON ``map``)."""
        return [self.perm[v] for v in range(4) if v != self.face_a]


@dataclass(frozen=True)
class Triangulation:
    tetra: Tuple[Tetra, ...]
    gluings: Tuple[FaceGluing, ...]
    meta: Dict[str, int] = field(default_factory=dict, compare=False)
    # optional human labels for (tet, edge-index) slots; purely cosmetic
    edge_labels: Dict[Tuple[int, int], str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        seen = set()
        n = len(self.tetra)
        for t_i, t in enumerate(self.tetra):
            if t.id != t_i:
                raise ValidationError("tetra ids must be 0..n-1 in order")
        for g in self.gluings:
            for slot in (g.slot_a, g.slot_b):
                if not (0 <= slot[0] < n and 0 <= slot[1] < 4):
                    raise ValidationError(f"face slot out of range: {slot}")
                if slot in seen:
                    raise ValidationError(f"face slot glued twice: {slot}")
                seen.add(slot)

    # -- lookups ----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.tetra)

    def partner_map(self) -> Dict[Tuple[int, int], Tuple[int, int, Tuple[int, ...]]]:
        """(tet, face) -> (tet', face', perm) in both directions."""
        out = {}
        for g in self.gluings:
            out[g.slot_a] = (g.tet_b, g.face_b, g.perm)
            out[g.slot_b] = (g.tet_a, g.face_a, inverse(g.perm))
        return out

    def unglued_faces(self) -> List[Tuple[int, int]]:
        glued = set()
        for g in self.gluings:
            glued.add(g.slot_a)
            glued.add(g.slot_b)
        return [(t, f) for t in range(self.n) for f in range(4) if (t, f) not in glued]

    def orientation_character(self, g: FaceGluing) -> int:
        return sign(g.perm) * self.tetra[g.tet_a].orientation * self.tetra[g.tet_b].orientation

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = {t: set() for t in range(self.n)}
        for g in self.gluings:
            adj[g.tet_a].add(g.tet_b)
            adj[g.tet_b].add(g.tet_a)
        stack, seen = [0], {0}
        while stack:
            t = stack.pop()
            for u in adj[t]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "tetra": [{"id": t.id, "kind": t.kind, "ideal_vertex": t.ideal_vertex}
                      for t in self.tetra],
            "gluings": [{"a": [g.tet_a, g.face_a], "b": [g.tet_b, g.face_b],
                         "map": g.face_map()} for g in self.gluings],
            "meta": {key: self.meta[key] for key in ("g", "k") if key in self.meta},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "Triangulation":
        gluings = []
        for g in d["gluings"]:
            (ta, fa), (tb, fb) = g["a"], g["b"]
            perm = [0] * 4
            perm[fa] = fb
            for v, img in zip([v for v in range(4) if v != fa], g["map"]):
                perm[v] = img
            gluings.append(FaceGluing(ta, fa, tb, fb, tuple(perm)))
        raw = [(t["id"], t["kind"], t["ideal_vertex"]) for t in d["tetra"]]
        signs = _two_colour(len(raw), gluings)
        tetra = tuple(Tetra(i, kind, iv, signs[i]) for (i, kind, iv) in raw)
        return cls(tetra, tuple(gluings), dict(d.get("meta", {})))

    @classmethod
    def from_json(cls, s: str) -> "Triangulation":
        return cls.from_dict(json.loads(s))


def _two_colour(n: int, gluings) -> List[int]:
    """Recover tetrahedron signs making every gluing orientation-reversing.

    Components are seeded with +1 at their lowest tetrahedron.  If the
    gluings are not orientable the conflicting edge keeps the first sign.
    """
    adj: Dict[int, list] = {t: [] for t in range(n)}
    for g in gluings:
        adj[g.tet_a].append((g.tet_b, sign(g.perm)))
        adj[g.tet_b].append((g.tet_a, sign(g.perm)))
    signs: Dict[int, int] = {}
    for root in range(n):
        if root in signs:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            t = stack.pop()
            for u, sg in adj[t]:
                if u not in signs:
                    signs[u] = -sg * signs[t]
                    stack.append(u)
    return [signs[t] for t in range(n)]


# ---------------------------------------------------------------------------
# edge classes

@dataclass(frozen=True)
class EdgeClass:
    slots: Tuple[Tuple[int, int], ...]
    compact: bool
    labels: Tuple[str, ...] = ()

    @property
    def incidence(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class EdgeClassTable:
    classes: Tuple[EdgeClass, ...]

    @property
    def compact_classes(self):
        return [c for c in self.classes if c.compact]

    @property
    def cusp_classes(self):
        return [c for c in self.classes if not c.compact]

    def profile(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(sorted compact incidences, sorted cusp incidences)."""
        return (tuple(sorted(c.incidence for c in self.compact_classes)),
                tuple(sorted(c.incidence for c in self.cusp_classes)))

    def class_of(self) -> Dict[Tuple[int, int], int]:
        return {s: i for i, c in enumerate(self.classes) for s in c.slots}


def compute_edge_classes(t: Triangulation) -> EdgeClassTable:
    """Union-find of (tet, edge) slots under the face gluings."""
    parent = {}

    def find(x):
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for tet in range(t.n):
        for e in range(6):
            find((tet, e))
    for g in t.gluings:
        for u, w in EDGES:
            if g.face_a in (u, w):
                continue
            a = find((g.tet_a, edge_index(u, w)))
            b = find((g.tet_b, edge_index(g.perm[u], g.perm[w])))
            if a != b:
                # keep the smaller slot as root so ordering is canonical
                if b < a:
                    a, b = b, a
                parent[b] = a
    groups: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for tet in range(t.n):
        for e in range(6):
            groups.setdefault(find((tet, e)), []).append((tet, e))
    classes = []
    for members in sorted(groups.values(), key=min):
        members.sort()
        compact = all(not _edge_is_ideal(t.tetra[tet], e) for tet, e in members)
        labels = tuple(sorted({t.edge_labels[s] for s in members if s in t.edge_labels}))
        classes.append(EdgeClass(tuple(members), compact, labels))
    return EdgeClassTable(tuple(classes))


def _edge_is_ideal(tet: Tetra, e: int) -> bool:
    return tet.ideal_vertex is not None and tet.ideal_vertex in EDGES[e]


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    checks: Dict[str, bool]
    messages: List[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self):
        return self.ok


def validate_minimal(t: Triangulation, g: int, k: int) -> ValidationReport:
    """Check the combinatorial profile of a minimal triangulation of an M_{g,k} member."""
    checks: Dict[str, bool] = {}
    msgs: List[str] = []

    checks["tetra_count"] = t.n == g + k
    if not checks["tetra_count"]:
        msgs.append(f"{t.n} tetrahedra, expected g+k={g + k}")

    n_compact = sum(1 for x in t.tetra if x.compact)
    checks["compact_tetra"] = n_compact == g - k
    if not checks["compact_tetra"]:
        msgs.append(f"{n_compact} compact tetrahedra, expected {g - k}")

    unglued = t.unglued_faces()
    checks["closed"] = not unglued
    if unglued:
        msgs.append(f"unglued faces {unglued}")

    bad = [gl for gl in t.gluings if t.orientation_character(gl) != -1]
    checks["orientation"] = not bad
    if bad:
        msgs.append(f"{len(bad)} orientation-preserving gluings")

    checks["connected"] = t.is_connected()
    if not checks["connected"]:
        msgs.append("gluing graph disconnected")

    table = compute_edge_classes(t)
    comp, cusp = table.profile()
    checks["edge_profile"] = comp == (6 * g,) and cusp == (6,) * k
    if not checks["edge_profile"]:
        msgs.append(f"edge classes compact={comp} cusp={cusp}")

    # every cusp class touches exactly two non-compact tetra, which pair up
    paired: Dict[int, int] = {}
    pairing_ok = True
    for c in table.cusp_classes:
        tets = sorted({tet for tet, _ in c.slots})
        if len(tets) != 2 or any(x in paired for x in tets):
            pairing_ok = False
            break
        paired[tets[0]], paired[tets[1]] = tets[1], tets[0]
    nc = {x.id for x in t.tetra if not x.compact}
    checks["cusp_pairing"] = pairing_ok and set(paired) == nc
    if not checks["cusp_pairing"]:
        msgs.append("non-compact tetra are not paired cusp-wise")
    return ValidationReport(checks, msgs)


# ---------------------------------------------------------------------------
# chains

@dataclass(frozen=True)
class ChainComplex:
    """A 2l-tetrahedron chain with unglued end faces delta_1 and delta_2l.

    ``first_labels`` / ``last_labels`` map a label in {a,b,c} to the vertex of
    face 3 opposite the labelled edge, on the first and last tetrahedron.
    """
    triangulation: Triangulation
    length: int
    first_labels: Dict[str, int]
    last_labels: Dict[str, int]

    @property
    def first(self) -> int:
        return 0

    @property
    def last(self) -> int:
        return 2 * self.length - 1

    def label_cycle(self, end: str) -> Tuple[str, str, str]:
        """Labels read around the boundary face in its induced orientation."""
        tet = self.first if end == "first" else self.last
        labels = self.first_labels if end == "first" else self.last_labels
        by_vertex = {v: x for x, v in labels.items()}
        order = [0, 1, 2]
        # induced orientation of face 3 of a tetrahedron of sign s: s * (-1)^3
        if self.triangulation.tetra[tet].orientation * -1 < 0:
            order.reverse()
        return tuple(by_vertex[v] for v in order)

    def labels_agree(self) -> bool:
        a, b = self.label_cycle("first"), self.label_cycle("last")
        return any(b == a[r:] + a[:r] for r in range(3))


def _relabel_edges(labels: Dict[str, int], tet: int) -> Dict[Tuple[int, int], str]:
    out = {}
    for x, v in labels.items():
        u, w = [y for y in (0, 1, 2) if y != v]
        out[(tet, edge_index(u, w))] = x
        out[(tet, edge_index(v, 3))] = {"a": "p", "b": "q", "c": "r"}[x]
    return out


def build_chain(length: int, start_sign: int = 1, offset: int = 0) -> ChainComplex:
    """Chain of ``2*length`` non-compact tetrahedra.

    Tetrahedra ``offset .. offset+2l-1``; signs alternate starting with
    ``start_sign``.  Consecutive pairs are glued along their cusp faces in
    the normal form ``CUSP_PAIR``; finite faces of Delta_{2i}, Delta_{2i+1}
    are glued by the identity.
    """
    if not isinstance(length, int) or length <= 0:
        raise ValidationError(f"chain length must be a positive integer, got {length!r}")
    n = 2 * length
    tetra = tuple(Tetra(offset + i, NONCOMPACT, 3, start_sign * (1 if i % 2 == 0 else -1))
                  for i in range(n))
    gluings = []
    for pair in range(length):
        a, b = offset + 2 * pair, offset + 2 * pair + 1
        for fa, fb, p in CUSP_PAIR:
            gluings.append(FaceGluing(a, fa, b, fb, p))
        if pair + 1 < length:
            gluings.append(FaceGluing(b, 3, b + 1, 3, IDENTITY))
    # propagate labels: through a cusp pair the compact edges (1,2),(0,2),(0,1)
    # of A go to (1,2),(0,1),(0,2) of B; identity across finite faces
    labels = {"a": 0, "b": 1, "c": 2}
    first = dict(labels)
    edge_labels = {}
    swap = {0: 0, 1: 2, 2: 1}
    for i in range(n):
        edge_labels.update(_relabel_edges(labels, offset + i))
        if i % 2 == 0:
            labels = {x: swap[v] for x, v in labels.items()}
    tri = _PartialTriangulation(tetra, tuple(gluings), edge_labels)
    return ChainComplex(tri, length, first, labels)


class _PartialTriangulation(Triangulation):
    """Triangulation whose tetra ids need not start at 0 (chain pieces)."""

    def __init__(self, tetra, gluings, edge_labels=None, meta=None):
        object.__setattr__(self, "tetra", tuple(tetra))
        object.__setattr__(self, "gluings", tuple(gluings))
        object.__setattr__(self, "meta", dict(meta or {}))
        object.__setattr__(self, "edge_labels", dict(edge_labels or {}))


_TWIST_CYCLE = {LEFT: {"a": "b", "b": "c", "c": "a"},
                RIGHT: {"a": "c", "b": "a", "c": "b"}}


def closing_perm(chain: ChainComplex, label_map: Dict[str, str]):
    """Permutation gluing face 3 of the last tet to face 3 of the first.

    The edge labelled x on delta_2l goes to the edge labelled label_map[x]
    on delta_1; an edge is identified with its opposite vertex in face 3.
    """
    p = [0, 0, 0, 3]
    for x, v in chain.last_labels.items():
        p[v] = chain.first_labels[label_map[x]]
    return tuple(p)


def glue_ends(chain: ChainComplex, perm, meta=None) -> Triangulation:
    """Close a chain with an arbitrary face-3 to face-3 permutation, unchecked."""
    t = chain.triangulation
    if any(x.id != i for i, x in enumerate(t.tetra)):
        raise ValidationError("glue_ends expects a chain built at offset 0")
    gl = t.gluings + (FaceGluing(chain.last, 3, chain.first, 3, tuple(perm)),)
    return Triangulation(t.tetra, gl, dict(meta or {}), dict(t.edge_labels))


def close_chain(chain: ChainComplex, twist: str) -> Triangulation:
    """Glue delta_2l to delta_1 by the left or right 3-cycle twist."""
    if twist in ("identity", "Identity", None):
        raise IdentityTwistError("the identity pairing leaves three compact edge classes")
    if twist not in _TWIST_CYCLE:
        raise ValidationError(f"unknown twist {twist!r}")
    if chain.length % 2:
        raise ChainParityError(
            f"chain of odd length {chain.length}: a twist closure has two compact edges")
    k = chain.length
    return glue_ends(chain, closing_perm(chain, _TWIST_CYCLE[twist]), {"g": k, "k": k})


def build_mkk(k: int, twist: str = LEFT) -> Triangulation:
    """M_L(k) or M_R(k)."""
    return close_chain(build_chain(k), twist)


# ---------------------------------------------------------------------------
# M_{k+1,k}: a compact tetrahedron plus two chains

def _face3_vertices():
    return (0, 1, 2)


def _second_end_options(first_perm, chain_map, face_from: int, face_to: int,
                        central: Tuple[int, int], last_sign: int):
    """The two admissible gluings of the chain's far end onto Delta_0.

    ``first_perm`` glues Delta_0 face ``face_from`` onto the first chain tet;
    ``chain_map`` sends a vertex of the first tet's face 3 to the vertex of
    the last tet's face 3 opposite the same label.  Returns a list of
    (perm, induced E-label permutation) sorted by the latter, excluding the
    pairing whose composite fixes the central edge.
    """
    out = []
    for p in perms_sending(3, face_to):
        # orientation: Delta_0 has sign +1
        if sign(p) * last_sign * 1 != -1:
            continue
        # composite vertex map face_from -> face_to, edge-wise via opposite vertices
        comp = {}
        for v in range(4):
            if v == face_from:
                continue
            w = first_perm[v]          # vertex of first tet's face 3
            comp[v] = p[chain_map[w]]  # vertex of Delta_0's face_to
        induced = _induced_edges(comp, face_from)
        img = tuple(sorted(comp[x] for x in central))
        if img == central:
            continue
        out.append((p, induced))
    out.sort(key=lambda t: t[1])
    return out


def _induced_edges(vertex_map: Dict[int, int], face: int) -> Tuple[str, ...]:
    """E-labels of the images of the edges of ``face`` (sorted by source label)."""
    verts = [v for v in range(4) if v != face]
    res = []
    for u, w in sorted(((a, b) for a in verts for b in verts if a < b),
                       key=lambda e: _E_OF_PAIR[e]):
        x, y = vertex_map[u], vertex_map[w]
        res.append(_E_OF_PAIR[(min(x, y), max(x, y))])
    return tuple(res)


def _direct_options(face_from: int, face_to: int, central: Tuple[int, int]):
    out = []
    for p in perms_sending(face_from, face_to):
        if sign(p) != -1:   # both faces belong to Delta_0 (sign +1)
            continue
        comp = {v: p[v] for v in range(4) if v != face_from}
        if tuple(sorted(comp[x] for x in central)) == central:
            continue
        out.append((p, _induced_edges(comp, face_from)))
    out.sort(key=lambda t: t[1])
    return out


# fixed first-end gluings: Delta_0 face -> face 3 of first chain tet
_FIRST_END = {3: IDENTITY, 1: (0, 3, 1, 2)}


def twist_options(which: int, length: int):
    """Admissible second-end pairings for chain 1 (F1->F2) or chain 2 (F3->F4)."""
    face_from, face_to, central = ((3, 2, (0, 1)) if which == 1 else (1, 0, (2, 3)))
    if length == 0:
        return _direct_options(face_from, face_to, central)
    chain = build_chain(length, start_sign=-1)
    chain_map = {chain.first_labels[x]: chain.last_labels[x] for x in "abc"}
    chain_map[3] = 3
    last_sign = chain.triangulation.tetra[chain.last].orientation
    return _second_end_options(_FIRST_END[face_from], chain_map, face_from, face_to,
                               central, last_sign)


def build_mk1k(i: int, j: int, twist_1: str = T1A, twist_2: str = T2A) -> Triangulation:
    """Compact Delta_0 with a chain of length i across (F1,F2) and j across (F3,F4)."""
    for v in (i, j):
        if not isinstance(v, int) or v < 0:
            raise InvalidPartition(f"chain lengths must be nonnegative integers: {(i, j)}")
    if i > j or i + j < 1:
        raise InvalidPartition(f"need i <= j and i + j >= 1, got {(i, j)}")
    if i % 2 == 0 and j % 2 == 0:
        raise ParityError(f"({i},{j}): at least one chain must have odd length")
    if twist_1 not in (T1A, T1B) or twist_2 not in (T2A, T2B):
        raise ValidationError(f"bad twist choice {(twist_1, twist_2)}")
    k = i + j
    tetra = [Tetra(0, COMPACT, None, 1)]
    gluings: List[FaceGluing] = []
    edge_labels = {(0, edge_index(*e)): name for name, e in DELTA0_EDGES.items()}

    offset = 1
    for which, length, choice in ((1, i, twist_1), (2, j, twist_2)):
        face_from, face_to = (3, 2) if which == 1 else (1, 0)
        opts = twist_options(which, length)
        if len(opts) != 2:
            raise AssertionError(f"expected two admissible twists, got {len(opts)}")
        p = opts[0 if choice.endswith("a") else 1][0]
        if length == 0:
            gluings.append(FaceGluing(0, face_from, 0, face_to, p))
            continue
        chain = build_chain(length, start_sign=-1, offset=offset)
        tetra.extend(chain.triangulation.tetra)
        gluings.extend(chain.triangulation.gluings)
        edge_labels.update(chain.triangulation.edge_labels)
        first, last = offset, offset + 2 * length - 1
        gluings.append(FaceGluing(0, face_from, first, 3, _FIRST_END[face_from]))
        gluings.append(FaceGluing(last, 3, 0, face_to, p))
        offset += 2 * length
    return Triangulation(tuple(tetra), tuple(gluings), {"g": k + 1, "k": k}, edge_labels)


def disjoint_union(t1: Triangulation, t2: Triangulation) -> Triangulation:
    shift = t1.n
    tetra = list(t1.tetra) + [Tetra(x.id + shift, x.kind, x.ideal_vertex, x.orientation)
                              for x in t2.tetra]
    gl = list(t1.gluings) + [FaceGluing(g.tet_a + shift, g.face_a, g.tet_b + shift,
                                        g.face_b, g.perm) for g in t2.gluings]
    return Triangulation(tuple(tetra), tuple(gl), {})


def relabel(t: Triangulation, tet_order, vertex_perms=None) -> Triangulation:
    """Apply a combinatorial relabelling: tet ``old`` becomes ``tet_order[old]``,
    and its vertex v becomes ``vertex_perms[old][v]`` (must fix ideal vertices)."""
    if vertex_perms is None:
        vertex_perms = [IDENTITY] * t.n
    tetra = [None] * t.n
    for old, x in enumerate(t.tetra):
        vp = vertex_perms[old]
        iv = None if x.ideal_vertex is None else vp[x.ideal_vertex]
        tetra[tet_order[old]] = Tetra(tet_order[old], x.kind, iv, x.orientation * sign(vp))
    gl = []
    for g in t.gluings:
        pa, pb = vertex_perms[g.tet_a], vertex_perms[g.tet_b]
        perm = compose(pb, compose(g.perm, inverse(pa)))
        gl.append(FaceGluing(tet_order[g.tet_a], pa[g.face_a], tet_order[g.tet_b],
                             pb[g.face_b], perm))
    return Triangulation(tuple(tetra), tuple(gl), dict(t.meta))
