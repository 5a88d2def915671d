"""Isomorphism engine, automorphism groups, family enumeration and a
brute-force census oracle for minimal triangulations."""
from __future__ import annotations

import hashlib
import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import MalformedGraph, SearchBudgetExceeded, ValidationError
from .perm import IDENTITY, S4, compose, inverse, perms_sending, sign
from .triangulation import (COMPACT, CUSP_PAIR, LEFT, NONCOMPACT, RIGHT, T1A, T1B, T2A,
                            T2B, FaceGluing, Tetra, Triangulation, build_mk1k, build_mkk,
                            compute_edge_classes, validate_minimal)

MKK = "Mkk"
MK1K = "Mk1k"


# ---------------------------------------------------------------------------
# isomorphisms

@dataclass(frozen=True)
class CombIso:
    tet_map: Tuple[int, ...]
    vertex_maps: Tuple[Tuple[int, int, int, int], ...]
    character: int

    def __call__(self, tet: int, vertex: int) -> Tuple[int, int]:
        return self.tet_map[tet], self.vertex_maps[tet][vertex]

    def compose(self, other: "CombIso") -> "CombIso":
        """self after other."""
        tm = tuple(self.tet_map[other.tet_map[a]] for a in range(len(other.tet_map)))
        vm = tuple(compose(self.vertex_maps[other.tet_map[a]], other.vertex_maps[a])
                   for a in range(len(other.tet_map)))
        return CombIso(tm, vm, self.character * other.character)

    def inverse(self) -> "CombIso":
        n = len(self.tet_map)
        tm = [0] * n
        vm = [IDENTITY] * n
        for a in range(n):
            tm[self.tet_map[a]] = a
            vm[self.tet_map[a]] = inverse(self.vertex_maps[a])
        return CombIso(tuple(tm), tuple(vm), self.character)

    def is_identity(self) -> bool:
        return all(self.tet_map[a] == a and self.vertex_maps[a] == IDENTITY
                   for a in range(len(self.tet_map)))

    @staticmethod
    def identity(n: int) -> "CombIso":
        return CombIso(tuple(range(n)), (IDENTITY,) * n, 1)


def _seed_perms(src: Tetra, dst: Tetra):
    if src.kind != dst.kind:
        return []
    if src.kind == NONCOMPACT:
        return perms_sending(src.ideal_vertex, dst.ideal_vertex)
    return list(S4)


def _propagate(t1: Triangulation, t2: Triangulation, pm1, pm2, seed_tet: int,
               seed_perm) -> Optional[CombIso]:
    n = t1.n
    tet_map: List[Optional[int]] = [None] * n
    vmaps: List[Optional[tuple]] = [None] * n
    used = set()
    tet_map[0], vmaps[0] = seed_tet, seed_perm
    used.add(seed_tet)
    queue = deque([0])
    while queue:
        a = queue.popleft()
        A, pa = tet_map[a], vmaps[a]
        for f in range(4):
            here = pm1.get((a, f))
            there = pm2.get((A, pa[f]))
            if (here is None) != (there is None):
                return None
            if here is None:
                continue
            b, fb, p = here
            B, FB, P = there
            # vertex maps must satisfy  pb o p = P o pa
            pb = compose(P, compose(pa, inverse(p)))
            if tet_map[b] is None:
                if B in used:
                    return None
                tb, tB = t1.tetra[b], t2.tetra[B]
                if tb.kind != tB.kind:
                    return None
                if tb.ideal_vertex is not None and pb[tb.ideal_vertex] != tB.ideal_vertex:
                    return None
                tet_map[b], vmaps[b] = B, pb
                used.add(B)
                queue.append(b)
            elif tet_map[b] != B or vmaps[b] != pb:
                return None
    if any(x is None for x in tet_map):
        return None
    chars = {t1.tetra[a].orientation * sign(vmaps[a]) * t2.tetra[tet_map[a]].orientation
             for a in range(n)}
    if len(chars) != 1:
        return None
    return CombIso(tuple(tet_map), tuple(vmaps), chars.pop())


def _iter_isomorphisms(t1: Triangulation, t2: Triangulation):
    if t1.n != t2.n or t1.n == 0:
        return
    pm1, pm2 = t1.partner_map(), t2.partner_map()
    for T in range(t2.n):
        for pi in _seed_perms(t1.tetra[0], t2.tetra[T]):
            iso = _propagate(t1, t2, pm1, pm2, T, pi)
            if iso is not None:
                yield iso


def is_isomorphic(t1: Triangulation, t2: Triangulation) -> Optional[CombIso]:
    """Return a combinatorial isomorphism t1 -> t2, or None."""
    for iso in _iter_isomorphisms(t1, t2):
        return iso
    return None


def check_iso(t1: Triangulation, t2: Triangulation, iso: CombIso) -> bool:
    """Independent check that ``iso`` carries every gluing of t1 onto one of t2."""
    pm2 = t2.partner_map()
    for g in t1.gluings:
        A, pa = iso.tet_map[g.tet_a], iso.vertex_maps[g.tet_a]
        B, pb = iso.tet_map[g.tet_b], iso.vertex_maps[g.tet_b]
        there = pm2.get((A, pa[g.face_a]))
        if there is None or there[0] != B or there[1] != pb[g.face_b]:
            return False
        if compose(pb, g.perm) != compose(there[2], pa):
            return False
    return True


def canonical_form(t: Triangulation) -> tuple:
    """Lexicographically minimal BFS transcript over all seeds."""
    pm = t.partner_map()
    best = None
    # isomorphisms preserve kind, so seeding from the rarer kind suffices
    n_compact = sum(1 for x in t.tetra if x.compact)
    seed_kind = COMPACT if 0 < n_compact <= t.n - n_compact else NONCOMPACT
    if n_compact == t.n:
        seed_kind = COMPACT
    for s in range(t.n):
        tet = t.tetra[s]
        if tet.kind != seed_kind:
            continue
        seeds = perms_sending(tet.ideal_vertex, 3) if tet.kind == NONCOMPACT else S4
        for sigma in seeds:
            tr = _transcript(t, pm, s, sigma, best)
            if tr is not None and (best is None or tr < best):
                best = tr
    return best


def _transcript(t, pm, s, sigma, bound):
    order = {s: 0}
    sig = {s: sigma}
    queue = [s]
    out = []
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        x = t.tetra[a]
        siga = sig[a]
        out.append((x.kind, -1 if x.ideal_vertex is None else siga[x.ideal_vertex]))
        inv = inverse(siga)
        for f in range(4):
            here = pm.get((a, inv[f]))
            if here is None:
                out.append((-1, -1, IDENTITY))
                continue
            b, fb, p = here
            if b not in order:
                order[b] = len(queue)
                queue.append(b)
                sig[b] = compose(siga, inverse(p))
            new_perm = compose(sig[b], compose(p, inv))
            out.append((order[b], sig[b][fb], new_perm))
        if bound is not None and tuple(out) > bound[:len(out)]:
            return None
    if len(queue) != t.n:
        # disconnected: append the rest deterministically by canonical forms
        rest = Triangulation(tuple(Tetra(j, t.tetra[u].kind, t.tetra[u].ideal_vertex)
                                   for j, u in enumerate(sorted(set(range(t.n)) - set(order)))),
                             ())
        out.append(("rest", rest.n))
    return tuple(out)


def canonical_hash(t: Triangulation) -> str:
    return hashlib.sha256(repr(canonical_form(t)).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# automorphisms

@dataclass
class AutGroup:
    elements: List[CombIso]
    dihedral: Optional[Tuple[CombIso, CombIso]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def orientation_preserving_order(self) -> int:
        return sum(1 for g in self.elements if g.character == 1)

    def is_closed(self) -> bool:
        keys = {(g.tet_map, g.vertex_maps) for g in self.elements}
        for g in self.elements:
            if (g.inverse().tet_map, g.inverse().vertex_maps) not in keys:
                return False
            for h in self.elements:
                gh = g.compose(h)
                if (gh.tet_map, gh.vertex_maps) not in keys:
                    return False
        return any(g.is_identity() for g in self.elements)


def element_order(g: CombIso, limit: int = 10_000) -> int:
    h = g
    for n in range(1, limit + 1):
        if h.is_identity():
            return n
        h = g.compose(h)
    raise ValueError("element order exceeds limit")


def _power(g: CombIso, e: int) -> CombIso:
    out = CombIso.identity(len(g.tet_map))
    for _ in range(e):
        out = g.compose(out)
    return out


def _same(g: CombIso, h: CombIso) -> bool:
    return g.tet_map == h.tet_map and g.vertex_maps == h.vertex_maps


def verify_dihedral(r: CombIso, t: CombIso, m: int) -> bool:
    """r^2 = 1, t of order exactly m, r t r = t^-1."""
    if not r.compose(r).is_identity() or r.is_identity():
        return False
    if element_order(t) != m:
        return False
    return _same(r.compose(t).compose(r), t.inverse())


def automorphism_group(t: Triangulation, dihedral_m: Optional[int] = None) -> AutGroup:
    """All self-isomorphisms.  When the order is 2m for ``dihedral_m = m``
    (default: 3k for M_kk members), search for a dihedral certificate."""
    elems = list(_iter_isomorphisms(t, t))
    grp = AutGroup(elems)
    if dihedral_m is None and t.meta.get("g") == t.meta.get("k") and t.meta.get("k"):
        dihedral_m = 3 * t.meta["k"]
    if dihedral_m and grp.order == 2 * dihedral_m:
        grp.dihedral = _dihedral_certificate(elems, dihedral_m)
    return grp


def _dihedral_certificate(elems, m):
    rotations = [g for g in elems if element_order(g) == m]
    # prefer the rotation taking Delta_1 to Delta_3 with vertex labels preserved
    rotations.sort(key=lambda g: (not (g.tet_map[0] == 2 % len(g.tet_map)
                                       and g.vertex_maps[0] == IDENTITY),
                                  g.tet_map, g.vertex_maps))
    involutions = [g for g in elems if not g.is_identity() and g.compose(g).is_identity()]
    involutions.sort(key=lambda g: (g.tet_map, g.vertex_maps))
    for rot in rotations:
        for r in involutions:
            if verify_dihedral(r, rot, m):
                return (r, rot)
    return None


# ---------------------------------------------------------------------------
# partition invariant

@dataclass(frozen=True)
class PartitionInvariant:
    i: int
    j: int

    def as_tuple(self):
        return (self.i, self.j)


@dataclass
class GraphGM:
    """x_0 is the compact tetrahedron, x_1..x_k the cusp pairs."""
    n_vertices: int
    edges: List[Tuple[int, int]]

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)


def cusp_pairs(t: Triangulation) -> List[Tuple[int, int]]:
    """Pairs of non-compact tetra sharing a cusp edge class, ordered by first tet."""
    pairs = []
    for c in compute_edge_classes(t).cusp_classes:
        tets = tuple(sorted({tet for tet, _ in c.slots}))
        if len(tets) != 2:
            raise MalformedGraph(f"cusp class meets {len(tets)} tetrahedra")
        pairs.append(tets)
    pairs.sort()
    return pairs


def graph_gm(t: Triangulation) -> GraphGM:
    compact = [x.id for x in t.tetra if x.compact]
    if len(compact) != 1:
        raise MalformedGraph(f"expected one compact tetrahedron, found {len(compact)}")
    group = {compact[0]: 0}
    for idx, (a, b) in enumerate(cusp_pairs(t), start=1):
        group[a] = group[b] = idx
    if len(group) != t.n:
        raise MalformedGraph("tetrahedra outside the cusp pairing")
    edges = []
    for g in t.gluings:
        finite_a = t.tetra[g.tet_a].compact or g.face_a == t.tetra[g.tet_a].ideal_vertex
        finite_b = t.tetra[g.tet_b].compact or g.face_b == t.tetra[g.tet_b].ideal_vertex
        if finite_a and finite_b:
            edges.append(tuple(sorted((group[g.tet_a], group[g.tet_b]))))
    return GraphGM(1 + max(group.values()), sorted(edges))


def wedge_cycle_lengths(gm: GraphGM) -> Tuple[int, int]:
    if gm.degree(0) != 4 or any(gm.degree(v) != 2 for v in range(1, gm.n_vertices)):
        raise MalformedGraph("G_M is not a wedge of two cycles (degree check)")
    adj: Dict[int, List[int]] = {v: [] for v in range(gm.n_vertices)}
    for e_id, (a, b) in enumerate(gm.edges):
        adj[a].append(e_id)
        adj[b].append(e_id)
    used = set()
    lengths = []
    visited = {0}
    for e_id in adj[0]:
        if e_id in used:
            continue
        used.add(e_id)
        a, b = gm.edges[e_id]
        v = b if a == 0 else a
        count = 0
        while v != 0:
            visited.add(v)
            count += 1
            nxt = [e for e in adj[v] if e not in used]
            if len(nxt) != 1:
                raise MalformedGraph("G_M walk got stuck")
            used.add(nxt[0])
            a, b = gm.edges[nxt[0]]
            v = b if a == v else a
        lengths.append(count)
    if len(lengths) != 2 or len(visited) != gm.n_vertices:
        raise MalformedGraph("G_M is not a wedge of two cycles")
    return tuple(sorted(lengths))


def partition_invariant(t: Triangulation) -> PartitionInvariant:
    i, j = wedge_cycle_lengths(graph_gm(t))
    return PartitionInvariant(i, j)


# Delta_0 edge identifications induced by a chain, per parity
_EDGE_ID = {
    (1, "odd"): [("E4", "E2"), ("E5", "E3")],
    (1, "even"): [("E4", "E3"), ("E5", "E2")],
    (2, "odd"): [("E4", "E5"), ("E2", "E3")],
    (2, "even"): [],
}


def edge_identification_check(parity_1: str, parity_2: str) -> str:
    """Connectivity of the identification graph on {E2,E3,E4,E5}."""
    for p in (parity_1, parity_2):
        if p not in ("odd", "even"):
            raise ValidationError(f"parity must be 'odd' or 'even', got {p!r}")
    edges = _EDGE_ID[(1, parity_1)] + (_EDGE_ID[(1, "even")] if parity_2 == "even"
                                        else _EDGE_ID[(2, "odd")])
    comp = {v: v for v in ("E2", "E3", "E4", "E5")}

    def find(v):
        while comp[v] != v:
            v = comp[v]
        return v

    for a, b in edges:
        comp[find(a)] = find(b)
    return "connected" if len({find(v) for v in comp}) == 1 else "disconnected"


# ---------------------------------------------------------------------------
# constructive enumeration

def admissible_partitions(k: int) -> List[Tuple[int, int]]:
    return [(i, k - i) for i in range(0, k // 2 + 1) if not (i % 2 == 0 and (k - i) % 2 == 0)]


def enumerate_family(family: str, k: int):
    """One representative per isomorphism class: list of (Triangulation, PartitionInvariant|None)."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    if family == MKK:
        if k % 2:
            return []
        cands = [(build_mkk(k, LEFT), None), (build_mkk(k, RIGHT), None)]
    elif family == MK1K:
        cands = []
        for i, j in admissible_partitions(k):
            for a, b in itertools.product((T1A, T1B), (T2A, T2B)):
                t = build_mk1k(i, j, a, b)
                cands.append((t, partition_invariant(t)))
    else:
        raise ValidationError(f"unknown family {family!r}")
    seen = {}
    for t, inv in cands:
        key = canonical_form(t)
        if key not in seen:
            seen[key] = (t, inv)
    return list(seen.values())


# ---------------------------------------------------------------------------
# brute force

@dataclass
class BruteForceResult:
    count: int
    classes: List[Triangulation]
    candidates: int
    valid: int


def _orbit_reps(faces: Sequence, n_pairs: int, use_symmetry: bool):
    """Perfect matchings of ``faces``, one per orbit under pair relabel/swap."""
    def matchings(items):
        if not items:
            yield ()
            return
        a = items[0]
        for idx in range(1, len(items)):
            rest = items[1:idx] + items[idx + 1:]
            for m in matchings(rest):
                yield ((a, items[idx]),) + m

    def norm(m):
        return tuple(sorted(tuple(sorted(pair)) for pair in m))

    if not use_symmetry:
        for m in matchings(list(faces)):
            yield norm(m)
        return
    group = []
    for perm in itertools.permutations(range(n_pairs)):
        for swaps in itertools.product((0, 1), repeat=n_pairs):
            group.append((perm, swaps))

    def act(g, face):
        perm, swaps = g
        if face[0] == "d":
            return face
        _, pair, side = face
        return ("p", perm[pair], side ^ swaps[pair])

    seen = set()
    for m in matchings(list(faces)):
        m = norm(m)
        if m in seen:
            continue
        yield m
        for g in group:
            seen.add(norm([(act(g, a), act(g, b)) for a, b in m]))


def brute_force_census(family: str, k: int, budget: float = 1e8,
                       use_symmetry: bool = True) -> BruteForceResult:
    """Exhaustive enumeration over finite-face matchings with cusp pairs fixed."""
    if family == MKK:
        n_pairs, g = k, k
        with_delta0 = False
    elif family == MK1K:
        n_pairs, g = k, k + 1
        with_delta0 = True
    else:
        raise ValidationError(f"unknown family {family!r}")
    if k < 1:
        raise ValidationError("k must be >= 1")

    # tet ids: Delta_0 = 0 (if present), then A_i, B_i
    base = 1 if with_delta0 else 0

    def tet_of(face):
        if face[0] == "d":
            return 0, face[1]
        _, pair, side = face
        return base + 2 * pair + side, 3

    faces = [("p", i, s) for i in range(n_pairs) for s in (0, 1)]
    if with_delta0:
        faces = [("d", f) for f in range(4)] + faces
    n_faces = len(faces)
    n_match = 1
    for m in range(n_faces - 1, 0, -2):
        n_match *= m
    sign_vectors = 2 ** (n_pairs - (0 if with_delta0 else 1))
    full = n_match * sign_vectors * 3 ** (n_faces // 2)
    # orbit count is at least n_match / |S_k x| Z_2^k|; refuse early without enumerating
    group_order = math.factorial(n_pairs) * 2 ** n_pairs if use_symmetry else 1
    if full / group_order > budget:
        raise SearchBudgetExceeded(
            f"at least {full // group_order} candidates exceed budget {budget:g}")

    reps = list(_orbit_reps(faces, n_pairs, use_symmetry))
    total = len(reps) * sign_vectors * 3 ** (n_faces // 2)
    if total > budget:
        raise SearchBudgetExceeded(
            f"{total} candidates (of {full} before symmetry reduction) exceed budget {budget:g}")

    cusp_gl = []
    for i in range(n_pairs):
        a, b = base + 2 * i, base + 2 * i + 1
        for fa, fb, p in CUSP_PAIR:
            cusp_gl.append(FaceGluing(a, fa, b, fb, p))

    # compact edge nodes for the fast class count: pair i contributes 3 nodes
    # (A12~B12, A02~B01, A01~B02), Delta_0 contributes its 6 edges
    pair_node = {}
    for i in range(n_pairs):
        a, b = base + 2 * i, base + 2 * i + 1
        for n_idx, (ea, eb) in enumerate((((1, 2), (1, 2)), ((0, 2), (0, 1)),
                                          ((0, 1), (0, 2)))):
            pair_node[(a, ea)] = pair_node[(b, eb)] = 6 * with_delta0 + 3 * i + n_idx
    if with_delta0:
        for idx, e in enumerate(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))):
            pair_node[(0, e)] = idx
    n_nodes = 6 * with_delta0 + 3 * n_pairs

    classes: Dict[tuple, Triangulation] = {}
    candidates = valid = 0
    for m in reps:
        if not _gm_connected(m, n_pairs, with_delta0):
            candidates += sign_vectors * 3 ** len(m)
            continue
        for signs in itertools.product((1, -1), repeat=n_pairs):
            if not with_delta0 and signs[0] != 1:
                continue
            tsign = {}
            if with_delta0:
                tsign[0] = 1
            for i, s in enumerate(signs):
                tsign[base + 2 * i], tsign[base + 2 * i + 1] = s, -s
            options = []
            for fa, fb in m:
                (ta, xa), (tb, xb) = tet_of(fa), tet_of(fb)
                opts = [p for p in perms_sending(xa, xb)
                        if sign(p) * tsign[ta] * tsign[tb] == -1]
                edge_links = []
                for p in opts:
                    links = []
                    for u, w in itertools.combinations([v for v in range(4) if v != xa], 2):
                        x, y = sorted((p[u], p[w]))
                        links.append((pair_node[(ta, (u, w))], pair_node[(tb, (x, y))]))
                    edge_links.append(links)
                options.append([(ta, xa, tb, xb, p, lk) for p, lk in zip(opts, edge_links)])
            for choice in itertools.product(*options):
                candidates += 1
                if not _one_class(n_nodes, choice):
                    continue
                tetra = []
                if with_delta0:
                    tetra.append(Tetra(0, COMPACT, None, 1))
                for i in range(n_pairs):
                    for side in (0, 1):
                        tid = base + 2 * i + side
                        tetra.append(Tetra(tid, NONCOMPACT, 3, tsign[tid]))
                gl = list(cusp_gl) + [FaceGluing(ta, xa, tb, xb, p)
                                      for ta, xa, tb, xb, p, _ in choice]
                t = Triangulation(tuple(tetra), tuple(gl), {"g": g, "k": k})
                if not validate_minimal(t, g, k).ok:
                    continue
                valid += 1
                key = canonical_form(t)
                if key not in classes:
                    classes[key] = t
    ordered = [classes[key] for key in sorted(classes)]
    return BruteForceResult(len(ordered), ordered, candidates, valid)


def _gm_connected(m, n_pairs, with_delta0) -> bool:
    nodes = list(range(n_pairs)) + (["d"] if with_delta0 else [])
    parent = {v: v for v in nodes}

    def key(face):
        return "d" if face[0] == "d" else face[1]

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for a, b in m:
        parent[find(key(a))] = find(key(b))
    return len({find(v) for v in nodes}) == 1


def _one_class(n_nodes: int, choice) -> bool:
    parent = list(range(n_nodes))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    comps = n_nodes
    for *_, links in choice:
        for a, b in links:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                comps -= 1
    return comps == 1


# ---------------------------------------------------------------------------
# census table

def census_rows(family: str, k: int):
    rows = []
    for idx, (t, inv) in enumerate(enumerate_family(family, k)):
        grp = automorphism_group(t)
        rows.append({
            "k": k, "family": family, "class_index": idx,
            "i": "" if inv is None else inv.i, "j": "" if inv is None else inv.j,
            "aut_order": grp.order, "aut_or_preserving": grp.orientation_preserving_order,
            "canonical_hash": canonical_hash(t),
        })
    return rows
