"""End-to-end acceptance checks shared by ``mincusp verify`` and the test suite."""
from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import census as C
from . import exactnum as X
from . import geometry as G
from . import spine as S
from .perm import S4
from .triangulation import LEFT, RIGHT, build_mk1k, build_mkk, relabel

MKK_COUNTS = {1: 0, 2: 1, 3: 0, 4: 1, 5: 0, 6: 1, 7: 0, 8: 1}
MK1K_COUNTS = {1: 1, 2: 1, 3: 2, 4: 1, 5: 3, 6: 2, 7: 4, 8: 2}
VOL_M2 = 18.2689489153 / 2


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float
    limit: float = math.inf

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lim = "" if math.isinf(self.limit) else f" (limit {self.limit:g} s)"
        return f"[{status}] {self.number}. {self.name}: {self.detail} [{self.seconds:.1f} s{lim}]"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "ok": self.ok,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(fn: Callable[[], tuple]):
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def random_relabel(t, rng: random.Random):
    order = list(range(len(t.tetra)))
    rng.shuffle(order)
    return relabel(t, order, [rng.choice(S4) for _ in order])


def census_counts(quick: bool = False, seed: int = 0) -> List[CriterionResult]:
    out = []

    def constructive():
        got_kk = {k: len(C.enumerate_family(C.MKK, k)) for k in range(1, 9)}
        got_k1 = {k: len(C.enumerate_family(C.MK1K, k)) for k in range(1, 9)}
        ok = got_kk == MKK_COUNTS and got_k1 == MK1K_COUNTS
        return ok, (f"Mkk {[got_kk[k] for k in range(1, 9)]}, "
                    f"Mk1k {[got_k1[k] for k in range(1, 9)]}")

    ok, detail, sec = _timed(constructive)
    out.append(CriterionResult(1, "census counts (constructive)", ok and sec < 10, detail, sec, 10))

    def oracle():
        cases = [(C.MKK, 1), (C.MKK, 2), (C.MK1K, 1), (C.MK1K, 2)]
        if not quick:
            cases += [(C.MKK, 3), (C.MK1K, 3), (C.MK1K, 4)]
        bad = []
        rng = random.Random(seed)
        for k in range(1, 5):
            for fam in (C.MKK, C.MK1K):
                for t, _ in C.enumerate_family(fam, k):
                    if C.canonical_form(random_relabel(t, rng)) != C.canonical_form(t):
                        bad.append(f"{fam} k={k}: canonical form not relabel-invariant")
        for fam, k in cases:
            want = (MKK_COUNTS if fam == C.MKK else MK1K_COUNTS)[k]
            got = C.brute_force_census(fam, k).count
            if got != want:
                bad.append(f"{fam} k={k}: {got} != {want}")
        return not bad, ("; ".join(bad) or f"{len(cases)} brute-force cases agree")

    ok, detail, sec = _timed(oracle)
    out.append(CriterionResult(1, "census counts (brute-force oracle)", ok and sec < 300,
                               detail, sec, 300))
    return out


def isometry_groups(quick: bool = False) -> List[CriterionResult]:
    def run():
        bad = []
        for k in (2, 4) if quick else (2, 4, 6):
            for tw in (LEFT, RIGHT):
                grp = C.automorphism_group(build_mkk(k, tw))
                if grp.order != 6 * k or grp.orientation_preserving_order != 3 * k \
                        or grp.dihedral is None:
                    bad.append(f"M_{tw}({k}) |Aut|={grp.order}")
        n = 0
        for k in range(1, (4 if quick else 6) + 1):
            for t, inv in C.enumerate_family(C.MK1K, k):
                want = 2 if inv.i == inv.j else 1
                n += 1
                if C.automorphism_group(t).order != want:
                    bad.append(f"Mk1k k={k} {inv}")
        return not bad, "; ".join(bad) or f"D_3k for Mkk, {n} Mk1k classes with |Aut| in {{1,2}}"

    ok, detail, sec = _timed(run)
    return [CriterionResult(2, "isometry groups", ok, detail, sec)]


def dehn_filling(quick: bool = False) -> List[CriterionResult]:
    def run():
        bad = []
        t = build_mkk(2)
        _, tr = S.dehn_fill(t, 1, S.MODEL_SLOPE, model=True)
        if (len(tr.points), len(tr.j_faces), tr.final_counts) != (3, 4, (3, 6, 2)):
            bad.append(f"model transcript {len(tr.points)} pts, {len(tr.j_faces)} J, "
                       f"{tr.final_counts}")
        if S.replay_transcript(t, tr).signature() != tr.final_spine.signature():
            bad.append("transcript replay mismatch")
        n = 0
        for k in (2, 4):
            ref = build_mk1k(0, k - 1)
            for tw in (LEFT,) if quick else (LEFT, RIGHT):
                t = build_mkk(k, tw)
                for cusp in range(1, k + 1):
                    for sl in S.THEOREM_SLOPES:
                        filled, _ = S.dehn_fill(t, cusp, sl)
                        n += 1
                        if C.is_isomorphic(filled, ref) is None:
                            bad.append(f"k={k} {tw} cusp {cusp} slope {sl}")
        return not bad, "; ".join(bad) or (f"model slope 3 pts/4 J/(3,6,2); {n} fillings "
                                           f"isomorphic to M(0,k-1)")

    ok, detail, sec = _timed(run)
    return [CriterionResult(3, "Dehn filling", ok, detail, sec)]


def volumes(quick: bool = False) -> List[CriterionResult]:
    def run():
        bad = []
        v2 = G.volume_closed_form(2)
        if abs(v2 - VOL_M2) > 1e-9:
            bad.append(f"vol(M_2) = {v2!r}")
        worst = 0.0
        for k in range(2, 25, 2):
            r = G.volume_Mkk(k)
            worst = max(worst, abs(r.cross_check - r.volume))
            w = cmath.exp(-2j * math.pi / (3 * k))
            if abs(r.Z1 - 1) > 1e-12 or abs(r.Z2 + w) > 1e-12:
                bad.append(f"k={k} Z1={r.Z1} Z2={r.Z2}")
        if worst > 1e-10:
            bad.append(f"closed form vs Ushijima {worst:g}")
        for k in range(2, 101, 2):
            lo, hi = G.volume_bounds(k)
            if not lo <= G.volume_closed_form(k) <= hi:
                bad.append(f"bounds fail at k={k}")
        return not bad, "; ".join(bad) or f"vol(M_2)={v2:.10f}, max |closed-Ushijima|={worst:.1e}"

    ok, detail, sec = _timed(run)
    return [CriterionResult(4, "volumes", ok and sec < 30, detail, sec, 30)]


def arithmetic(quick: bool = False) -> List[CriterionResult]:
    def run():
        bad = []
        for k in range(2, (12 if quick else 20) + 1, 2):
            try:
                ge = X.gram_exact(k)
            except ArithmeticError as e:
                bad.append(str(e))
                continue
            if ge.det_gprime != -108 * ge.data.z ** 4:
                bad.append(f"k={k} det G'")
            v = X.arithmetic_verdict(k)
            if v.trace_field_degree != X.euler_phi(3 * k):
                bad.append(f"k={k} degree {v.trace_field_degree}")
            if v.integral_traces == X.is_power_of_two(k):
                bad.append(f"k={k} integral={v.integral_traces}")
            if v.quasi_arithmetic != (k == 2):
                bad.append(f"k={k} quasi={v.quasi_arithmetic}")
        for k in range(2, 33, 2):
            want = 16 if X.is_power_of_two(k) else 1
            got = X.norm_alpha_check(k).norm_over_cyclotomic
            if got != want:
                bad.append(f"k={k} resultant product {got}")
        return not bad, "; ".join(bad) or "det, degrees, integrality, quasi-arithmeticity, norms"

    ok, detail, sec = _timed(run)
    return [CriterionResult(5, "arithmetic invariants", ok and sec < 120, detail, sec, 120)]


def gram_cross_check(k: int) -> float:
    """Largest gap between the exact Gram matrix (real embedding) and the float one."""
    data = X.pk_data(k)
    E = np.array([[x.embed(1) for x in row] for row in data.gram])
    return float(max(np.max(np.abs(E.imag)), np.max(np.abs(E.real - G.gram_matrix(k)))))


def structure(quick: bool = False) -> List[CriterionResult]:
    def run():
        bad = []
        n = 0
        for k in range(1, (4 if quick else 8) + 1):
            for fam in (C.MKK, C.MK1K):
                for t, _ in C.enumerate_family(fam, k):
                    s = S.dualize(t)
                    g = t.meta["g"]
                    n += 1
                    if s.euler_characteristic() != 1 - g or len(S.big_face_word(s)) != 6 * g:
                        bad.append(f"{fam} k={k}")
        gap = max(gram_cross_check(k) for k in range(2, 25, 2))
        if gap > 1e-10:
            bad.append(f"Gram cross-check {gap:g}")
        for k in range(2, 25, 2):
            if G.gram_numeric_signature(k).signature != (3, 1):
                bad.append(f"signature k={k}")
        return not bad, "; ".join(bad) or (f"{n} spines with chi=1-g and |G|=6g; "
                                           f"Gram gap {gap:.1e}; signature (3,1)")

    ok, detail, sec = _timed(run)
    return [CriterionResult(6, "structural properties", ok, detail, sec)]


CRITERIA = (census_counts, isometry_groups, dehn_filling, volumes, arithmetic, structure)


def run_all(quick: bool = False, seed: int = 0) -> List[CriterionResult]:
    out = census_counts(quick, seed)
    for fn in CRITERIA[1:]:
        out.extend(fn(quick))
    return out
