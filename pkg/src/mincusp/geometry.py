"""Hyperbolic trigonometry of the polyhedra P_k, dilogarithms and volumes."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import (ConsistencyError, CrossCheckError, DomainError, NonRealizableAngles,
                     SignatureError, ValidationError)

PI = math.pi


def _check_k(k):
    if not isinstance(k, (int, np.integer)) or k < 2 or k % 2:
        raise ValidationError(f"k must be an even integer >= 2, got {k!r}")


def theta(k: int) -> float:
    return PI / (3 * k)


# ---------------------------------------------------------------------------
# hyperbolic trigonometry

@dataclass(frozen=True)
class GeometricData:
    k: int
    theta: float
    cosh_d: float
    cosh_p: float
    cosh_l1: float
    cosh_l2: float
    z: float
    l1_tilde: float
    l2_tilde: float


def geometry_params(k: int, tol: float = 1e-12) -> GeometricData:
    """Closed-form lengths of P_k.

    cosh p uses sqrt(1 + 2cos 2t) = sqrt(4cos^2 t - 1); with this the
    identity cosh l1 = sin t cosh p holds and the Gram matrix has rank 4.
    """
    _check_k(k)
    t = theta(k)
    c, s = math.cos(t), math.sin(t)
    if not PI / 3 + 2 * t < PI:
        raise ValidationError("angles do not fit a hyperbolic polyhedron")
    root = math.sqrt(1 + 2 * math.cos(2 * t))
    cosh_d = (0.5 + c * c) / (s * s)
    cosh_l2 = (0.5 + c * c) / (0.5 + math.cos(2 * t))
    cosh_p = 3 * c / (s * root)
    cosh_l1 = 3 * c / root
    if abs(cosh_l1 - s * cosh_p) > tol * max(1.0, cosh_l1):
        raise ConsistencyError(f"cosh l1 - sin(t) cosh p = {cosh_l1 - s * cosh_p:g}")
    for name, v in (("d", cosh_d), ("p", cosh_p), ("l1", cosh_l1), ("l2", cosh_l2)):
        if v < 1:
            raise ConsistencyError(f"cosh {name} = {v} < 1")
    return GeometricData(k, t, cosh_d, cosh_p, cosh_l1, cosh_l2,
                         -2 * c, -2 * cosh_l1, -2 * cosh_l2)


def gram_matrix(k: int) -> np.ndarray:
    """7x7 Gram matrix of P_k, diagonal 2."""
    g = geometry_params(k)
    z, l1, l2 = g.z, g.l1_tilde, g.l2_tilde
    return np.array([
        [2, -1, -1, z, 0, 0, l1],
        [-1, 2, -1, z, l1, 0, 0],
        [-1, -1, 2, z, 0, l1, 0],
        [z, z, z, 2, 0, 0, 0],
        [0, l1, 0, 0, 2, l2, l2],
        [0, 0, l1, 0, l2, 2, l2],
        [l1, 0, 0, 0, l2, l2, 2],
    ], dtype=float)


@dataclass
class SignatureResult:
    eigenvalues: np.ndarray
    signature: Tuple[int, int]
    rank: int
    normals: np.ndarray          # 7 x 4, rows are normal vectors
    form: np.ndarray             # diagonal of the (3,1) form
    residual: float


def gram_numeric_signature(k: int, tol: float = 1e-8) -> SignatureResult:
    G = gram_matrix(k)
    w, V = np.linalg.eigh(G)
    pos = int(np.sum(w > tol))
    neg = int(np.sum(w < -tol))
    zero = len(w) - pos - neg
    if (pos, neg, zero) != (3, 1, 3):
        raise SignatureError(f"k={k}: eigenvalue counts +{pos} -{neg} 0:{zero}")
    keep = np.abs(w) > tol
    normals = V[:, keep] * np.sqrt(np.abs(w[keep]))
    form = np.sign(w[keep])
    recon = normals @ np.diag(form) @ normals.T
    residual = float(np.max(np.abs(recon - G)))
    if residual > tol:
        raise SignatureError(f"k={k}: normal reconstruction residual {residual:g}")
    return SignatureResult(w, (pos, neg), pos + neg, normals, form, residual)


# ---------------------------------------------------------------------------
# dilogarithm and Clausen / Bloch-Wigner

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        s = Fraction(0)
        for j in range(m):
            s += math.comb(m + 1, j) * B[j]
        B.append(-s / (m + 1))
    return B[n]


_N_TERMS = 40
# coefficients of the Bernoulli series Li2(z) = sum_n B_n u^(n+1) / (n+1)!
_LI2_COEF = [float(bernoulli(n)) / math.factorial(n + 1) for n in range(_N_TERMS)]
# Clausen series coefficients |B_2n| / (2n (2n+1)!)
_CL2_COEF = [abs(float(bernoulli(2 * n))) / (2 * n * math.factorial(2 * n + 1))
             for n in range(1, _N_TERMS)]


def _li2_core(z: complex) -> complex:
    """Li2 for |z| <= 1, Re z <= 1/2, via the series in u = -log(1 - z)."""
    u = -cmath.log(1 - z)
    total = 0j
    upow = u
    for n, c in enumerate(_LI2_COEF):
        if c:
            total += c * upow
        upow *= u
        if n > 4 and abs(upow) * 1e-30 > 1:
            break
    return total


def dilog(z, tol: float = 1e-12) -> complex:
    """Li2(z) for |z| <= 1 (+ tol)."""
    z = complex(z)
    r = abs(z)
    if r > 1 + tol:
        raise DomainError(f"|z| = {r} > 1")
    if r > 1:
        z = z / r
    if z == 1:
        return complex(PI * PI / 6)
    if z == 0:
        return 0j
    if z.real > 0.5:
        w = 1 - z
        return -_li2_core(w) + PI * PI / 6 - cmath.log(z) * cmath.log(w)
    return _li2_core(z)


def clausen(t: float) -> float:
    """Cl2(t) = sum sin(n t)/n^2, odd and 2 pi periodic."""
    t = math.fmod(t, 2 * PI)
    if t > PI:
        t -= 2 * PI
    elif t <= -PI:
        t += 2 * PI
    if t == 0:
        return 0.0
    sgn = 1.0 if t > 0 else -1.0
    a = abs(t)
    total = a - a * math.log(a)
    t2 = a * a
    p = a * t2
    for c in _CL2_COEF:
        term = c * p
        total += term
        if term < 1e-18:
            break
        p *= t2
    return sgn * total


def bloch_wigner(t: float) -> float:
    """D(e^{it}) = Im Li2(e^{it})."""
    return clausen(t)


def bloch_wigner_z(z) -> float:
    """D(z) = Im Li2(z) + arg(1 - z) log|z| for |z| <= 1."""
    z = complex(z)
    if z == 0:
        return 0.0
    if abs(abs(z) - 1) < 1e-15:
        return clausen(cmath.phase(z))
    return dilog(z).imag + cmath.phase(1 - z) * math.log(abs(z))


# ---------------------------------------------------------------------------
# Ushijima volume of a truncated tetrahedron

ANGLE_KEYS = ("12", "13", "14", "23", "24", "34")


@dataclass(frozen=True)
class UshijimaInput:
    """Dihedral angles theta_ij at the edge between faces i and j."""
    theta12: float
    theta13: float
    theta14: float
    theta23: float
    theta24: float
    theta34: float

    def __post_init__(self):
        for key in ANGLE_KEYS:
            v = getattr(self, "theta" + key)
            if not 0 < v < PI:
                raise ValidationError(f"theta{key} = {v} not in (0, pi)")

    def angle(self, i: int, j: int) -> float:
        i, j = min(i, j), max(i, j)
        return getattr(self, f"theta{i}{j}")

    def letters(self) -> Dict[str, complex]:
        """a, b, c at the vertex shared by faces 1, 2, 3; d, e, f opposite."""
        t = {"a": self.theta12, "b": self.theta13, "c": self.theta23,
             "d": self.theta34, "e": self.theta24, "f": self.theta14}
        return {k: cmath.exp(1j * v) for k, v in t.items()}

    @classmethod
    def for_Mk(cls, k: int) -> "UshijimaInput":
        """Angles of a tetrahedron of M_k: pi/3 at the ideal vertex, pi/3k on the finite face."""
        _check_k(k)
        t = theta(k)
        return cls(PI / 3, PI / 3, t, PI / 3, t, t)


# Gram conventions: (diagonal entry, multiplier on sqrt(det G))
GRAM_CONVENTIONS = {
    "unit_2sqrt": (1.0, 2.0),
    "unit_sqrt": (1.0, 1.0),
    "double_sqrt": (2.0, 1.0),
}
DEFAULT_CONVENTION = "unit_2sqrt"


@dataclass
class VolumeResult:
    volume: float
    method: str
    Z1: Optional[complex] = None
    Z2: Optional[complex] = None
    U1: Optional[complex] = None
    U2: Optional[complex] = None
    terms: Dict[str, complex] = field(default_factory=dict)
    imag_residue: float = 0.0
    cross_check: Optional[float] = None
    ideal_vertices: int = 0      # vertices with angle sum pi (limit case of truncation)


def angle_gram(inp: UshijimaInput, diagonal: float = 1.0) -> np.ndarray:
    G = np.eye(4) * diagonal
    for i in range(4):
        for j in range(i + 1, 4):
            G[i, j] = G[j, i] = -math.cos(inp.angle(i + 1, j + 1)) * diagonal
    return G


def ushijima_Z(inp: UshijimaInput, convention: str = DEFAULT_CONVENTION) -> Tuple[complex, complex]:
    diag, mult = GRAM_CONVENTIONS[convention]
    L = inp.letters()
    a, b, c, d, e, f = (L[x] for x in "abcdef")
    s = {key: math.sin(getattr(inp, "theta" + key)) for key in ANGLE_KEYS}
    num = -2 * (s["12"] * s["34"] + s["13"] * s["24"] + s["14"] * s["23"])
    den = (a * d + b * e + c * f + a * b * f + a * c * e + b * c * d + d * e * f
           + a * b * c * d * e * f)
    det = float(np.linalg.det(angle_gram(inp, diag)))
    if det >= -1e-14:
        raise NonRealizableAngles(f"det G = {det:g} is not negative")
    root = cmath.sqrt(det)   # principal branch: i * sqrt(|det|)
    return (num + mult * root) / den, (num - mult * root) / den


def _U(z: complex, L: Dict[str, complex]) -> Tuple[complex, Dict[str, complex]]:
    a, b, c, d, e, f = (L[x] for x in "abcdef")
    plus = {"z": z, "abdez": a * b * d * e * z, "acdfz": a * c * d * f * z,
            "bcefz": b * c * e * f * z}
    minus = {"-abcz": -a * b * c * z, "-aefz": -a * e * f * z, "-bdfz": -b * d * f * z,
             "-cdez": -c * d * e * z}
    terms = {}
    total = 0j
    for key, w in plus.items():
        terms[key] = dilog(w)
        total += terms[key]
    for key, w in minus.items():
        terms[key] = dilog(w)
        total -= terms[key]
    return total / 2, terms


def ideal_vertex_count(inp: UshijimaInput, tol: float = 1e-12) -> int:
    """Vertices whose three faces have a singular Gram minor (Euclidean link)."""
    G = angle_gram(inp, 1.0)
    n = 0
    for v in range(4):
        faces = [i for i in range(4) if i != v]
        n += abs(np.linalg.det(G[np.ix_(faces, faces)])) < tol
    return int(n)


def ushijima_volume(inp: UshijimaInput, convention: str = DEFAULT_CONVENTION) -> VolumeResult:
    Z1, Z2 = ushijima_Z(inp, convention)
    L = inp.letters()
    U1, t1 = _U(Z1, L)
    U2, t2 = _U(Z2, L)
    diff = U1 - U2
    V = diff.imag / 2
    terms = {f"Z1:{k}": v for k, v in t1.items()}
    terms.update({f"Z2:{k}": v for k, v in t2.items()})
    res = VolumeResult(V, "ushijima", Z1, Z2, U1, U2, terms,
                       ideal_vertices=ideal_vertex_count(inp))
    if not V > 0:
        raise NonRealizableAngles(f"non-positive volume {V}")
    return res


def calibrate_convention(k: int = 2, tol: float = 1e-12) -> str:
    """Pick the Gram convention for which Z1 = 1 at the M_k angles."""
    inp = UshijimaInput.for_Mk(k)
    hits = [name for name in GRAM_CONVENTIONS
            if abs(ushijima_Z(inp, name)[0] - 1) < tol]
    if len(hits) != 1:
        raise CrossCheckError(f"calibration ambiguous or empty: {hits}")
    return hits[0]


# ---------------------------------------------------------------------------
# vol(M_k)

def volume_closed_form(k: int) -> float:
    a = 2 * PI / 3
    b = 2 * PI / (3 * k)
    return 1.5 * k * (bloch_wigner(a + b) + 2 * bloch_wigner(PI / 3) + bloch_wigner(a - b))


def volume_bounds(k: int) -> Tuple[float, float]:
    return 4.5 * k, PI * PI * k


def volume_Mkk(k: int, tol: float = 1e-10, check: bool = True) -> VolumeResult:
    _check_k(k)
    v = volume_closed_form(k)
    res = VolumeResult(v, "closed_form")
    if check:
        direct = ushijima_volume(UshijimaInput.for_Mk(k))
        total = 2 * k * direct.volume
        res.Z1, res.Z2, res.U1, res.U2 = direct.Z1, direct.Z2, direct.U1, direct.U2
        res.cross_check = total
        if abs(total - v) > tol * max(1.0, v / 10):
            raise CrossCheckError(f"k={k}: closed form {v!r} vs Ushijima {total!r}")
    lo, hi = volume_bounds(k)
    if not lo <= v <= hi:
        raise CrossCheckError(f"k={k}: volume {v} outside [{lo}, {hi}]")
    return res
