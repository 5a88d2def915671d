"""Exact arithmetic: integer polynomials, resultants, cyclotomic fields and
the trace-field pipeline for the Coxeter polyhedra P_k."""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CyclicProductMismatch, InconsistentFactorization, ValidationError

# ---------------------------------------------------------------------------
# dense polynomials, constant term first.  Helpers work for int or Fraction.


def _trim(c: List) -> List:
    while c and c[-1] == 0:
        c.pop()
    return c


def padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a, b):
    return padd(a, [-x for x in b])


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def pscale(a, s):
    return _trim([x * s for x in a])


def pdivmod(a, b):
    """Division over the field of fractions (exact when b is monic over ints)."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] / lb if not isinstance(lb, int) or lb not in (1, -1) else a[-1] * lb
        if isinstance(coef, float):
            coef = Fraction(a[-1]) / lb
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] -= coef * y
        _trim(a)
    return _trim(q), a


def pderiv(a):
    return _trim([i * a[i] for i in range(1, len(a))])


def pgcd(a, b):
    """Monic gcd over Q."""
    a = [Fraction(x) for x in _trim(list(a))]
    b = [Fraction(x) for x in _trim(list(b))]
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def pxgcd(a, b):
    """(g, s, t) with s*a + t*b = g monic, over Q."""
    r0, r1 = [Fraction(x) for x in a], [Fraction(x) for x in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while _trim(r1):
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    lead = r0[-1]
    return [x / lead for x in r0], [x / lead for x in s0], [x / lead for x in t0]


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def degree(a) -> int:
    return len(_trim(list(a))) - 1


@dataclass(frozen=True)
class IntPoly:
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        if any(not isinstance(x, int) for x in c):
            raise ValidationError("IntPoly coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(_trim(c)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other):
        return IntPoly(tuple(pmul(list(self.coeffs), list(other.coeffs))))

    def __call__(self, x):
        return peval(self.coeffs, x)

    def compose_power(self, e: int) -> "IntPoly":
        """p(x^e)."""
        out = [0] * (e * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[e * i] = c
        return IntPoly(tuple(out))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else f"*x^{i}"))
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# cyclotomic polynomials and resultants

@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = pdivmod(num, list(cyclotomic_poly(d).coeffs))
            if r:
                raise ArithmeticError("inexact cyclotomic division")
            num = [int(x) for x in q]
    return IntPoly(tuple(num))


def _prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, integral."""
    d = len(a) - len(b) + 1
    lb = b[-1]
    a = list(a)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        lead = a[-1]
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[shift + i] -= lead * y
        _trim(a)
        d -= 1
    return [x * lb ** d for x in a] if d > 0 else a


def _content(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def resultant(f, g) -> int:
    """Exact Res(f, g) via the subresultant pseudo-remainder sequence."""
    A = list(f.coeffs if isinstance(f, IntPoly) else f)
    B = list(g.coeffs if isinstance(g, IntPoly) else g)
    A, B = _trim(A), _trim(B)
    if not A or not B:
        raise ValidationError("resultant of a zero polynomial")
    da, db = len(A) - 1, len(B) - 1
    if da == 0:
        return A[0] ** db
    if db == 0:
        return B[0] ** da
    if da < db:
        # Res(f, g) = (-1)^(deg f deg g) Res(g, f)
        return (-1) ** (da * db) * resultant(B, A)
    a, b = abs(_content(A)), abs(_content(B))
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a ** db * b ** da
    s = 1
    gg = h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        A = B
        div = gg * h ** delta
        B = [x // div for x in R]
        if not B:
            return 0
        gg = A[-1]
        if delta == 0:
            pass
        else:
            h = gg ** delta // h ** (delta - 1)
        if len(B) - 1 == 0:
            dA = len(A) - 1
            hh = B[-1] ** dA // h ** (dA - 1) if dA >= 1 else 1
            return s * t * hh


def resultant_of_cyclotomics(m: int, n: int) -> int:
    return resultant(cyclotomic_poly(m), cyclotomic_poly(n))


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


# ---------------------------------------------------------------------------
# cyclotomic field elements

class CycloElement:
    """Element of Q(zeta_n), zeta_n = exp(2 pi i / n), as a reduced polynomial."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence = ()):
        self.n = n
        phi = list(cyclotomic_poly(n).coeffs)
        c = [Fraction(x) for x in coeffs]
        if len(c) >= len(phi):
            _, c = pdivmod(c, phi)
        c = _trim(list(c))
        self.coeffs = tuple(c)

    # constructors
    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "CycloElement":
        power %= n
        return cls(n, [0] * power + [1])

    @classmethod
    def const(cls, n: int, value) -> "CycloElement":
        return cls(n, [value])

    def _coerce(self, other) -> "CycloElement":
        if isinstance(other, CycloElement):
            if other.n != self.n:
                raise ValidationError("mixing cyclotomic fields of different conductor")
            return other
        return CycloElement(self.n, [other])

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        return CycloElement(self.n, padd(list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return CycloElement(self.n, pmul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = pxgcd(list(self.coeffs), list(cyclotomic_poly(self.n).coeffs))
        if g != [1]:
            raise ArithmeticError("element not invertible")
        return CycloElement(self.n, s)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycloElement(self.n, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValidationError:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycloElement({self.n}, {[str(c) for c in self.coeffs]})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def conjugate(self) -> "CycloElement":
        """Complex conjugation zeta -> zeta^-1."""
        out = [Fraction(0)] * self.n
        for i, c in enumerate(self.coeffs):
            out[(-i) % self.n] += c
        return CycloElement(self.n, out)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def rational_value(self) -> Optional[Fraction]:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        return None

    def embed(self, j: int = 1) -> complex:
        """Value under zeta -> exp(2 pi i j / n)."""
        z = cmath.exp(2j * math.pi * j / self.n)
        return complex(peval([float(c) for c in self.coeffs], z))

    def galois(self, j: int) -> "CycloElement":
        """Apply zeta -> zeta^j (gcd(j, n) = 1)."""
        out = [Fraction(0)] * self.n
        for i, c in enumerate(self.coeffs):
            out[(i * j) % self.n] += c
        return CycloElement(self.n, out)


# ---------------------------------------------------------------------------
# linear algebra over Q

def charpoly(M: List[List[Fraction]]) -> List[Fraction]:
    """Characteristic polynomial det(xI - M), Faddeev-LeVerrier, constant first."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{n-k+1} I)
        prev = [[Mk[i][j] + coeffs[n - k + 1] * ident[i][j] for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def minimal_from_charpoly(cp: List[Fraction]) -> List[Fraction]:
    """Squarefree part; equals the minimal polynomial when cp is a power of an irreducible."""
    g = pgcd(cp, pderiv(cp))
    q, r = pdivmod(cp, g)
    if _trim(list(r)):
        raise ArithmeticError("charpoly not divisible by its gcd with the derivative")
    lead = q[-1]
    return [Fraction(x) / lead for x in q]


def _solve_basis(columns: List[List[Fraction]]):
    """Pick pivot rows so that the columns restricted to them are invertible.

    Returns (pivot_rows, inverse of restricted matrix)."""
    d = len(columns)
    N = len(columns[0])
    # rows x cols matrix
    mat = [[columns[c][r] for c in range(d)] for r in range(N)]
    pivots = []
    work = [row[:] for row in mat]
    basis_rows = []
    for r in range(N):
        row = work[r][:]
        for (pr, pc), brow in zip(pivots, basis_rows):
            if row[pc] != 0:
                f = row[pc] / brow[pc]
                row = [x - f * y for x, y in zip(row, brow)]
        nz = [c for c in range(d) if row[c] != 0]
        if nz:
            pivots.append((r, nz[0]))
            basis_rows.append(row)
            if len(pivots) == d:
                break
    if len(pivots) != d:
        raise ArithmeticError("basis vectors are linearly dependent")
    rows = [r for r, _ in pivots]
    sub = [[mat[r][c] for c in range(d)] for r in rows]
    return rows, _invert(sub)


def _invert(A: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(A)
    aug = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class RealSubfield:
    """Q(w) inside Q(zeta_n) for a real generator w, with power basis 1..w^(d-1)."""

    def __init__(self, w: CycloElement, degree: int):
        self.w = w
        self.n = w.n
        self.d = degree
        powers = [CycloElement.const(w.n, 1)]
        for _ in range(degree - 1):
            powers.append(powers[-1] * w)
        self.powers = powers
        N = euler_phi(w.n)
        self._cols = [self._vec(p, N) for p in powers]
        self._rows, self._inv = _solve_basis(self._cols)
        self._N = N

    @staticmethod
    def _vec(x: CycloElement, N: int) -> List[Fraction]:
        return [x.coeffs[i] if i < len(x.coeffs) else Fraction(0) for i in range(N)]

    def coordinates(self, x: CycloElement) -> List[Fraction]:
        """Coordinates of x in the power basis; raises if x is not in Q(w)."""
        v = self._vec(x, self._N)
        rhs = [v[r] for r in self._rows]
        c = [sum(self._inv[i][j] * rhs[j] for j in range(self.d)) for i in range(self.d)]
        recon = [sum(c[j] * self._cols[j][r] for j in range(self.d)) for r in range(self._N)]
        if recon != v:
            raise ArithmeticError("element does not lie in the subfield")
        return c

    def multiplication_matrix(self, x: CycloElement) -> List[List[Fraction]]:
        cols = [self.coordinates(x * p) for p in self.powers]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    def minimal_polynomial(self, x: CycloElement) -> List[Fraction]:
        return minimal_from_charpoly(charpoly(self.multiplication_matrix(x)))

    def is_algebraic_integer(self, x: CycloElement) -> bool:
        return all(c.denominator == 1 for c in self.minimal_polynomial(x))


# ---------------------------------------------------------------------------
# the P_k data

@dataclass(frozen=True)
class GramEntry:
    """c * sqrt(u) with c, u in the field; u == 1 for ordinary entries."""
    c: CycloElement
    u: CycloElement

    def __mul__(self, other: "GramEntry") -> "GramEntry":
        one = CycloElement.const(self.c.n, 1)
        if self.u == one:
            return GramEntry(self.c * other.c, other.u)
        if other.u == one:
            return GramEntry(self.c * other.c, self.u)
        if self.u == other.u:
            return GramEntry(self.c * other.c * self.u, one)
        return GramEntry(self.c * other.c, self.u * other.u)

    @property
    def sqrt_free(self) -> bool:
        return self.u == CycloElement.const(self.c.n, 1)

    def value(self) -> CycloElement:
        if not self.sqrt_free:
            raise ArithmeticError("entry carries an unreduced square root")
        return self.c

    def embed(self, j: int = 1) -> complex:
        return self.c.embed(j) * cmath.sqrt(self.u.embed(j))

    def is_zero(self) -> bool:
        return self.c.is_zero()


@dataclass
class PkData:
    k: int
    n: int                      # conductor 6k
    alpha: CycloElement         # 2 cos(pi/3k)
    z: CycloElement             # -alpha
    l1_sq: CycloElement
    l2: CycloElement
    gram: List[List[GramEntry]]


def pk_data(k: int) -> PkData:
    if not isinstance(k, int) or k < 2 or k % 2:
        raise ValidationError(f"k must be an even integer >= 2, got {k!r}")
    n = 6 * k
    eta = CycloElement.zeta(n)
    alpha = eta + eta.inverse()
    a2 = alpha * alpha
    l1_sq = 9 * a2 / (a2 - 1)
    l2 = -(a2 + 2) / (a2 - 1)
    z = -alpha
    one = CycloElement.const(n, 1)

    def e(x):
        return GramEntry(x if isinstance(x, CycloElement) else CycloElement.const(n, x), one)

    L1 = GramEntry(CycloElement.const(n, -1), l1_sq)   # l1_tilde = -sqrt(l1_sq) < 0
    Z, L2, O = e(z), e(l2), e(0)
    two, m1 = e(2), e(-1)
    gram = [
        [two, m1, m1, Z, O, O, L1],
        [m1, two, m1, Z, L1, O, O],
        [m1, m1, two, Z, O, L1, O],
        [Z, Z, Z, two, O, O, O],
        [O, L1, O, O, two, L2, L2],
        [O, O, L1, O, L2, two, L2],
        [L1, O, O, O, L2, L2, two],
    ]
    return PkData(k, n, alpha, z, l1_sq, l2, gram)


def cyclic_products(data: PkData, ordering: str = "increasing") -> List[CycloElement]:
    """Distinct nonzero cyclic products a_{i1 i2} ... a_{ir i1}.

    ``increasing`` uses each index subset once in natural order; ``all`` runs
    over every cyclic ordering of every subset.
    """
    G = data.gram
    found: Dict[CycloElement, None] = {}
    for r in range(1, 8):
        for subset in itertools.combinations(range(7), r):
            if ordering == "increasing":
                orders = [subset]
            else:
                orders = [(subset[0],) + rest for rest in itertools.permutations(subset[1:])]
            for idx in orders:
                prod = G[idx[0]][idx[0]] if r == 1 else None
                if r > 1:
                    prod = G[idx[0]][idx[1]]
                    for a, b in zip(idx[1:], idx[2:] + idx[:1]):
                        if prod.is_zero():
                            break
                        prod = prod * G[a][b]
                if prod.is_zero():
                    continue
                if not prod.sqrt_free:
                    raise ArithmeticError(f"odd square-root degree in cyclic product {idx}")
                found.setdefault(prod.value(), None)
    return list(found)


def listed_cyclic_products(data: PkData) -> List[CycloElement]:
    z2, l1s, l2 = data.z * data.z, data.l1_sq, data.l2
    n = data.n
    return [CycloElement.const(n, 2), CycloElement.const(n, 1), z2, l1s, l2 * l2,
            CycloElement.const(n, -1), -z2, l2 * l2 * l2, -(l1s * l2), l1s * l2,
            -(l1s * l2 * l2)]


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0] * 0


@dataclass
class GramExact:
    k: int
    products: List[CycloElement]
    det_gprime: CycloElement
    disc_radicand: int
    data: PkData


def gram_prime(data: PkData) -> List[List[CycloElement]]:
    scale = [CycloElement.const(data.n, 2), CycloElement.const(data.n, -1),
             CycloElement.const(data.n, -1), data.z]
    return [[scale[i] * scale[j] * data.gram[i][j].value() for j in range(4)] for i in range(4)]


def gram_exact(k: int) -> GramExact:
    data = pk_data(k)
    prods = cyclic_products(data)
    expected = listed_cyclic_products(data)
    if set(prods) != set(expected):
        raise CyclicProductMismatch(
            f"k={k}: {len(set(prods))} distinct cyclic products vs {len(set(expected))} listed")
    det = _det(gram_prime(data))
    z4 = data.z ** 4
    if det != -108 * z4:
        raise ArithmeticError(f"det G'_k != -108 z^4 at k={k}")
    # -108 z^4 = -3 (6 z^2)^2, so the square class is that of -3
    if -3 * (6 * data.z * data.z) ** 2 != det:
        raise ArithmeticError("square-class identity failed")
    return GramExact(k, prods, det, -3, data)


# ---------------------------------------------------------------------------
# norms and verdicts

def phi3_of_x2() -> IntPoly:
    return cyclotomic_poly(3).compose_power(2)


def _int_root(n: int, r: int) -> Optional[int]:
    x = round(abs(n) ** (1.0 / r))
    for c in (x - 1, x, x + 1):
        if c >= 0 and c ** r == abs(n):
            return c
    return None


@dataclass
class NormCheck:
    k: int
    norm_over_cyclotomic: int
    norm_over_Nk: int
    factored: Tuple[int, int]


def norm_alpha_check(k: int) -> NormCheck:
    if not isinstance(k, int) or k < 2 or k % 2:
        raise ValidationError(f"k must be an even integer >= 2, got {k!r}")
    phi = cyclotomic_poly(6 * k)
    direct = resultant(phi, phi3_of_x2())
    r3, r6 = resultant(phi, cyclotomic_poly(3)), resultant(phi, cyclotomic_poly(6))
    if r3 * r6 != direct:
        raise InconsistentFactorization(f"k={k}: {r3}*{r6} != {direct}")
    root = _int_root(direct, 4)
    if root is None:
        raise InconsistentFactorization(f"k={k}: cyclotomic norm {direct} is not a 4th power")
    # sign: product of alpha^2 - 1 = 2cos(2 pi j/3k) + 1 over the real embeddings of N_k
    m = 3 * k
    prod = 1.0
    for j in range(1, m):
        if 2 * j < m and math.gcd(j, m) == 1:
            prod *= 2 * math.cos(2 * math.pi * j / m) + 1
    if abs(abs(prod) - root) > 1e-6 * max(1, root):
        raise InconsistentFactorization(f"k={k}: numeric norm {prod} vs {root}")
    return NormCheck(k, direct, root if prod > 0 else -root, (r3, r6))


@dataclass
class ArithVerdict:
    k: int
    trace_field_degree: int
    adjoint_field_degree: int
    disc_radicand: int
    integral_traces: bool
    quasi_arithmetic: bool
    arithmetic: bool
    norms: NormCheck

    def to_dict(self) -> dict:
        return {"k": self.k, "degree": self.trace_field_degree,
                "adjoint_degree": self.adjoint_field_degree,
                "disc_radicand": self.disc_radicand, "integral": self.integral_traces,
                "quasi_arithmetic": self.quasi_arithmetic, "arithmetic": self.arithmetic,
                "norms": {"cyclotomic": self.norms.norm_over_cyclotomic,
                          "relative": self.norms.norm_over_Nk}}


def adjoint_field(data: PkData) -> RealSubfield:
    """N_k = Q(alpha^2) = Q(cos(2 pi/3k)) of degree phi(3k)/2."""
    a2 = data.alpha * data.alpha
    d = max(1, euler_phi(3 * data.k) // 2)
    return RealSubfield(a2, d)


def arithmetic_verdict(k: int) -> ArithVerdict:
    ge = gram_exact(k)
    field = adjoint_field(ge.data)
    a2 = ge.data.alpha * ge.data.alpha
    mp = field.minimal_polynomial(a2)
    adjoint_degree = len(mp) - 1
    for x in ge.products:
        if not x.is_real():
            raise ArithmeticError("cyclic product is not real")
        field.coordinates(x)   # membership in N_k
    # N_k is totally real and disc = -3 < 0, so L_k = N_k(sqrt(-3)) has twice the degree
    trace_degree = 2 * adjoint_degree
    if trace_degree != euler_phi(3 * k):
        raise ArithmeticError(f"k={k}: trace field degree {trace_degree} != phi(3k)")
    integral = all(field.is_algebraic_integer(x) for x in ge.products)
    norms = norm_alpha_check(k)
    if integral != (abs(norms.norm_over_Nk) == 1) or integral == is_power_of_two(k):
        raise ArithmeticError(f"k={k}: integrality cross-check failed")
    quasi = trace_degree == 2
    return ArithVerdict(k, trace_degree, adjoint_degree, ge.disc_radicand, integral, quasi,
                        quasi and integral, norms)
