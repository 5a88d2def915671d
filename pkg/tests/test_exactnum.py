import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mincusp import exactnum as X
from mincusp.errors import ValidationError

x = sympy.Symbol("x")


def _sympy_poly(coeffs):
    return sympy.Poly(list(reversed([int(c) for c in coeffs])), x)


def test_cyclotomic_examples():
    assert X.cyclotomic_poly(3).coeffs == (1, 1, 1)
    assert X.cyclotomic_poly(1).coeffs == (-1, 1)
    assert X.cyclotomic_poly(12).coeffs == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_matches_sympy(n):
    ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    assert list(reversed(X.cyclotomic_poly(n).coeffs)) == ref


def test_resultant_examples():
    assert X.resultant_of_cyclotomics(12, 3) == 4
    assert X.resultant_of_cyclotomics(36, 3) == 1
    assert X.resultant(X.cyclotomic_poly(7), X.IntPoly((1,))) == 1


def _sylvester_det(f, g):
    """Determinant of the Sylvester matrix (coefficients given low degree first)."""
    a, b = list(reversed(f)), list(reversed(g))
    m, n = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det())


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6),
       st.lists(st.integers(-6, 6), min_size=2, max_size=6))
def test_resultant_matches_sylvester_determinant(f, g):
    f = X.IntPoly(tuple(f))
    g = X.IntPoly(tuple(g))
    if f.degree < 1 or g.degree < 1:
        return
    assert X.resultant(f, g) == _sylvester_det(f.coeffs, g.coeffs)


def _apostol(m, n):
    """Closed form of Res(Phi_m, Phi_n) for m > n > 1."""
    if m % n:
        return 1
    q = m // n
    for p in sympy.primerange(2, q + 1):
        e = 0
        r = q
        while r % p == 0:
            r //= p
            e += 1
        if r == 1 and e > 0:
            return p ** X.euler_phi(n)
    return 1


def test_cyclotomic_resultants_match_apostol():
    rng = random.Random(5)
    pairs = {(rng.randint(3, 40), rng.randint(2, 20)) for _ in range(60)}
    pairs |= {(6 * k, 3) for k in range(1, 17)}
    for m, n in sorted(pairs):
        if m <= n:
            continue
        assert abs(X.resultant_of_cyclotomics(m, n)) == _apostol(m, n), (m, n)


def _elements(n):
    N = X.euler_phi(n)
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                    min_size=N, max_size=N).map(lambda c: X.CycloElement(n, c))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_cyclo_ring_axioms(data):
    n = data.draw(st.sampled_from([3, 8, 12, 18]))
    a, b, c = (data.draw(_elements(n)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == X.CycloElement.const(n, 1)
    # embedding is a ring homomorphism
    assert abs((a * b).embed(1) - a.embed(1) * b.embed(1)) < 1e-9 * (1 + abs(a.embed(1) * b.embed(1)))


def test_pk_data_at_k2():
    d = X.pk_data(2)
    assert d.z * d.z == X.CycloElement.const(12, 3)
    assert d.l1_sq.rational_value() == Fraction(27, 2)
    assert d.l2.rational_value() == Fraction(-5, 2)
    ge = X.gram_exact(2)
    assert ge.det_gprime.rational_value() == -972
    assert ge.disc_radicand == -3


@pytest.mark.parametrize("k", range(2, 21, 2))
def test_det_gram_prime(k):
    ge = X.gram_exact(k)
    assert ge.det_gprime == -108 * ge.data.z ** 4


def test_cyclic_products_orderings():
    d = X.pk_data(2)
    assert len(set(X.cyclic_products(d))) == 11
    assert len(set(X.cyclic_products(d, "all"))) == 16


def test_norm_examples():
    assert (X.norm_alpha_check(2).norm_over_cyclotomic, X.norm_alpha_check(2).norm_over_Nk) == (16, 2)
    assert X.norm_alpha_check(4).norm_over_Nk == -2
    assert (X.norm_alpha_check(6).norm_over_cyclotomic, X.norm_alpha_check(6).norm_over_Nk) == (1, -1)


@pytest.mark.parametrize("k", range(2, 33, 2))
def test_resultant_product(k):
    want = 16 if k in (2, 4, 8, 16, 32) else 1
    assert X.norm_alpha_check(k).norm_over_cyclotomic == want


def test_adjoint_field_minimal_polynomial_matches_sympy():
    for k in (2, 4, 6, 10):
        d = X.pk_data(k)
        field = X.adjoint_field(d)
        a2 = d.alpha * d.alpha
        mp = field.minimal_polynomial(a2)
        ref = sympy.minimal_polynomial(4 * sympy.cos(sympy.pi / (3 * k)) ** 2, x)
        ours = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(mp))
        assert sympy.expand(ours - ref) == 0 or sympy.expand(ours + ref) == 0


def test_integrality_at_k6():
    d = X.pk_data(6)
    field = X.adjoint_field(d)
    assert all(field.is_algebraic_integer(p) for p in X.cyclic_products(d))


def test_verdict_examples():
    v = X.arithmetic_verdict(2)
    assert (v.trace_field_degree, v.integral_traces, v.quasi_arithmetic, v.arithmetic) == \
        (2, False, True, False)
    v = X.arithmetic_verdict(6)
    assert (v.trace_field_degree, v.integral_traces, v.quasi_arithmetic) == (6, True, False)
    assert X.arithmetic_verdict(8).integral_traces is False


def test_bad_k_rejected():
    with pytest.raises(ValidationError):
        X.pk_data(3)
    with pytest.raises(ValidationError):
        X.norm_alpha_check(0)
