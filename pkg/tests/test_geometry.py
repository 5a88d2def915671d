import cmath
import math
import random

import mpmath
import numpy as np
import pytest

from mincusp import geometry as G
from mincusp.errors import DomainError, NonRealizableAngles, ValidationError

mpmath.mp.dps = 30


def test_lengths_at_k2():
    g = G.geometry_params(2)
    assert g.cosh_l2 == pytest.approx(1.25, abs=1e-15)
    assert math.acosh(g.cosh_l2) == pytest.approx(math.log(2), abs=1e-12)
    assert g.cosh_l1 == pytest.approx(3 * math.sqrt(3) / (2 * math.sqrt(2)), abs=1e-14)


@pytest.mark.parametrize("k", range(2, 41, 2))
def test_pentagon_consistency(k):
    g = G.geometry_params(k)
    assert abs(g.cosh_l1 - math.sin(g.theta) * g.cosh_p) < 1e-12


@pytest.mark.parametrize("k", [2, 4, 12, 24])
def test_gram_signature(k):
    r = G.gram_numeric_signature(k)
    assert r.signature == (3, 1) and r.rank == 4
    B = r.normals @ np.diag(r.form) @ r.normals.T
    assert np.allclose(np.diag(B), 2, atol=1e-8)


def test_bernoulli_numbers():
    from fractions import Fraction
    assert [G.bernoulli(n) for n in (0, 1, 2, 4, 6)] == \
        [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]


def test_dilog_against_mpmath():
    rng = random.Random(2)
    pts = [cmath.rect(math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi))
           for _ in range(300)]
    pts += [cmath.exp(1j * rng.uniform(-math.pi, math.pi)) for _ in range(100)]
    pts += [0.5, -1.0, 1j, 0.999 + 0.001j]
    for z in pts:
        ref = complex(mpmath.polylog(2, z))
        assert abs(G.dilog(z) - ref) < 1e-12 * max(1, abs(ref)), z


def test_dilog_rejects_branch_cut():
    with pytest.raises(DomainError):
        G.dilog(2.5)
    with pytest.raises(DomainError):
        G.dilog(3j)


def test_clausen_against_mpmath():
    for t in np.linspace(-6, 6, 241):
        assert G.clausen(t) == pytest.approx(float(mpmath.clsin(2, t)), abs=1e-13)


@pytest.mark.parametrize("theta", [0.3, math.pi / 3, 1.7, 2.9])
def test_clausen_against_partial_sums(theta):
    """sum_{n<=N} sin(n t)/n^2 with tail bound 1/(N^2 sin(t/2))."""
    N = 10 ** 6
    n = np.arange(1, N + 1, dtype=float)
    partial = float(np.sum(np.sin(n * theta) / n ** 2))
    assert abs(G.clausen(theta) - partial) <= 1 / (N ** 2 * math.sin(theta / 2)) + 1e-12


def test_bloch_wigner_values():
    assert G.bloch_wigner(0.0) == 0.0
    assert G.bloch_wigner_z(1.0) == pytest.approx(0.0, abs=1e-15)
    assert G.bloch_wigner(math.pi / 3) == pytest.approx(1.0149416064097, abs=1e-12)
    # D(e^{i pi/3}) equals Im Li2 on the unit circle
    z = cmath.exp(1j * math.pi / 3)
    assert G.bloch_wigner_z(z) == pytest.approx(float(mpmath.im(mpmath.polylog(2, z))), abs=1e-13)


def test_bloch_wigner_odd():
    rng = random.Random(9)
    for _ in range(100):
        t = rng.uniform(0, 2 * math.pi)
        assert G.bloch_wigner(-t) == pytest.approx(-G.bloch_wigner(t), abs=1e-14)


def test_ushijima_M2():
    r = G.ushijima_volume(G.UshijimaInput.for_Mk(2))
    assert abs(r.Z1 - 1) < 1e-12
    assert abs(r.Z2 + cmath.exp(-1j * math.pi / 3)) < 1e-12
    assert r.volume == pytest.approx(9 * G.bloch_wigner(math.pi / 3) / 4, abs=1e-12)
    assert r.volume == pytest.approx(2.2836186144, abs=1e-10)


def test_regular_ideal_angles_flagged():
    # every vertex ideal: flagged, and the limit recovers the regular ideal tetrahedron
    t = math.pi / 3
    r = G.ushijima_volume(G.UshijimaInput(t, t, t, t, t, t))
    assert r.ideal_vertices == 4
    assert r.volume == pytest.approx(G.bloch_wigner(math.pi / 3), abs=1e-12)
    assert G.ushijima_volume(G.UshijimaInput.for_Mk(4)).ideal_vertices == 1


def test_spherical_angles_rejected():
    t = math.pi / 2.5
    with pytest.raises(NonRealizableAngles):
        G.ushijima_Z(G.UshijimaInput(t, t, t, t, t, t))


def test_calibrated_convention():
    assert G.calibrate_convention() == G.DEFAULT_CONVENTION


def test_volume_M2():
    v = G.volume_closed_form(2)
    assert abs(v - 18.2689489153 / 2) < 1e-9
    assert v == pytest.approx(9 * G.bloch_wigner(math.pi / 3), abs=1e-13)


@pytest.mark.parametrize("k", range(2, 25, 2))
def test_closed_form_matches_ushijima(k):
    r = G.volume_Mkk(k)
    assert abs(r.volume - r.cross_check) < 1e-10
    w = cmath.exp(-2j * math.pi / (3 * k))
    assert abs(r.Z1 - 1) < 1e-12 and abs(r.Z2 + w) < 1e-12


def test_closed_form_high_precision():
    """Recompute vol(M_k) term by term with mpmath Clausen values."""
    for k in (2, 6, 20):
        ref = 2 * k * G.ushijima_volume(G.UshijimaInput.for_Mk(k)).volume
        assert G.volume_closed_form(k) == pytest.approx(ref, abs=1e-10)


def test_bounds():
    for k in range(2, 101, 2):
        lo, hi = G.volume_bounds(k)
        assert lo <= G.volume_closed_form(k) <= hi
    assert 450 <= G.volume_closed_form(100) <= 986.96


def test_odd_k_rejected():
    with pytest.raises(ValidationError):
        G.volume_Mkk(3)
