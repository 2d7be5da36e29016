import math

import numpy as np
import pytest

import circlelab as cl


def test_fractions_and_gauss_sums():
    assert len(cl.canonical_fractions(4)) == 6
    assert cl.canonical_fractions(3) == [(0, 1), (1, 3), (1, 2), (2, 3)]
    for a in range(1, 11):
        assert abs(abs(cl.complete_sum([0, 0, 1], a, 11)) - 11 ** -0.5) < 1e-12


def test_kernel_and_average_match_numpy():
    k = cl.kernel([0, 0, 1], 5, 5)
    assert np.allclose(k, [0.2, 0.4, 0.0, 0.0, 0.4], atol=1e-15)
    rng = np.random.default_rng(3)
    f = rng.normal(size=97) + 1j * rng.normal(size=97)
    N = 40
    ref = np.zeros(97, dtype=complex)
    for n in range(1, N + 1):
        ref += np.roll(f, (n * n) % 97)
    ref /= N
    for path in ("direct", "fft", "auto"):
        assert np.allclose(cl.average_linear([0, 0, 1], N, f, path), ref, atol=1e-12)


def test_weyl_sum_definition():
    xi = 0.1234
    ref = np.mean(np.exp(2j * np.pi * xi * np.arange(1, 51) ** 2))
    assert abs(cl.weyl_sum([0, 0, 1], 50, xi) - ref) < 1e-10
    assert abs(cl.continuous_multiplier([0, 0, 1], 50, 0.0) - 1) < 1e-15


def test_projection_properties():
    rng = np.random.default_rng(5)
    f = rng.normal(size=512) + 1j * rng.normal(size=512)
    g = rng.normal(size=512) + 1j * rng.normal(size=512)
    pf = cl.project_dyadic(f, 2, -6)
    pg = cl.project_dyadic(g, 2, -6)
    assert abs(np.vdot(g, pf) - np.vdot(pg, f)) < 1e-10 * np.linalg.norm(f) * np.linalg.norm(g)
    assert np.linalg.norm(pf) <= np.linalg.norm(f)
    assert np.allclose(cl.project(f, 1.0, 2.0), f, atol=1e-13)
    assert cl.eta(0.2) == 1.0 and cl.eta(0.6) == 0.0


def test_arc_split_additivity():
    f = np.random.default_rng(1).normal(size=1024).astype(complex)
    s = cl.arc_split(f, [0, 0, 1], 64, C0=64)
    total = s["major"] + s["minor"]
    assert np.allclose(total, cl.average_linear([0, 0, 1], 64, f), atol=1e-9)
    assert 0 < s["minor_l2_ratio"] < 1


def test_seminorms():
    v = cl.variation([0.0, 0.5, 1.0], 2.0)
    assert v["value"] == pytest.approx(1.0, abs=1e-15)
    assert v["witness"] == [0, 2]
    j = cl.jump_count([0.5, 0.0, 1.0], 1.0)
    assert j["value"] == 1 and j["witness"] == [1, 2]
    o = cl.oscillation([0, 5, 1], [1, 3], 2.0, labels=[1, 2, 3])
    assert o["value"] == pytest.approx(5.0)
    assert cl.lacunary(1.5, 12) == [1, 2, 3, 5, 7, 11]
    with pytest.raises(ValueError):
        cl.variation([0.0, 1.0], 0.5)


def test_lepingle_is_deterministic():
    a = cl.lepingle_stat(2.0, 3.0, 6, 10, 4)
    b = cl.lepingle_stat(2.0, 3.0, 6, 10, 4)
    assert a == b
    assert a["bound_asserted"] and a["max_ratio"] <= math.sqrt(6) + 1


def test_ergodic_averages():
    f = np.arange(12, dtype=float).astype(complex)
    A = cl.average_series(12, 5, [0, 1], f, [12, 24])
    assert np.all(A == f.mean())
    D = cl.discrepancy([0, 1], math.sqrt(2), [100, 10000])
    assert D[1][1] <= 0.01 and D[1][1] <= D[0][1] / 5
    dev = cl.mean_ergodic_check(12, 5, f, [12, 36])
    assert dev == [0.0, 0.0]
