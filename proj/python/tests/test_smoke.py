"""Smoke tests for the _imstrip extension module."""

import cmath
import math

import pytest

import _imstrip as im


def test_gamma_values():
    assert abs(im.gamma(5) - 24.0) < 1e-12
    assert abs(im.gamma(0.5) - math.sqrt(math.pi)) < 1e-13
    with pytest.raises(im.PoleError):
        im.gamma(-2.0)


def test_hypergeometric():
    b, c, z = 0.7, 1.9, 0.35
    assert abs(im.hyp_pFq([-1.0, b], [c], z) - (1 - b * z / c)) < 1e-13
    assert abs(im.hyp2F1(0.5, 0.25, 1.5, 0.4) - im.hyp_pFq([0.5, 0.25], [1.5], 0.4)) < 1e-10


def test_macdonald_and_whittaker():
    k = im.macdonald_K(0.7j, 1.3)
    assert abs(k - im.macdonald_K(-0.7j, 1.3)) < 1e-13
    assert abs(k.imag) < 1e-12
    w = im.whittaker_W(0.0, 0.9j, 1.1)
    assert abs(math.sqrt(math.pi / 2.2) * w - im.macdonald_K(0.9j, 1.1)) < 1e-9


def test_operators_and_weights():
    spec = im.WeightSpec.meixner_pollaczek(1.0, math.pi / 3)
    assert im.weight_w(spec, 0.3) > 0
    op = im.make_operator(spec)
    assert abs(op.apply(lambda s: 1.0 + 0j, 0.4)) < 1e-13
    kl = im.kl_operator()
    assert abs(kl.apply(lambda s: s * s, 0.7) - 4.0) < 1e-12


def test_polynomials():
    mp = im.PolynomialFamily("mp", [], 1.0, math.pi / 2)
    assert abs(mp.eval(1, 1.0) - 2.0) < 1e-12
    assert mp.eigen_defect(3) < 1e-9
    assert abs(mp.norm_squared(0) - 0.25) < 1e-12
    wil = im.PolynomialFamily("wilson", [0.7, 0.9, 1.1, 1.3])
    assert wil.eigen_defect(2) < 1e-9


def test_kl_transform_evenness():
    vals = im.kl_transform(lambda x: cmath.exp(-x - 1.0 / x), 1.0, 1.0, [1.3, -1.3], 6.0)
    assert abs(vals[0] - vals[1]) < 1e-12 * abs(vals[0])


def test_extensions():
    p = im.ExtensionParams(0.3, 0.4, 1.0)
    assert abs(im.delta_eval(p, 0.0, 0.0) - 1.0) < 1e-15
    assert im.theta_substitution(1.0, 0.0) == 0.0


def test_run_suite():
    rep = im.run_suite("specfun", enforce_budget=False)
    assert rep["pass"], rep
    ids = [c["id"] for c in rep["checks"]]
    assert ids == sorted(ids)
