from math import pi

import numpy as np
from pytest import raises, approx

from oregonator.model.params import DomainSpec
from oregonator.spectral import SineBasis, IndexOutOfRange, ShapeMismatch


def test_eigenvalues(basis):
    assert basis.eigenvalue((1,) * basis.n) == approx(basis.dom.gamma)
    assert basis.eigenvalues.shape == basis.dom.coefficient_shape
    assert basis.eigenvalues.min() == approx(basis.dom.gamma)
    with raises(ValueError):
        basis.eigenvalues[(0,) * basis.n] = 1.

    last = (basis.modes,) * basis.n
    assert basis.eigenvalue(last) == approx(basis.eigenvalues[(-1,) * basis.n])


def test_index_errors():
    basis = SineBasis(DomainSpec((1.,), modes=8))
    assert basis.eigenvalue(3) == approx(9 * pi ** 2)
    for bad in [0, 9, (1, 1)]:
        with raises(IndexOutOfRange):
            basis.eigenvalue(bad)


def test_round_trip(basis):
    rng = np.random.default_rng(1)
    coeffs = rng.normal(size=(100,) + basis.dom.coefficient_shape)
    values = basis.synthesize(coeffs)
    assert values.shape == (100,) + basis.dom.grid_shape
    recovered = basis.analyze(values)
    assert np.abs(recovered - coeffs).max() <= 1e-10 * np.abs(coeffs).max()


def test_parseval(basis):
    rng = np.random.default_rng(2)
    coeffs = rng.normal(size=(100,) + basis.dom.coefficient_shape)
    quadrature = basis.grid_integral(basis.synthesize(coeffs) ** 2)
    assert np.allclose(quadrature, basis.l2_norm_sq(coeffs), rtol=1e-10, atol=0)


def test_unit_mode():
    dom = DomainSpec((2.,), modes=8)
    basis = SineBasis(dom)
    x, = basis.coordinates
    values = basis.synthesize(basis.unit_mode(3))
    assert np.allclose(values, np.sqrt(2 / 2.) * np.sin(3 * pi * x / 2.), atol=1e-12)
    assert basis.gradient_norm_sq(basis.unit_mode(3)) == approx(basis.eigenvalue(3))
    assert np.allclose(basis.apply_laplacian(basis.unit_mode(3)), -basis.eigenvalue(3) * basis.unit_mode(3))


def test_mesh():
    basis = SineBasis(DomainSpec((1., 2.), modes=4))
    x, y = basis.mesh()
    assert x.shape == y.shape == (8, 8)
    assert x[1, 0] > x[0, 0] and y[0, 1] > y[0, 0]
    assert y.max() < 2.


def _square_error(modes: int, grid_points: int | None = None) -> float:
    """Largest coefficient error of e_1^2 = 2 sin^2(pi x) against its closed-form projection"""
    # sin^2(pi x) has sine coefficients -4 sqrt(2) / (pi j (j^2 - 4)) for odd j and zero for even j
    basis = SineBasis(DomainSpec((1.,), modes=modes, grid_points=grid_points))
    first = basis.unit_mode(1)
    product = basis.quadratic_product(first, first)

    j = np.arange(1, modes + 1)
    expected = np.where(j % 2 == 1, -4 * np.sqrt(2) / (pi * j * (j ** 2 - 4)), 0.) * 2
    assert expected[0] == approx(2 * 0.6002, abs=1e-4)
    return float(np.abs(product - expected).max())


def test_product():
    assert _square_error(8, grid_points=1024) < 1e-8
    assert _square_error(8, grid_points=511) < 1e-8


def test_product_default_grid():
    errors = [_square_error(m) for m in (8, 32, 128)]
    assert errors[0] < 2e-4
    assert errors[1] < 5e-6
    assert errors[2] < 1e-7

    # The folded tail shrinks like the cube of the grid size
    assert errors[0] / errors[1] > 20
    assert errors[1] / errors[2] > 20


def test_norms():
    basis = SineBasis(DomainSpec((1.,), modes=8))
    coeffs = 2 * basis.unit_mode(1)
    values = basis.synthesize(coeffs)
    assert basis.l2_norm_sq(coeffs) == approx(4.)
    assert basis.inner(coeffs, basis.unit_mode(2)) == 0.
    assert basis.lp_integral(values, 4) == approx(16 * 4 * 3 / 8)  # (2 sqrt(2))^4 int sin^4
    assert basis.sup_norm(values) == approx(2 * np.sqrt(2), rel=1e-2)  # The grid does not hit x=1/2 exactly


def test_shape_errors():
    basis = SineBasis(DomainSpec((1.,), modes=8))
    with raises(ShapeMismatch):
        basis.synthesize(np.zeros(7))
    with raises(ShapeMismatch):
        basis.analyze(np.zeros(8))
    with raises(ShapeMismatch):
        basis.quadratic_product(np.zeros(8), np.zeros((2, 8)))
    with raises(ShapeMismatch):
        basis.apply_laplacian(np.zeros(4))
