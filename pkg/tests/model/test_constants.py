from math import pi, sqrt, floor

import numpy as np
from pytest import approx, mark

from oregonator.model import constants as cn
from oregonator.model.params import DomainSpec, EmbeddingConstants


def test_all_ones(ones, interval, embedding):
    consts = cn.derive_constants(ones, interval, embedding)
    assert consts.K1 == approx(8 / pi ** 2, rel=1e-12)
    assert consts.M1 == approx(2.)
    assert consts.M2 == approx(1.)
    assert consts.M3 == approx(2., rel=1e-12)
    assert consts.M4 == approx(1.)
    assert consts.K3 == approx(128 / pi ** 2, rel=1e-12)
    assert consts.K2 == approx(32 / pi ** 2, rel=1e-12)
    assert consts.M5 == approx(consts.K1 + 8, rel=1e-12)
    assert consts.gamma == approx(pi ** 2)
    assert consts.d0 == 1.


def test_envelope_constants(ones, interval):
    assert cn.l2_asymptote(ones, interval) == approx(8 / (3 * pi ** 2))
    assert cn.l6_decay_rate(ones, interval, corrected=False) == approx(10 * pi ** 2)
    assert cn.l6_decay_rate(ones, interval) == approx(10 * pi ** 2 / 3)

    # K3 still exceeds the corrected asymptote
    assert cn.l6_asymptote(ones, interval) == approx(128 * 3 / (10 * pi ** 2))
    assert cn.l6_asymptote(ones, interval) < cn.derive_constants(ones, interval, EmbeddingConstants()).K3


def test_norm_quotient_rate(ones, interval, embedding):
    consts = cn.derive_constants(ones, interval, embedding)
    rate = consts.N_of_R
    assert rate.literal(0.) == approx(4 * pi ** 2 * 6)
    assert rate.corrected(0.) == approx(24 / pi ** 2)
    assert rate.corrected(2.) - rate.corrected(1.) == approx(16 + 16)
    assert rate(1., corrected=False) == rate.literal(1.)

    # rho follows the flag
    assert consts.rho(1.) == approx(rate.corrected(1.))
    literal = cn.derive_constants(ones, interval, EmbeddingConstants(corrected_poincare_direction=False))
    assert literal.rho(1.) == approx(rate.literal(1.))


@mark.parametrize('n', [1, 2])
def test_young_constant(n):
    amplitude, d0 = 3., 0.5
    value = cn.young_constant(amplitude, d0, n)
    s = np.linspace(0, 100, 2000001)
    assert value == approx(np.max(amplitude * s ** (n / 2) - d0 * s ** 2 / 2), rel=1e-6)


def test_dimension_bound(ones, interval, square, embedding):
    for dom in [interval, square]:
        consts = cn.derive_constants(ones, dom, embedding)
        expected = (2 * (consts.K_n + 4) / ones.d0) ** (dom.n / 2) * dom.volume
        assert consts.dim_threshold == approx(expected)
        assert consts.dim_bound_m - 1 <= consts.dim_threshold < consts.dim_bound_m
        assert consts.dim_bound_m == floor(consts.dim_threshold) + 1
        assert consts.dim_bound_m >= 1

    # The square uses the exponent n/2 = 1
    consts = cn.derive_constants(ones, square, embedding)
    assert consts.dim_threshold == approx(2 * (consts.K_n + 4))


def test_gradient_constants(ones, interval, embedding):
    consts = cn.derive_constants(ones, interval, embedding)
    assert cn.gradient_forcing(ones) == approx(4.5)
    assert cn.gradient_growth_coefficient(ones) == approx(1.)
    assert consts.K_E == approx((consts.M5 + 4.5 * consts.K1) * np.exp(consts.M5))
    assert consts.lipschitz(1.) == approx(sqrt(consts.N_of_R.corrected(1.)))
    assert consts.linf_bound > 0


def test_domain_scaling(ones, embedding):
    short = cn.derive_constants(ones, DomainSpec((1.,), modes=4), embedding)
    long = cn.derive_constants(ones, DomainSpec((2.,), modes=4), embedding)
    assert long.K1 == approx(short.K1 * 8)  # |Omega| doubles, gamma quarters


def test_table(ones, interval, embedding):
    consts = cn.derive_constants(ones, interval, embedding)
    table = {row['name']: row for row in consts.table()}
    assert table['K1']['value'] == approx(8 / pi ** 2)
    assert 'M1^3' in table['K1']['formula']
    for name in ['M1', 'M2', 'M3', 'M4', 'M5', 'K1', 'K2', 'K3', 'K_E', 'dim_bound_m', 'linf_bound']:
        assert name in table
