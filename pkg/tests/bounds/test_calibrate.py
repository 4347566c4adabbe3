from math import pi

from pytest import approx, raises

from oregonator.bounds.calibrate import calibrate_eta, sobolev_ratio
from oregonator.model.params import DomainSpec
from oregonator.spectral import SineBasis


def test_lowest_mode():
    dom = DomainSpec((1.,), modes=16)
    assert calibrate_eta(dom, trials=1) == approx(1.5 ** 0.25 / pi, rel=1e-10)
    assert calibrate_eta(dom, trials=1) == approx(0.3523, abs=1e-4)

    # Scaling the field does not change the ratio
    basis = SineBasis(dom)
    assert sobolev_ratio(3 * basis.unit_mode(1), basis) == approx(sobolev_ratio(basis.unit_mode(1), basis))


def test_running_maximum():
    dom = DomainSpec((1., 1.), modes=8)
    values = [calibrate_eta(dom, trials=n, seed=1) for n in [1, 5, 20]]
    assert values[0] <= values[1] <= values[2]
    with raises(ValueError):
        calibrate_eta(dom, trials=0)
