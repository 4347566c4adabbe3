import numpy as np
from pytest import approx

from oregonator.model.params import OregonatorParams
from oregonator.simulate.reaction import reaction, reaction_values, linearization_at_zero, rescale_w, unscale_w


def test_reaction():
    p = OregonatorParams(a1=2., b1=3., F=0.5, G1=0.25, b2=1.5, c2=4., G2=2., a3=0.5, c3=3.)
    f1, f2, f3 = reaction(p, 1., 2., 3.)
    assert f1 == approx(2. + 6. - 0.5 - 0.5)
    assert f2 == approx(-3. + 12. - 4.)
    assert f3 == approx(0.5 - 9.)

    values = np.array([[1., 0.], [2., 0.], [3., 0.]])
    assert np.allclose(reaction_values(p, values)[:, 0], [f1, f2, f3])
    assert np.allclose(reaction_values(p, values)[:, 1], 0.)


def test_linearization():
    p = OregonatorParams(a1=2., b1=3., b2=1.5, c2=4., a3=0.5, c3=3.)
    jac = linearization_at_zero(p)
    h = 1e-7
    for i in range(3):
        point = np.zeros(3)
        point[i] = h
        column = (np.array(reaction(p, *point)) - np.array(reaction(p, 0., 0., 0.))) / h
        assert np.allclose(column, jac[:, i], atol=1e-6)


def test_rescale():
    p = OregonatorParams(b2=2., c2=3.)
    assert rescale_w(p, 2.) == approx(3.)
    w = np.linspace(0, 1, 5)
    assert np.allclose(unscale_w(p, rescale_w(p, w)), w)
