from math import pi

from pytest import raises, mark

from oregonator.model.params import OregonatorParams, DomainSpec, EmbeddingConstants, NonPositiveParameter, validate_params, PARAM_NAMES
from oregonator.spectral import SineBasis


def test_validate(ones):
    validate_params(ones)
    assert len(PARAM_NAMES) == 12

    with raises(NonPositiveParameter) as exc:
        validate_params(ones.replace(F=0.))
    assert exc.value.name == 'F'
    assert 'F' in str(exc.value)

    with raises(NonPositiveParameter) as exc:
        validate_params(ones.replace(d2=-1.))
    assert exc.value.name == 'd2'


def test_derived_parameters():
    p = OregonatorParams(d1=2., d2=0.5, d3=3., b2=2., c2=4., c3=0.5)
    assert p.d0 == 0.5
    assert p.diffusion == (2., 0.5, 3.)
    assert p.M2 == 16.


@mark.parametrize('lengths', [(1.,), (2.,), (1., 1.), (1., 3.)])
def test_poincare(lengths):
    dom = DomainSpec(lengths, modes=4)
    assert dom.gamma == pi ** 2 * sum(1 / x ** 2 for x in lengths)
    assert abs(dom.gamma - SineBasis(dom).eigenvalue((1,) * dom.n)) < 1e-12
    assert dom.volume > 0


def test_domain():
    dom = DomainSpec((1., 2.), modes=8)
    assert dom.n == 2
    assert dom.volume == 2.
    assert dom.grid_points == 16
    assert dom.coefficient_shape == (8, 8)
    assert dom.grid_shape == (16, 16)
    assert abs(dom.cell_volume - 2. / 17 ** 2) < 1e-15

    finer = dom.with_modes(16)
    assert finer.grid_points == 32
    assert finer.lengths == dom.lengths


def test_domain_errors():
    with raises(NonPositiveParameter):
        DomainSpec((-1.,))
    with raises(NonPositiveParameter):
        DomainSpec((1.,), modes=0)
    with raises(ValueError, match='dealias'):
        DomainSpec((1.,), modes=10, grid_points=10)
    with raises(ValueError):
        DomainSpec((1., 1., 1.))


def test_embedding():
    emb = EmbeddingConstants()
    assert emb.corrected_poincare_direction
    assert emb.N0 is None
    with raises(NonPositiveParameter) as exc:
        EmbeddingConstants(eta=0.)
    assert exc.value.name == 'eta'
