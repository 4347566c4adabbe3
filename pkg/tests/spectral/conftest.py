from pytest import fixture

from oregonator.model.params import DomainSpec
from oregonator.spectral import SineBasis


@fixture(params=[(1.,), (2.,), (1., 1.5)], ids=['unit', 'long', 'rectangle'])
def basis(request) -> SineBasis:
    modes = 32 if len(request.param) == 1 else 12
    return SineBasis(DomainSpec(request.param, modes=modes))
