from pytest import fixture

from oregonator.model.params import OregonatorParams, DomainSpec
from oregonator.simulate.base import IntegratorConfig
from oregonator.spectral import SineBasis


@fixture()
def ones() -> OregonatorParams:
    return OregonatorParams()


@fixture()
def domain() -> DomainSpec:
    return DomainSpec((1.,), modes=32)


@fixture()
def basis(domain) -> SineBasis:
    return SineBasis(domain)


@fixture()
def config() -> IntegratorConfig:
    return IntegratorConfig(dt=1e-3)
