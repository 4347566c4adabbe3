from pytest import fixture

from oregonator.model.constants import derive_constants
from oregonator.model.params import OregonatorParams, DomainSpec, EmbeddingConstants
from oregonator.simulate.base import IntegratorConfig, Trajectory
from oregonator.simulate.initialize import make_initial_state
from oregonator.simulate.integrate import simulate
from oregonator.spectral import SineBasis


@fixture()
def ones() -> OregonatorParams:
    return OregonatorParams()


@fixture()
def domain() -> DomainSpec:
    return DomainSpec((1.,), modes=8)


@fixture()
def basis(domain) -> SineBasis:
    return SineBasis(domain)


@fixture()
def config() -> IntegratorConfig:
    return IntegratorConfig(dt=1e-3)


@fixture()
def trajectory(ones, domain, config) -> Trajectory:
    """Short trajectory from random data inside the absorbing ball"""
    energy = derive_constants(ones, domain, EmbeddingConstants()).K1
    g0 = make_initial_state('random', ones, SineBasis(domain), seed=1, energy=energy)
    return simulate(g0, ones, domain, config, horizon=1., cadence=0.1)
