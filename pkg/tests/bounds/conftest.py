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
    return DomainSpec((1.,), modes=32)


@fixture()
def embedding() -> EmbeddingConstants:
    return EmbeddingConstants()


@fixture()
def config() -> IntegratorConfig:
    return IntegratorConfig(dt=1e-3)


@fixture()
def trajectory(ones, domain, embedding, config) -> Trajectory:
    """Trajectory from random data with ten times the absorbing energy"""
    energy = 10 * derive_constants(ones, domain, embedding).K1
    g0 = make_initial_state('random', ones, SineBasis(domain), seed=0, energy=energy)
    return simulate(g0, ones, domain, config, horizon=3., cadence=0.05)
