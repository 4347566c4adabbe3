from pytest import fixture

from oregonator.model.params import OregonatorParams, DomainSpec, EmbeddingConstants


@fixture()
def ones() -> OregonatorParams:
    return OregonatorParams()


@fixture()
def interval() -> DomainSpec:
    return DomainSpec((1.,), modes=16)


@fixture()
def square() -> DomainSpec:
    return DomainSpec((1., 1.), modes=8)


@fixture()
def embedding() -> EmbeddingConstants:
    return EmbeddingConstants()
