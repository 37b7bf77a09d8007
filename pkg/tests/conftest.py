import pytest

from coalspec import (
    PartitionLattice,
    bs_rates,
    bs_triple,
    build_generator,
    kingman_rates,
    kingman_triple,
)


@pytest.fixture(scope="session")
def lattices():
    """Full lattices for n = 1..6, shared across the suite."""
    return {n: PartitionLattice(n) for n in range(1, 7)}


@pytest.fixture(scope="session")
def bs_generators(lattices):
    return {n: build_generator(lattices[n], bs_rates(n)) for n in range(2, 7)}


@pytest.fixture(scope="session")
def kingman_generators(lattices):
    return {n: build_generator(lattices[n], kingman_rates(n)) for n in range(2, 7)}


@pytest.fixture(scope="session")
def bs_triples(lattices):
    return {n: bs_triple(lattices[n]) for n in range(2, 7)}


@pytest.fixture(scope="session")
def kingman_triples(lattices):
    return {n: kingman_triple(lattices[n]) for n in range(2, 7)}
