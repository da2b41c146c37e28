"""Shared fixtures: the bundled example configurations and a small random
configuration pool for property tests.

Numbers frozen here (dimensions, Hilbert vectors, facet normals) were derived
by hand before the implementation existed; tests compare against them, never
against the code's own output.
"""

from __future__ import annotations

import random

import pytest

from zonoforge.config import Config, make_config, semiexternal_close


@pytest.fixture(scope="session")
def ex25():
    # e1, e2, e3 and their sum; the workhorse three-dimensional example
    return make_config(
        [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]],
        b0_rows=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        lam=[1, 1, 1, 1],
        lam_b0=[2, 3, 5],
    )


@pytest.fixture(scope="session")
def ex25_free():
    # same columns, offsets left open so seeds control the arrangement
    return make_config(
        [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]],
        b0_rows=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    )


@pytest.fixture(scope="session")
def fam1(ex25):
    return semiexternal_close(ex25, [{0, 1}, {0, 2}, {0, 3}])


@pytest.fixture(scope="session")
def fam2(ex25):
    return semiexternal_close(ex25, [{0}])


@pytest.fixture(scope="session")
def triangle():
    return make_config(
        [[1, 0, 1], [0, 1, 1]],
        b0_rows=[[1, 0], [0, 1]],
        lam=[1, 2, 4],
        lam_b0=[8, 16],
    )


@pytest.fixture(scope="session")
def identity2():
    return make_config(
        [[1, 0], [0, 1]],
        b0_rows=[[1, 0], [0, 1]],
        lam=[1, 2],
        lam_b0=[4, 8],
    )


@pytest.fixture(scope="session")
def repeated():
    # a doubled column and a coloop
    return make_config(
        [[1, 1, 0], [0, 0, 1]],
        b0_rows=[[1, 0], [0, 1]],
        lam=[1, 2, 3],
        lam_b0=[5, 9],
    )


def random_full_rank_config(rng: random.Random, n: int, ncols: int) -> Config:
    """A full-rank configuration with nonzero columns and small entries.

    Starts from the identity so rank never needs to be retried; carries an
    identity b0 so the extended constructions are available.
    """
    unit = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    cols = list(unit)
    while len(cols) < ncols:
        v = tuple(rng.randint(-2, 2) for _ in range(n))
        if any(v):
            cols.append(v)
    rng.shuffle(cols)
    return Config(tuple(cols), b0=tuple(unit))


@pytest.fixture(scope="session")
def config_pool():
    """Deterministic pool of small configurations for property tests."""
    rng = random.Random(20260816)
    pool = []
    for _ in range(12):
        n = rng.choice([2, 2, 3])
        ncols = rng.randint(n, n + 2)
        pool.append(random_full_rank_config(rng, n, ncols))
    return pool
