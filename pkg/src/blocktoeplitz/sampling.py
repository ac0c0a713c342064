"""Seeded random draws of exact scalars, matrices and subspace members."""
from __future__ import annotations

import random
from fractions import Fraction

from .exactfield import GaussianRational
from .linalg import Matrix, Subspace

SMALL = range(-3, 4)


def rng_for(seed: int, *labels) -> random.Random:
    """Independent deterministic stream for a (seed, label...) pair."""
    return random.Random(repr((seed,) + labels))


def scalar(rng: random.Random, gaussian: bool = False, fractions: bool = False,
           zero_prob: float = 0.0) -> GaussianRational:
    if zero_prob and rng.random() < zero_prob:
        return GaussianRational(0)
    re = rng.choice(SMALL)
    if fractions and rng.random() < 0.3:
        re = Fraction(re, rng.randint(1, 4))
    im = rng.choice(SMALL) if gaussian and rng.random() < 0.5 else 0
    return GaussianRational(re, im)


def nonzero_scalar(rng: random.Random, gaussian: bool = False) -> GaussianRational:
    while True:
        x = scalar(rng, gaussian=gaussian, fractions=True)
        if x:
            return x


def matrix(rng: random.Random, nrows: int, ncols: int | None = None, **kw) -> Matrix:
    ncols = nrows if ncols is None else ncols
    return Matrix([[scalar(rng, **kw) for _ in range(ncols)] for _ in range(nrows)])


def member(rng: random.Random, space: Subspace, **kw) -> tuple:
    """Random combination of the canonical basis of ``space``."""
    return space.combination([scalar(rng, **kw) for _ in range(space.dim)])
