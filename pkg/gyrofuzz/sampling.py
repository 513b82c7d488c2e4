"""Seeded sampling. All randomness flows from one ``numpy.random.Generator``."""
import itertools
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .conf import settings

Sampler = Callable[[np.random.Generator], object]

MAX_DENOMINATOR = 64


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(settings.SEED if seed is None else seed)


def resolve_seed(seed: Optional[int]) -> int:
    return int(settings.SEED if seed is None else seed)


def resolve_samples(n: Optional[int]) -> int:
    return int(settings.SAMPLES if n is None else n)


def rational(
    rng: np.random.Generator,
    bound: int = 1,
    max_denominator: int = MAX_DENOMINATOR,
) -> Fraction:
    """Uniform-ish rational p/q in the open interval (-bound, bound), q <= max_denominator."""
    q = int(rng.integers(1, max_denominator + 1))
    p = int(rng.integers(-bound * q + 1, bound * q))
    return Fraction(p, q)


def positive_rational(rng: np.random.Generator, low: Fraction, high: Fraction) -> Fraction:
    q = int(rng.integers(1, MAX_DENOMINATOR + 1))
    p_low = int(np.ceil(float(low * q)))
    p_high = max(p_low, int(np.floor(float(high * q))))
    value = Fraction(int(rng.integers(p_low, p_high + 1)), q)
    return value if value > 0 else Fraction(1, q)


def choose(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(0, len(items)))]


def draw(G, rng: np.random.Generator, sampler: Optional[Sampler] = None):
    if sampler is not None:
        return sampler(rng)
    elements = G.elements()
    if elements is not None:
        return choose(rng, elements)
    return G.sample(rng)


def tuples(
    G,
    arity: int,
    n: int,
    rng: np.random.Generator,
    sampler: Optional[Sampler] = None,
) -> Iterator[tuple]:
    """``n`` sampled ``arity``-tuples, or every tuple in row-major order when
    the carrier is finite and ``n`` reaches its table size."""
    elements = G.elements() if sampler is None else None
    if elements is not None and n >= len(elements) ** 2:
        yield from itertools.product(elements, repeat=arity)
        return
    for _ in range(n):
        yield tuple(draw(G, rng, sampler) for _ in range(arity))


def t_values(t_grid: Optional[Sequence] = None) -> tuple:
    grid = settings.T_GRID if t_grid is None else t_grid
    return tuple(grid)


def t_pairs(t_grid: Optional[Sequence] = None) -> list:
    grid = t_values(t_grid)
    return [(t, s) for t in grid for s in grid]
