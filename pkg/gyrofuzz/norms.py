"""Gyronorms, fuzzy gyronorms and their law suites."""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .exceptions import DomainError
from .gyro_core import Gyrogroup, MobiusPoint
from .reals import check_eq, check_ge, compare, minimum, sqrt, to_fraction
from .reports import PropertyReport
from .sampling import Sampler, make_rng, resolve_samples, resolve_seed, t_pairs, t_values, tuples
from .tnorm import TNorm, tnorm_eval

logger = logging.getLogger(__name__)

RAPIDITY_LIMIT = 1 - 1e-12

# sampled points that also get the continuity-in-t refinement test
CONTINUITY_POINTS = 16
REFINEMENT_STEPS = 64


def positive_time(t):
    if isinstance(t, bool) or not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    return t


@dataclass(frozen=True)
class Gyronorm:
    base: Gyrogroup
    evaluate: Callable
    name: str = "gyronorm"

    def __call__(self, x):
        return self.evaluate(x)


@dataclass(frozen=True)
class FuzzyGyronorm:
    base: Gyrogroup
    tnorm: TNorm
    evaluate: Callable
    name: str = "fuzzy-gyronorm"
    gyronorm: Optional[Gyronorm] = None

    def __call__(self, x, t):
        return self.evaluate(x, positive_time(t))


def mobius_norm_abs(a: MobiusPoint):
    """|a|; exact (a Fraction or a sympy surd) for rational points."""
    if a.floating:
        return math.hypot(a.re, a.im)
    return sqrt(a.norm_sq())


def mobius_norm_rapidity(a: MobiusPoint) -> float:
    """artanh |a|, floating point only."""
    r = math.hypot(float(a.re), float(a.im))
    if r > RAPIDITY_LIMIT:
        raise DomainError(f"|a| = {r!r} is too close to the boundary for artanh")
    return math.atanh(r)


def mobius_abs_gyronorm(G: Gyrogroup) -> Gyronorm:
    return Gyronorm(G, mobius_norm_abs, "abs")


def mobius_rapidity_gyronorm(G: Gyrogroup) -> Gyronorm:
    return Gyronorm(G, mobius_norm_rapidity, "rapidity")


def absolute_gyronorm(G: Gyrogroup) -> Gyronorm:
    """|x| on the additive adapters (Q, +) and (R, +)."""
    return Gyronorm(G, abs, "abs")


def discrete_gyronorm(G: Gyrogroup) -> Gyronorm:
    """0 at the identity, 1 elsewhere; a gyronorm on every gyrogroup."""
    return Gyronorm(G, lambda x: 0 if G.eq(x, G.identity) else 1, "discrete")


def fuzzy_from_gyronorm(nrm: Gyronorm, t: TNorm) -> FuzzyGyronorm:
    """N(x, t) = t / (t + ||x||)."""

    def evaluate(x, time):
        return time / (time + nrm(x))

    return FuzzyGyronorm(nrm.base, t, evaluate, f"N[{nrm.name}]", nrm)


def refinement_oscillation(f: Callable, low, high, steps: int = REFINEMENT_STEPS):
    """Largest neighbour difference of f on a grid of ``steps`` and of
    ``2 * steps`` intervals over [low, high]."""
    values = []
    for count in (steps, 2 * steps):
        grid = np.linspace(float(low), float(high), count + 1)
        samples = np.array([float(f(float(t))) for t in grid])
        values.append(float(np.abs(np.diff(samples)).max()))
    return values[0], values[1]


def check_refinement(check, f: Callable, low, high, tolerance, **witness):
    coarse, fine = refinement_oscillation(f, low, high)
    shrinks = coarse == 0 or fine < coarse or fine <= tolerance
    check.observe(shrinks, max(0.0, fine - coarse), oscillation=coarse, refined=fine, **witness)


def _witness(G: Gyrogroup, **values):
    return {name: G.format(value) for name, value in values.items()}


def verify_gyronorm(
    nrm: Gyronorm,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    tolerance=None,
) -> PropertyReport:
    """Nonnegativity, positivity, inverse and gyration invariance and
    subadditivity on sampled tuples; exact for exact carriers."""
    G = nrm.base
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    logger.info("gyronorm %s on %s: seed=%d samples=%d", nrm.name, G.name, seed, n)
    report = PropertyReport(f"gyronorm:{nrm.name}:{G.name}", seed, 0)
    nonnegative = report.law("nonnegative")
    positivity = report.law("positivity")
    inverse = report.law("inverse-invariance")
    subadditive = report.law("subadditivity")
    gyration = report.law("gyration-invariance")

    at_identity = nrm(G.identity)
    ok, deviation = check_eq(at_identity, 0, tolerance)
    positivity.observe(ok, deviation, x=G.format(G.identity))

    count = 0
    for x, y, z in tuples(G, 3, n, rng, sampler):
        count += 1
        value = nrm(x)
        ok, deviation = check_ge(value, 0, tolerance)
        nonnegative.observe(ok, deviation, **_witness(G, x=x))
        if not G.eq(x, G.identity):
            positivity.observe(compare(value, 0) > 0, 0.0, **_witness(G, x=x))
        ok, deviation = check_eq(nrm(G.neg(x)), value, tolerance)
        inverse.observe(ok, deviation, **_witness(G, x=x))
        ok, deviation = check_ge(value + nrm(y), nrm(G.oplus(x, y)), tolerance)
        subadditive.observe(ok, deviation, **_witness(G, x=x, y=y))
        ok, deviation = check_eq(nrm(G.gyr(y, z, x)), value, tolerance)
        gyration.observe(ok, deviation, **_witness(G, x=x, a=y, b=z))
    report.samples = count
    return report


def check_mobius_sharp_bound(
    G: Gyrogroup,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    tolerance=None,
) -> PropertyReport:
    """|a (+) b| <= (|a| + |b|) / (1 + |a||b|) on sampled Möbius pairs."""
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    report = PropertyReport(f"sharp-bound:{G.name}", seed, 0)
    bound = report.law("sharp-bound")
    count = 0
    for a, b in tuples(G, 2, n, rng, sampler):
        count += 1
        na, nb = mobius_norm_abs(a), mobius_norm_abs(b)
        sharp = (na + nb) / (1 + na * nb)
        ok, deviation = check_ge(sharp, mobius_norm_abs(G.oplus(a, b)), tolerance)
        bound.observe(ok, deviation, **_witness(G, a=a, b=b))
    report.samples = count
    return report


def _grid_times(G: Gyrogroup, t_grid: Sequence):
    if G.exact:
        return tuple(to_fraction(t) for t in t_grid)
    return tuple(float(t) for t in t_grid)


def verify_fuzzy_gyronorm(
    N: FuzzyGyronorm,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
    tolerance=None,
) -> PropertyReport:
    """N1-N6 on samples x t_grid; N4 over every ordered (t, s) pair and N5
    by oscillation shrinkage on a refining t-grid."""
    G = N.base
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    times = _grid_times(G, t_values(t_grid))
    pairs = t_pairs(times)
    logger.info("fuzzy gyronorm %s on %s: seed=%d samples=%d", N.name, G.name, seed, n)
    report = PropertyReport(f"fuzzy-gyronorm:{N.name}:{N.tnorm.name}:{G.name}", seed, 0)
    codomain = report.law("codomain")
    n1 = report.law("N1")
    n2 = report.law("N2")
    n3 = report.law("N3")
    n4 = report.law("N4")
    n5 = report.law("N5")
    n6 = report.law("N6")
    monotone = report.law("nondecreasing-in-t")
    min_triangle = report.law("min-triangle") if N.gyronorm is not None else None
    tol = 0 if tolerance is None and G.exact else tolerance

    for t in times:
        ok, deviation = check_eq(N(G.identity, t), 1, tol)
        n2.observe(ok, deviation, x=G.format(G.identity), t=t)

    count = 0
    for x, y, z in tuples(G, 3, n, rng, sampler):
        values = {}
        for t in times:
            value = N(x, t)
            values[t] = value
            n1.observe(compare(value, 0) > 0, 0.0, x=G.format(x), t=t)
            ok, deviation = check_ge(1, value, tol)
            codomain.observe(ok, deviation, x=G.format(x), t=t)
            ok, deviation = check_eq(N(G.neg(x), t), value, tol)
            n3.observe(ok, deviation, x=G.format(x), t=t)
            ok, deviation = check_eq(N(G.gyr(y, z, x), t), value, tol)
            n6.observe(ok, deviation, x=G.format(x), a=G.format(y), b=G.format(z), t=t)
        if not G.eq(x, G.identity):
            below_one = any(compare(value, 1) < 0 for value in values.values())
            n2.observe(below_one, 0.0, x=G.format(x))
        for earlier, later in zip(times, times[1:]):
            ok, deviation = check_ge(values[later], values[earlier], tol)
            monotone.observe(ok, deviation, x=G.format(x), t=earlier, s=later)

        xy = G.oplus(x, y)
        for t, s in pairs:
            lhs = N(xy, t + s)
            ok, deviation = check_ge(lhs, tnorm_eval(N.tnorm, values[t], N(y, s)), tol)
            n4.observe(ok, deviation, x=G.format(x), y=G.format(y), t=t, s=s)
            if min_triangle is not None:
                nx, ny = N.gyronorm(x), N.gyronorm(y)
                # s|x| <= t|y| exactly when |x|/t <= |y|/s
                agrees = (compare(s * nx, t * ny) <= 0) == (compare(nx / t, ny / s) <= 0)
                ok, deviation = check_ge(lhs, minimum(values[t], N(y, s)), tol)
                min_triangle.observe(
                    ok and agrees, deviation, x=G.format(x), y=G.format(y), t=t, s=s
                )

        if count < CONTINUITY_POINTS:
            check_refinement(
                n5, lambda time, x=x: N(x, time), times[0], times[-1], tol or 0, x=G.format(x)
            )
        count += 1
    report.samples = count
    return report
