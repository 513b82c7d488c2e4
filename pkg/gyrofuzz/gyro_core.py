"""Gyrogroups: the abstraction, its law suites and concrete instances.

Instances:

* ``MobiusGyrogroup`` on the open complex unit disk, exact over Gaussian
  rationals or in floating point;
* ``GroupAdapter`` wrapping an ordinary group (cyclic groups, (Q, +) and
  (R, +)); its gyrations are trivial;
* finite table instances live in ``table_io``.
"""
import logging
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .conf import settings
from .exceptions import DomainError
from .reals import format_number, to_fraction
from .reports import PropertyReport
from .sampling import Sampler, make_rng, rational, resolve_seed, resolve_samples, tuples

logger = logging.getLogger(__name__)

LITERAL_RE = re.compile(
    r"^\s*(?P<re>[+-]?[0-9][0-9./]*?)\s*(?P<sign>[+-])\s*(?P<im>[0-9][0-9./]*)?\s*i\s*$"
)


class Gyrogroup(ABC):
    """Carrier with (oplus, identity, neg, gyr) and an equality predicate.

    ``gyr`` defaults to the gyrator identity; instances with a closed form
    override it.
    """

    name = "gyrogroup"
    exact = True
    tolerance = 0.0

    identity = None

    @abstractmethod
    def oplus(self, a, b):
        ...

    @abstractmethod
    def neg(self, a):
        ...

    def gyr(self, a, b, c):
        return gyr_via_gyrator_identity(self, a, b, c)

    def ominus(self, a, b):
        """a (-) b, that is a (+) (-b)."""
        return self.oplus(a, self.neg(b))

    def eq(self, x, y) -> bool:
        if self.exact:
            return x == y
        return self.deviation(x, y) <= self.tolerance

    def deviation(self, x, y) -> float:
        return 0.0 if x == y else 1.0

    def elements(self) -> Optional[Sequence]:
        """All elements for finite carriers, ``None`` otherwise."""
        return None

    def sample(self, rng: np.random.Generator):
        elements = self.elements()
        if elements is None:
            raise NotImplementedError(f"{self.name} has no sampler")
        return elements[int(rng.integers(0, len(elements)))]

    def small(self, rng: np.random.Generator, scale):
        """An element near the identity; ``scale`` bounds its size where meaningful."""
        return self.sample(rng)

    def perturb(self, rng: np.random.Generator, x, scale):
        return self.oplus(x, self.small(rng, scale))

    def validate(self, x):
        return x

    def parse(self, literal: str):
        raise DomainError(f"{self.name} has no element literals")

    def format(self, x) -> str:
        return format_number(x)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class MobiusPoint:
    re: object = Fraction(0)
    im: object = Fraction(0)

    def __post_init__(self):
        for part in (self.re, self.im):
            if isinstance(part, float) and not math.isfinite(part):
                raise DomainError(f"non-finite coordinate {part!r}")
        if not self.norm_sq() < 1:
            raise DomainError(f"{self.literal()} lies outside the open unit disk")

    @property
    def floating(self) -> bool:
        return isinstance(self.re, float) or isinstance(self.im, float)

    def norm_sq(self):
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "MobiusPoint":
        return MobiusPoint(self.re, -self.im)

    def __neg__(self) -> "MobiusPoint":
        return MobiusPoint(-self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_float(self) -> "MobiusPoint":
        return MobiusPoint(float(self.re), float(self.im))

    def literal(self) -> str:
        re_part = format_number(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{re_part}{sign}{format_number(abs(self.im))}i"

    def __str__(self):
        return self.literal()

    @classmethod
    def parse(cls, literal: str, floating: bool = False) -> "MobiusPoint":
        """Read ``"p/q+r/si"``; decimals are accepted only when ``floating``."""
        match = LITERAL_RE.match(literal)
        if match is None:
            try:
                real = _coordinate(literal, floating)
            except DomainError:
                raise DomainError(f"malformed element literal {literal!r}") from None
            return cls(real, 0.0 if floating else Fraction(0))
        re_part = _coordinate(match["re"], floating)
        im_part = _coordinate(match["im"] or "1", floating)
        if match["sign"] == "-":
            im_part = -im_part
        return cls(re_part, im_part)


def _coordinate(text: str, floating: bool):
    text = text.strip()
    if floating:
        try:
            return float(to_fraction(text))
        except (DomainError, OverflowError) as exc:
            raise DomainError(f"not a number: {text!r}") from exc
    if "." in text or "e" in text.lower():
        raise DomainError(f"decimal {text!r} needs float mode; use p/q in exact mode")
    return to_fraction(text)


ORIGIN = MobiusPoint()


def _conj_times(a: MobiusPoint, b: MobiusPoint):
    """conj(a) * b as a coordinate pair."""
    return a.re * b.re + a.im * b.im, a.re * b.im - a.im * b.re


def mobius_oplus(a: MobiusPoint, b: MobiusPoint) -> MobiusPoint:
    """(a + b) / (1 + conj(a) b)."""
    cr, ci = _conj_times(a, b)
    dr, di = 1 + cr, ci
    denom = dr * dr + di * di
    assert denom != 0, "1 + conj(a)b vanishes only outside the disk"
    nr, ni = a.re + b.re, a.im + b.im
    # (nr + i ni)(dr - i di) / |d|^2
    return MobiusPoint((nr * dr + ni * di) / denom, (ni * dr - nr * di) / denom)


def gyration_factor(a: MobiusPoint, b: MobiusPoint):
    """The unimodular factor (1 + a conj(b)) / (1 + conj(a) b) as a coordinate pair."""
    cr, ci = _conj_times(a, b)
    dr, di = 1 + cr, ci
    denom = dr * dr + di * di
    # conj(d) / d = conj(d)^2 / |d|^2
    return (dr * dr - di * di) / denom, (-2 * dr * di) / denom


def mobius_gyr(a: MobiusPoint, b: MobiusPoint, c: MobiusPoint) -> MobiusPoint:
    fr, fi = gyration_factor(a, b)
    return MobiusPoint(fr * c.re - fi * c.im, fr * c.im + fi * c.re)


class MobiusGyrogroup(Gyrogroup):
    """The Möbius gyrogroup on the open unit disk.

    Exact mode keeps Gaussian-rational coordinates and compares
    structurally; floating mode uses floats and a per-instance tolerance
    on the Euclidean distance of payloads.
    """

    def __init__(self, floating: bool = False, tolerance: Optional[float] = None):
        self.floating = floating
        self.exact = not floating
        if tolerance is None:
            tolerance = settings.FLOAT_TOLERANCE
        self.tolerance = tolerance if floating else 0.0
        self.name = "mobius-float" if floating else "mobius-exact"
        self.identity = MobiusPoint(0.0, 0.0) if floating else ORIGIN

    def validate(self, x):
        if not isinstance(x, MobiusPoint):
            raise DomainError(f"{x!r} is not a disk point")
        return x.to_float() if self.floating and not x.floating else x

    def oplus(self, a, b):
        return mobius_oplus(a, b)

    def neg(self, a):
        return -a

    def gyr(self, a, b, c):
        return mobius_gyr(a, b, c)

    def deviation(self, x, y) -> float:
        return math.hypot(float(x.re) - float(y.re), float(x.im) - float(y.im))

    def eq(self, x, y) -> bool:
        if self.exact and not (x.floating or y.floating):
            return x == y
        return self.deviation(x, y) <= self.tolerance

    def sample(self, rng: np.random.Generator) -> MobiusPoint:
        while True:
            re_part, im_part = rational(rng), rational(rng)
            if re_part * re_part + im_part * im_part < 1:
                point = MobiusPoint(re_part, im_part)
                return point.to_float() if self.floating else point

    def small(self, rng: np.random.Generator, scale) -> MobiusPoint:
        """A point of modulus below ``min(scale, 1/2)``."""
        radius = min(to_fraction(scale), Fraction(1, 2))
        while True:
            re_part = rational(rng) * radius
            im_part = rational(rng) * radius
            if re_part * re_part + im_part * im_part < radius * radius:
                point = MobiusPoint(re_part, im_part)
                return point.to_float() if self.floating else point

    def conjugate(self, x: MobiusPoint) -> MobiusPoint:
        return x.conjugate()

    def parse(self, literal: str) -> MobiusPoint:
        return MobiusPoint.parse(literal, floating=self.floating)

    def format(self, x) -> str:
        return x.literal()


class GroupAdapter(Gyrogroup):
    """An ordinary group seen as a gyrogroup with trivial gyrations."""

    def __init__(
        self,
        name: str,
        identity,
        op: Callable,
        neg: Callable,
        elements: Optional[Sequence] = None,
        sampler: Optional[Sampler] = None,
        small: Optional[Callable] = None,
        parser: Callable = to_fraction,
        exact: bool = True,
        tolerance: Optional[float] = None,
    ):
        self.name = name
        self.identity = identity
        self._op = op
        self._neg = neg
        self._elements = tuple(elements) if elements is not None else None
        self._sampler = sampler
        self._small = small
        self._parser = parser
        self.exact = exact
        if tolerance is None:
            tolerance = settings.FLOAT_TOLERANCE
        self.tolerance = 0.0 if exact else tolerance

    def oplus(self, a, b):
        return self._op(a, b)

    def neg(self, a):
        return self._neg(a)

    def gyr(self, a, b, c):
        return c

    def elements(self):
        return self._elements

    def sample(self, rng):
        if self._sampler is not None:
            return self._sampler(rng)
        return super().sample(rng)

    def small(self, rng, scale):
        if self._small is not None:
            return self._small(rng, scale)
        return self.sample(rng)

    def deviation(self, x, y) -> float:
        if self._elements is not None:
            return 0.0 if x == y else 1.0
        return abs(float(x) - float(y))

    def parse(self, literal: str):
        try:
            value = self._parser(literal.strip())
        except (TypeError, ValueError) as exc:
            raise DomainError(f"malformed element literal {literal!r} for {self.name}") from exc
        return self.validate(value)

    def validate(self, x):
        if self._elements is not None and x not in self._elements:
            raise DomainError(f"{x!r} is not an element of {self.name}")
        return x


def cyclic_group(n: int) -> GroupAdapter:
    if n < 1:
        raise DomainError("cyclic group order must be positive")
    return GroupAdapter(
        f"z{n}",
        0,
        lambda a, b: (a + b) % n,
        lambda a: (-a) % n,
        elements=range(n),
        parser=int,
    )


def _rational_small(rng, scale):
    return rational(rng) * to_fraction(scale)


def rational_additive() -> GroupAdapter:
    """(Q, +), exact; samples are rationals in (-4, 4)."""
    return GroupAdapter(
        "q-add",
        Fraction(0),
        lambda a, b: a + b,
        lambda a: -a,
        sampler=lambda rng: rational(rng, bound=4),
        small=_rational_small,
    )


def real_additive(tolerance: Optional[float] = None) -> GroupAdapter:
    """(R, +) in floating point."""
    return GroupAdapter(
        "r-add",
        0.0,
        lambda a, b: a + b,
        lambda a: -a,
        sampler=lambda rng: float(rng.uniform(-4.0, 4.0)),
        small=lambda rng, scale: float(rng.uniform(-1.0, 1.0)) * float(scale),
        parser=float,
        exact=False,
        tolerance=tolerance,
    )


def gyr_via_gyrator_identity(G: Gyrogroup, a, b, c):
    """(-(a (+) b)) (+) (a (+) (b (+) c))."""
    return G.oplus(G.neg(G.oplus(a, b)), G.oplus(a, G.oplus(b, c)))


def left_translate(G: Gyrogroup, a, x):
    return G.oplus(a, x)


def right_translate(G: Gyrogroup, a, x):
    return G.oplus(x, a)


def _observe_eq(G: Gyrogroup, check, lhs, rhs, **witness):
    check.observe(
        G.eq(lhs, rhs),
        G.deviation(lhs, rhs),
        **{name: G.format(value) for name, value in witness.items()},
    )


def verify_gyrogroup_axioms(
    G: Gyrogroup,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
) -> PropertyReport:
    """Check G1-G4, right identity, right inverse and the automorphism
    property of gyr on ``n`` sampled tuples (exhaustive on small finite
    carriers)."""
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    logger.info("gyrogroup axioms for %s: seed=%d samples=%d", G.name, seed, n)
    report = PropertyReport(f"gyrogroup:{G.name}", seed, 0)
    g1 = report.law("G1")
    right_identity = report.law("right-identity")
    g2 = report.law("G2")
    right_inverse = report.law("right-inverse")
    g3 = report.law("G3")
    g4 = report.law("G4")
    automorphism = report.law("gyr-automorphism")
    e = G.identity

    count = 0
    for x, y, z in tuples(G, 3, n, rng, sampler):
        count += 1
        _observe_eq(G, g1, G.oplus(e, x), x, x=x)
        _observe_eq(G, right_identity, G.oplus(x, e), x, x=x)
        _observe_eq(G, g2, G.oplus(G.neg(x), x), e, x=x)
        _observe_eq(G, right_inverse, G.oplus(x, G.neg(x)), e, x=x)
        _observe_eq(
            G,
            g3,
            G.oplus(x, G.oplus(y, z)),
            G.oplus(G.oplus(x, y), G.gyr(x, y, z)),
            x=x,
            y=y,
            z=z,
        )
        _observe_eq(G, g4, G.gyr(G.oplus(x, y), y, z), G.gyr(x, y, z), x=x, y=y, z=z)

    for a, b, c, d in tuples(G, 4, n, rng, sampler):
        _observe_eq(
            G,
            automorphism,
            G.gyr(a, b, G.oplus(c, d)),
            G.oplus(G.gyr(a, b, c), G.gyr(a, b, d)),
            a=a,
            b=b,
            c=c,
            d=d,
        )
    report.samples = count
    return report


def verify_identities(
    G: Gyrogroup,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
) -> PropertyReport:
    """The seven standard gyrogroup identities on sampled triples."""
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    logger.info("gyrogroup identities for %s: seed=%d samples=%d", G.name, seed, n)
    report = PropertyReport(f"identities:{G.name}", seed, 0)
    involution = report.law("involution")
    cancellation = report.law("left-cancellation")
    gyrator = report.law("gyrator-identity")
    inverse_of_sum = report.law("inverse-of-sum")
    chain = report.law("cancellation-chain")
    even = report.law("even-property")
    inversive = report.law("inversive-symmetry")

    count = 0
    for a, b, c in tuples(G, 3, n, rng, sampler):
        count += 1
        na, nb = G.neg(a), G.neg(b)
        _observe_eq(G, involution, G.neg(na), a, a=a)
        _observe_eq(G, cancellation, G.oplus(na, G.oplus(a, b)), b, a=a, b=b)
        _observe_eq(
            G, gyrator, G.gyr(a, b, c), gyr_via_gyrator_identity(G, a, b, c), a=a, b=b, c=c
        )
        _observe_eq(
            G, inverse_of_sum, G.neg(G.oplus(a, b)), G.gyr(a, b, G.oplus(nb, na)), a=a, b=b
        )
        _observe_eq(
            G,
            chain,
            G.oplus(G.oplus(na, b), G.gyr(na, b, G.oplus(nb, c))),
            G.oplus(na, c),
            a=a,
            b=b,
            c=c,
        )
        _observe_eq(G, even, G.gyr(a, b, c), G.gyr(na, nb, c), a=a, b=b, c=c)
        _observe_eq(G, inversive, G.gyr(a, b, G.gyr(b, a, c)), c, a=a, b=b, c=c)
    report.samples = count
    return report
