"""Constructive completion of an invariant-metric gyrogroup.

A point of the completion is a ``CauchyPoint``: a sequence of base elements
together with an explicit modulus ``mu`` such that ``d(x_i, x_k) < eps``
whenever ``i, k >= mu(eps)``. The lifted operations act termwise and carry
moduli derived from both-sided invariance of ``d``; they are refused when
that invariance fails on samples.

Equality of completion points is only semi-decidable, so every law is
checked with ``approx_eq`` at an explicit ``eps``.
"""
import itertools
import json
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .exceptions import ConfigurationError, DomainError, FixtureError, UnsoundOperationError
from .fuzzy_metric import FuzzyMetric, Metric, Side, check_invariance, standard_fuzzy_metric
from .gyro_core import GroupAdapter, Gyrogroup, verify_gyrogroup_axioms, verify_identities
from .norms import positive_time
from .reals import compare, parse_real, to_fraction
from .reports import PropertyReport
from .sampling import choose, make_rng, resolve_seed, t_values
from .tnorm import MIN, TNorm

logger = logging.getLogger(__name__)

CAUCHY_FIXTURES = Path(__file__).resolve().parent / "fixtures" / "cauchy.json"

FIXTURE_KINDS = ("convergents", "constant", "explicit")

# tuples used by the invariance gate; right-invariance failures show up early
GATE_SAMPLES = 64

# empirical fuzzy-Cauchy scan: window starts and window length
HORIZON = 32
WINDOW = 16
CAUCHY_EPS = (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))

LIFTED_EPS = Fraction(1, 10**6)
LIFTED_SAMPLES = 20


def positive_eps(eps) -> Fraction:
    value = to_fraction(eps)
    if value <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return value


class ContinuedFraction:
    """Convergents of a (possibly infinite) simple continued fraction.

    Terms are pulled lazily; a finite expansion keeps returning its last
    convergent.
    """

    def __init__(self, terms: Iterator[int]):
        self._terms = iter(terms)
        self._p = [0, 1]
        self._q = [1, 0]
        self._finished = False
        self._lock = threading.Lock()

    def _extend(self, count: int):
        # self._p holds two seeds ahead of the convergents
        with self._lock:
            while not self._finished and len(self._p) - 2 < count:
                try:
                    a = next(self._terms)
                except StopIteration:
                    self._finished = True
                    break
                self._p.append(a * self._p[-1] + self._p[-2])
                self._q.append(a * self._q[-1] + self._q[-2])

    def known(self) -> int:
        return len(self._p) - 2

    def convergent(self, n: int) -> Fraction:
        self._extend(n + 1)
        k = min(n, self.known() - 1)
        return Fraction(self._p[k + 2], self._q[k + 2])

    def modulus(self, eps: Fraction) -> int:
        """First n with 1 / (q_n q_(n+1)) < eps; convergents past n all lie
        between c_n and c_(n+1)."""
        n = 0
        while True:
            self._extend(n + 2)
            if n + 1 >= self.known():
                return max(self.known() - 1, 0)
            if Fraction(1, self._q[n + 2] * self._q[n + 3]) < eps:
                return n
            n += 1


def sqrt_terms(n: int) -> Iterator[int]:
    """Continued fraction of sqrt(n): a0 then the periodic part."""
    if n < 0:
        raise DomainError("sqrt fixture needs a nonnegative integer")
    a0 = math.isqrt(n)
    yield a0
    if a0 * a0 == n:
        return
    m, d, a = 0, 1, a0
    while True:
        m = d * a - m
        d = (n - m * m) // d
        a = (a0 + m) // d
        yield a


def e_terms() -> Iterator[int]:
    yield 2
    for k in itertools.count(1):
        yield 2 * (k + 1) // 3 if k % 3 == 2 else 1


def golden_terms() -> Iterator[int]:
    return itertools.repeat(1)


def periodic_terms(prefix: Sequence[int], period: Sequence[int]) -> Iterator[int]:
    yield from prefix
    if period:
        yield from itertools.cycle(period)


NAMED_CONSTANTS = {"e": e_terms, "golden": golden_terms}


class CauchyPoint:
    """A completion point: ``seq`` with modulus ``modulus_fn``.

    Terms are memoized under a lock so concurrent readers see one
    consistent prefix.
    """

    def __init__(
        self,
        space: "CompletionSpace",
        seq: Callable[[int], object],
        modulus_fn: Callable[[Fraction], int],
        name: str = "p",
        constant: bool = False,
        oracle=None,
    ):
        self.space = space
        self._seq = seq
        self._modulus = modulus_fn
        self.name = name
        self.constant = constant
        self.oracle = oracle
        self._terms: Dict[int, object] = {}
        self._lock = threading.Lock()

    def __getitem__(self, n: int):
        with self._lock:
            if n not in self._terms:
                self._terms[n] = self._seq(n)
            return self._terms[n]

    def modulus(self, eps) -> int:
        return int(self._modulus(positive_eps(eps)))

    def at(self, eps):
        """A term within ``eps`` of the limit."""
        return self[self.modulus(eps)]

    def __repr__(self):
        return f"CauchyPoint({self.name})"


class CompletionSpace:
    """Base gyrogroup, metric ``d`` and t-norm; the lifted operations are
    available once ``d`` passes a both-sided invariance check on samples.

    ``assume_invariant`` skips the gate, for constant-sequence experiments
    on bases whose invariance is known to fail.
    """

    def __init__(
        self,
        metric: Metric,
        tnorm: TNorm = MIN,
        assume_invariant: bool = False,
        gate_samples: int = GATE_SAMPLES,
        seed: Optional[int] = None,
    ):
        self.base: Gyrogroup = metric.carrier
        self.metric = metric
        self.tnorm = tnorm
        self.fuzzy = standard_fuzzy_metric(metric, tnorm)
        self.invariance = check_invariance(self.fuzzy, Side.BOTH, n=gate_samples, seed=seed)
        self.assumed = assume_invariant
        if not self.invariance.passed:
            failure = self.invariance.failures[0]
            logger.warning(
                "%s fails %s on %s; lifted operations %s",
                metric.name,
                failure.law,
                self.base.name,
                "assumed sound" if assume_invariant else "refused",
            )

    @property
    def invariant(self) -> bool:
        return self.invariance.passed or self.assumed

    def require_invariant(self):
        if not self.invariant:
            failure = self.invariance.failures[0]
            raise UnsoundOperationError(
                f"{self.metric.name} is not both-sided invariant on {self.base.name} "
                f"({failure.law} fails at {failure.witness})"
            )

    @property
    def name(self) -> str:
        return f"completion[{self.base.name},{self.metric.name}]"

    def distance(self, x, y):
        return self.metric(x, y)


def _same_space(*points: CauchyPoint) -> CompletionSpace:
    space = points[0].space
    if any(p.space is not space for p in points[1:]):
        raise DomainError("completion points come from different spaces")
    return space


def embed(space: CompletionSpace, x, name: Optional[str] = None) -> CauchyPoint:
    """The constant sequence at ``x``; modulus 0."""
    x = space.base.validate(x)
    return CauchyPoint(
        space,
        lambda n: x,
        lambda eps: 0,
        name or space.base.format(x),
        constant=True,
    )


def hat_oplus(p: CauchyPoint, q: CauchyPoint) -> CauchyPoint:
    space = _same_space(p, q)
    space.require_invariant()
    G = space.base
    return CauchyPoint(
        space,
        lambda n: G.oplus(p[n], q[n]),
        lambda eps: max(p.modulus(eps / 2), q.modulus(eps / 2)),
        f"({p.name} (+) {q.name})",
        constant=p.constant and q.constant,
    )


def hat_neg(p: CauchyPoint) -> CauchyPoint:
    space = p.space
    space.require_invariant()
    G = space.base
    return CauchyPoint(
        space, lambda n: G.neg(p[n]), p.modulus, f"(-{p.name})", constant=p.constant
    )


def hat_gyr(a: CauchyPoint, b: CauchyPoint, c: CauchyPoint) -> CauchyPoint:
    """(-(a (+) b)) (+) (a (+) (b (+) c)) in the completion."""
    return hat_oplus(hat_neg(hat_oplus(a, b)), hat_oplus(a, hat_oplus(b, c)))


def _common_index(p: CauchyPoint, q: CauchyPoint, eps: Fraction) -> int:
    return max(p.modulus(eps), q.modulus(eps))


def approx_eq(p: CauchyPoint, q: CauchyPoint, eps) -> bool:
    """True guarantees d^(p, q) < eps; False proves nothing."""
    space = _same_space(p, q)
    eps = positive_eps(eps)
    k = _common_index(p, q, eps / 4)
    return compare(space.distance(p[k], q[k]), eps / 2) < 0


def distance_interval(p: CauchyPoint, q: CauchyPoint, prec) -> Tuple[object, object]:
    """[lo, hi] of width <= prec containing d^(p, q); exact on embedded points."""
    space = _same_space(p, q)
    prec = positive_eps(prec)
    if p.constant and q.constant:
        value = space.distance(p[0], q[0])
        return value, value
    k = _common_index(p, q, prec / 4)
    value = space.distance(p[k], q[k])
    lo = value - prec / 2
    if compare(lo, 0) < 0:
        lo = Fraction(0)
    return lo, value + prec / 2


def lifted_fuzzy_metric(
    space: CompletionSpace, p: CauchyPoint, q: CauchyPoint, t, prec
) -> Tuple[object, object]:
    """[lo, hi] of width <= prec containing t / (t + d^(p, q))."""
    if _same_space(p, q) is not space:
        raise DomainError("points do not belong to this completion")
    t = positive_time(to_fraction(t))
    prec = positive_eps(prec)
    # t / (t + d) is 1/t-Lipschitz in d
    d_lo, d_hi = distance_interval(p, q, prec * min(t, Fraction(1)))
    return t / (t + d_hi), t / (t + d_lo)


def intervals_overlap(first, second) -> bool:
    return compare(first[0], second[1]) <= 0 and compare(second[0], first[1]) <= 0


def density_witness(p: CauchyPoint, eps):
    """A base element g with approx_eq(p, embed(g), eps): p's own tail."""
    return p.at(positive_eps(eps) / 4)


def oracle_distance(p: CauchyPoint, oracle, eps):
    """d(p at depth mu(eps), oracle); exact on exact bases, so a sound modulus keeps
    it at most eps."""
    return p.space.distance(p.at(eps), oracle)


def oracle_delta(p: CauchyPoint, oracle, eps) -> float:
    return float(oracle_distance(p, oracle, eps))


def check_modulus(
    p: CauchyPoint,
    eps_grid: Optional[Sequence] = None,
    span: int = 8,
    samples: int = 8,
    seed: Optional[int] = None,
) -> PropertyReport:
    """Spot-check d(x_i, x_k) < eps for sampled i, k >= mu(eps), and that
    mu is monotone."""
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    grid = sorted((positive_eps(e) for e in (eps_grid or CAUCHY_EPS)), reverse=True)
    report = PropertyReport(f"modulus:{p.name}", seed, len(grid) * samples)
    soundness = report.law("modulus-soundness")
    monotone = report.law("modulus-monotone")
    previous = None
    for eps in grid:
        m = p.modulus(eps)
        if previous is not None:
            monotone.observe(m >= previous, 0.0, eps=eps, modulus=m, previous=previous)
        previous = m
        for _ in range(samples):
            i = m + int(rng.integers(0, span + 1))
            k = m + int(rng.integers(0, span + 1))
            distance = p.space.distance(p[i], p[k])
            gap = max(0.0, float(distance) - float(eps))
            soundness.observe(compare(distance, eps) < 0, gap, eps=eps, i=i, k=k)
    return report


class CompletedGyrogroup(Gyrogroup):
    """The completion seen through the ``Gyrogroup`` interface; equality is
    ``approx_eq`` at ``eps``."""

    exact = False

    def __init__(self, space: CompletionSpace, eps=LIFTED_EPS):
        space.require_invariant()
        self.space = space
        self.eps = positive_eps(eps)
        self.name = space.name
        self.identity = embed(space, space.base.identity)

    def oplus(self, a, b):
        return hat_oplus(a, b)

    def neg(self, a):
        return hat_neg(a)

    def gyr(self, a, b, c):
        return hat_gyr(a, b, c)

    def eq(self, x, y) -> bool:
        return approx_eq(x, y, self.eps)

    def deviation(self, x, y) -> float:
        k = _common_index(x, y, self.eps / 4)
        return float(self.space.distance(x[k], y[k]))

    def format(self, x) -> str:
        return x.name


def _on_real_line(base: Gyrogroup) -> bool:
    return isinstance(base, GroupAdapter) and base.elements() is None


@dataclass
class Fixture:
    """A declared sequence from the fixture file."""

    name: str
    kind: str
    params: dict = field(default_factory=dict)
    cauchy: Optional[bool] = None
    oracle: object = None

    def _literal(self, base: Gyrogroup, value):
        if isinstance(value, str):
            return base.parse(value)
        return base.validate(to_fraction(value) if base.exact else value)

    def _oracle(self, base: Gyrogroup):
        if not isinstance(self.oracle, str):
            return self._literal(base, self.oracle)
        try:
            return base.parse(self.oracle)
        except DomainError:
            if not _on_real_line(base):
                raise
        # limits outside the base, e.g. "sqrt(2)" on the rationals
        value = parse_real(self.oracle)
        return value if base.exact else float(value)

    def _continued_fraction(self) -> ContinuedFraction:
        params = self.params
        if "sqrt" in params:
            return ContinuedFraction(sqrt_terms(int(params["sqrt"])))
        if "constant" in params:
            try:
                return ContinuedFraction(NAMED_CONSTANTS[params["constant"]]())
            except KeyError:
                raise FixtureError(
                    f"{self.name}: unknown constant {params['constant']!r}"
                ) from None
        if "terms" in params:
            return ContinuedFraction(
                periodic_terms(
                    [int(a) for a in params["terms"]], [int(a) for a in params.get("period", ())]
                )
            )
        raise FixtureError(f"{self.name}: convergents need 'sqrt', 'constant' or 'terms'")

    def _explicit_terms(self, base: Gyrogroup) -> Tuple[list, str]:
        terms = [self._literal(base, value) for value in self.params.get("terms", ())]
        if not terms:
            raise FixtureError(f"{self.name}: explicit fixtures need at least one term")
        repeat = self.params.get("repeat", "last")
        if repeat not in ("last", "cycle"):
            raise FixtureError(f"{self.name}: repeat must be 'last' or 'cycle'")
        return terms, repeat

    def sequence(self, base: Gyrogroup) -> Callable[[int], object]:
        try:
            if self.kind == "convergents":
                cf = self._continued_fraction()
                base.validate(cf.convergent(0))
                return lambda n: base.validate(cf.convergent(n))
            if self.kind == "constant":
                value = self._literal(base, self.params["value"])
                return lambda n: value
            terms, repeat = self._explicit_terms(base)
            if repeat == "cycle":
                return lambda n: terms[n % len(terms)]
            return lambda n: terms[min(n, len(terms) - 1)]
        except (DomainError, KeyError, TypeError, ValueError) as exc:
            raise FixtureError(f"fixture {self.name} does not fit {base.name}: {exc}") from exc

    def _modulus(self, space: CompletionSpace) -> Callable[[Fraction], int]:
        if self.kind == "convergents":
            # convergents bracket their limit: |c_i - c_k| < 1/(q_n q_(n+1)) for i, k >= n
            bound = space.metric.lipschitz
            if bound is None:
                raise FixtureError(
                    f"{self.name}: convergent moduli need a metric bounded by a multiple of "
                    f"|x - y|, and {space.metric.name} declares none"
                )
            bound = to_fraction(bound)
            cf = self._continued_fraction()
            return lambda eps: cf.modulus(eps / bound)
        if self.kind == "constant":
            return lambda eps: 0
        terms, repeat = self._explicit_terms(space.base)
        d = space.distance

        def diameter(start):
            tail = terms[start:]
            return max((d(a, b) for a in tail for b in tail), default=0, key=float)

        if repeat == "cycle":
            spread = diameter(0)

            def cyclic(eps):
                if compare(spread, eps) >= 0:
                    raise FixtureError(f"{self.name} is not Cauchy at eps={eps}")
                return 0

            return cyclic

        def eventually_constant(eps):
            start = len(terms) - 1
            while start > 0 and compare(diameter(start - 1), eps) < 0:
                start -= 1
            return start

        return eventually_constant

    def point(self, space: CompletionSpace) -> CauchyPoint:
        if self.cauchy is not True:
            raise FixtureError(f"{self.name} is not declared Cauchy")
        seq = self.sequence(space.base)
        try:
            oracle = None if self.oracle is None else self._oracle(space.base)
        except DomainError as exc:
            raise FixtureError(f"{self.name}: bad oracle: {exc}") from exc
        return CauchyPoint(
            space,
            seq,
            self._modulus(space),
            self.name,
            constant=self.kind == "constant",
            oracle=oracle,
        )


def _fixture_from_dict(entry) -> Fixture:
    if not isinstance(entry, dict):
        raise FixtureError(f"fixture entries must be objects, got {entry!r}")
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise FixtureError(f"fixture without a name: {entry!r}")
    kind = entry.get("kind")
    if kind not in FIXTURE_KINDS:
        raise FixtureError(f"{name}: kind must be one of {', '.join(FIXTURE_KINDS)}")
    params = entry.get("params", {})
    if not isinstance(params, dict):
        raise FixtureError(f"{name}: params must be an object")
    cauchy = entry.get("cauchy")
    if not isinstance(cauchy, bool):
        raise FixtureError(f"{name} lacks a declared Cauchy status")
    return Fixture(name, kind, params, cauchy, entry.get("oracle"))


def parse_fixtures(text: str) -> Dict[str, Fixture]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"malformed fixture file: {exc}") from exc
    if not isinstance(data, list):
        raise FixtureError("the fixture file must hold a JSON list")
    fixtures: Dict[str, Fixture] = {}
    for entry in data:
        fixture = _fixture_from_dict(entry)
        if fixture.name in fixtures:
            raise FixtureError(f"duplicate fixture {fixture.name!r}")
        fixtures[fixture.name] = fixture
    return fixtures


def load_fixtures(path=None) -> Dict[str, Fixture]:
    path = Path(path) if path is not None else CAUCHY_FIXTURES
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read fixtures {path}: {exc}") from exc
    return parse_fixtures(text)


def select_fixtures(fixtures: Dict[str, Fixture], names: Optional[Sequence[str]]) -> List[Fixture]:
    if not names:
        return list(fixtures.values())
    unknown = [name for name in names if name not in fixtures]
    if unknown:
        raise ConfigurationError(f"unknown fixtures: {', '.join(unknown)}")
    return [fixtures[name] for name in names]


def fuzzy_cauchy(
    M: FuzzyMetric,
    seq: Callable[[int], object],
    eps_grid: Optional[Sequence] = None,
    t_grid: Optional[Sequence] = None,
    horizon: int = HORIZON,
    window: int = WINDOW,
) -> Tuple[bool, dict]:
    """Empirical fuzzy-Cauchy test: for every (eps, t) some window of
    ``window`` consecutive terms starting before ``horizon`` has all pairs
    with M > 1 - eps. Returns the verdict and the first failing (eps, t)."""
    G = M.carrier
    terms = [seq(k) for k in range(horizon + window)]
    times = tuple(to_fraction(t) if G.exact else float(t) for t in t_values(t_grid))
    eps_values = [to_fraction(e) for e in (eps_grid or CAUCHY_EPS)]
    for t in times:
        floors = []
        for start in range(horizon):
            tail = terms[start:start + window]
            values = [M(a, b, t) for i, a in enumerate(tail) for b in tail[i + 1:]]
            floor = values[0]
            for value in values[1:]:
                if compare(value, floor) < 0:
                    floor = value
            floors.append(floor)
        for eps in eps_values:
            if not any(compare(floor, 1 - eps) > 0 for floor in floors):
                return False, {"eps": eps, "t": t}
    return True, {}


def completeness_transfer_check(
    M: FuzzyMetric,
    Nc: FuzzyMetric,
    fixtures: Sequence[Fixture],
    eps_grid: Optional[Sequence] = None,
    t_grid: Optional[Sequence] = None,
    horizon: int = HORIZON,
    window: int = WINDOW,
) -> PropertyReport:
    """Every fixture that is Cauchy for ``Nc`` must be Cauchy for ``M``."""
    if M.carrier is not Nc.carrier:
        raise ConfigurationError(f"{M.name} and {Nc.name} live on different carriers")
    G = M.carrier
    report = PropertyReport(f"completeness-transfer:{M.name}:{Nc.name}:{G.name}", 0, 0)
    declared = report.law("declared-status")
    transfer = report.law("transfer")
    compatible = report.law("compatibility")
    for fixture in fixtures:
        if fixture.cauchy is None:
            raise FixtureError(f"{fixture.name} lacks a declared Cauchy status")
        seq = fixture.sequence(G)
        in_nc, nc_witness = fuzzy_cauchy(Nc, seq, eps_grid, t_grid, horizon, window)
        in_m, m_witness = fuzzy_cauchy(M, seq, eps_grid, t_grid, horizon, window)
        logger.debug("fixture %s: Cauchy for Nc=%s, for M=%s", fixture.name, in_nc, in_m)
        declared.observe(in_nc == fixture.cauchy, 0.0, fixture=fixture.name, **nc_witness)
        transfer.observe(not in_nc or in_m, 0.0, fixture=fixture.name, **m_witness)
        compatible.observe(in_nc == in_m, 0.0, fixture=fixture.name)
        report.samples += 1
    return report


def _observe_oracle(check, distance, eps, **witness):
    check.observe(compare(distance, eps) < 0, float(distance), **witness)


def completion_suite(
    space: CompletionSpace,
    points: Sequence[CauchyPoint],
    eps=LIFTED_EPS,
    n: int = LIFTED_SAMPLES,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
) -> PropertyReport:
    """Lifted axioms and identities, oracle agreement, invariance of the
    completed fuzzy metric by interval overlap and density, on ``points``."""
    if not points:
        raise ConfigurationError("the completion suite needs at least one point")
    eps = positive_eps(eps)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    completed = CompletedGyrogroup(space, eps)
    G = space.base
    logger.info("completion suite on %s: %d points, eps=%s", space.name, len(points), eps)

    def sampler(generator):
        return choose(generator, points)

    report = PropertyReport(f"completion:{space.name}", seed, n)
    report.extend(verify_gyrogroup_axioms(completed, sampler, n, seed), "lifted")
    report.extend(verify_identities(completed, sampler, n, seed), "lifted")

    oracle = report.law("oracle")
    oracle_neg = report.law("oracle-neg")
    oracle_oplus = report.law("oracle-oplus")
    with_oracle = [p for p in points if p.oracle is not None]
    for p in with_oracle:
        _observe_oracle(oracle, oracle_distance(p, p.oracle, eps / 2), eps, point=p.name)
        distance = oracle_distance(hat_neg(p), G.neg(p.oracle), eps / 2)
        _observe_oracle(oracle_neg, distance, eps, point=p.name)
    for p, q in itertools.combinations(with_oracle, 2):
        distance = oracle_distance(hat_oplus(p, q), G.oplus(p.oracle, q.oracle), eps / 2)
        _observe_oracle(oracle_oplus, distance, eps, p=p.name, q=q.name)

    invariance = report.law("invariance")
    times = [to_fraction(t) for t in t_values(t_grid)]
    for _ in range(n):
        a, x, y = (choose(rng, points) for _ in range(3))
        t = choose(rng, times)
        base = lifted_fuzzy_metric(space, x, y, t, eps)
        for side, moved in (
            ("left", (hat_oplus(a, x), hat_oplus(a, y))),
            ("right", (hat_oplus(x, a), hat_oplus(y, a))),
        ):
            shifted = lifted_fuzzy_metric(space, *moved, t, eps)
            witness = {"side": side, "a": a.name, "x": x.name, "y": y.name, "t": t}
            invariance.observe(intervals_overlap(base, shifted), 0.0, **witness)

    density = report.law("density")
    for p in points:
        g = density_witness(p, eps)
        density.observe(approx_eq(p, embed(space, g), eps), 0.0, point=p.name)
    return report
