"""Fuzzy metrics, their constructions from metrics and fuzzy gyronorms, and
the invariance, Klee-condition and continuity checks built on them.

Topology enters only through balls: ``B(x, eps, t) = {y : M(x, y, t) > 1 - eps}``.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .conf import settings
from .exceptions import ConfigurationError, DomainError, UnsoundOperationError
from .gyro_core import Gyrogroup, left_translate, right_translate
from .norms import FuzzyGyronorm, Gyronorm, check_refinement, positive_time
from .reals import check_eq, check_ge, compare, to_fraction
from .reports import PropertyReport
from .sampling import (
    Sampler,
    draw,
    make_rng,
    resolve_samples,
    resolve_seed,
    t_pairs,
    t_values,
    tuples,
)
from .tnorm import TNorm, tnorm_eval, tnorm_root

logger = logging.getLogger(__name__)

# right-translation ladder t - t/2^k used when auditing (I)' => (I)
LADDER_DEPTH = 20
# attempts before a ball sample is given up
BALL_ATTEMPTS = 64


@dataclass(frozen=True)
class Metric:
    carrier: Gyrogroup
    dist: Callable
    name: str = "d"
    # L with d(x, y) <= L * |x - y|, known only for metrics on the real line
    lipschitz: Optional[object] = None

    def __call__(self, x, y):
        return self.dist(x, y)


@dataclass(frozen=True)
class FuzzyMetric:
    carrier: Gyrogroup
    tnorm: TNorm
    evaluate: Callable
    name: str = "M"
    norm: Optional[FuzzyGyronorm] = None
    metric: Optional[Metric] = None

    def __call__(self, x, y, t):
        return self.evaluate(x, y, positive_time(t))


@dataclass(frozen=True)
class Ball:
    center: object
    eps: object
    t: object

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise DomainError(f"ball radius eps={self.eps} must lie in (0, 1)")
        positive_time(self.t)


def _times(G: Gyrogroup, t_grid: Optional[Sequence]):
    grid = t_values(t_grid)
    if G.exact:
        return tuple(to_fraction(t) for t in grid)
    return tuple(float(t) for t in grid)


def _exact_tolerance(G: Gyrogroup, tolerance):
    return 0 if tolerance is None and G.exact else tolerance


def absolute_metric(G: Gyrogroup, scale=1) -> Metric:
    """scale * |x - y| on the additive adapters."""
    name = "abs" if scale == 1 else f"{scale}abs"
    return Metric(G, lambda x, y: scale * abs(x - y), name, lipschitz=scale)


def gyrodistance(nrm: Gyronorm) -> Metric:
    """d(x, y) = ||(-x) (+) y||."""
    G = nrm.base
    return Metric(G, lambda x, y: nrm(G.oplus(G.neg(x), y)), f"gyrodistance[{nrm.name}]")


def standard_fuzzy_metric(d: Metric, t: TNorm) -> FuzzyMetric:
    """M(x, y, t) = t / (t + d(x, y))."""

    def evaluate(x, y, time):
        return time / (time + d(x, y))

    return FuzzyMetric(d.carrier, t, evaluate, f"M[{d.name}]", metric=d)


def metric_from_fuzzy_gyronorm(N: FuzzyGyronorm) -> FuzzyMetric:
    """M_N(x, y, t) = N((-x) (+) y, t)."""
    G = N.base

    def evaluate(x, y, time):
        return N(G.oplus(G.neg(x), y), time)

    return FuzzyMetric(G, N.tnorm, evaluate, f"M[{N.name}]", norm=N)


def gyronorm_from_invariant_metric(
    M: FuzzyMetric,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    verify: bool = True,
) -> FuzzyGyronorm:
    """N_M(x, t) = M(e, x, t); requires left invariance, checked on samples
    unless ``verify`` is false."""
    G = M.carrier
    if not isinstance(G, Gyrogroup) or G.identity is None:
        raise ConfigurationError(f"{M.name} is not defined on a gyrogroup")
    if verify:
        report = check_invariance(M, Side.LEFT, sampler=sampler, n=n, seed=seed)
        if not report.passed:
            raise UnsoundOperationError(
                f"{M.name} is not left-invariant: {report.failures[0].witness}"
            )

    def evaluate(x, time):
        return M(G.identity, x, time)

    return FuzzyGyronorm(G, M.tnorm, evaluate, f"N[{M.name}]")


def check_round_trip(
    N: FuzzyGyronorm,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
    tolerance=None,
) -> PropertyReport:
    """N -> M_N -> N_M gives back N pointwise."""
    G = N.base
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    times = _times(G, t_grid)
    tol = _exact_tolerance(G, tolerance)
    back = gyronorm_from_invariant_metric(metric_from_fuzzy_gyronorm(N), verify=False)
    report = PropertyReport(f"round-trip:{N.name}:{G.name}", seed, 0)
    round_trip = report.law("round-trip")
    count = 0
    for (x,) in tuples(G, 1, n, rng, sampler):
        count += 1
        for t in times:
            ok, deviation = check_eq(back(x, t), N(x, t), tol)
            round_trip.observe(ok, deviation, x=G.format(x), t=t)
    report.samples = count
    return report


def verify_metric(
    d: Metric,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    tolerance=None,
) -> PropertyReport:
    G = d.carrier
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    tol = _exact_tolerance(G, tolerance)
    logger.info("metric %s on %s: seed=%d samples=%d", d.name, G.name, seed, n)
    report = PropertyReport(f"metric:{d.name}:{G.name}", seed, 0)
    nonnegative = report.law("nonnegative")
    identity = report.law("identity")
    separation = report.law("separation")
    symmetry = report.law("symmetry")
    triangle = report.law("triangle")
    count = 0
    for x, y, z in tuples(G, 3, n, rng, sampler):
        count += 1
        dxy = d(x, y)
        witness = {"x": G.format(x), "y": G.format(y)}
        ok, deviation = check_ge(dxy, 0, tol)
        nonnegative.observe(ok, deviation, **witness)
        ok, deviation = check_eq(d(x, x), 0, tol)
        identity.observe(ok, deviation, x=G.format(x))
        if not G.eq(x, y):
            separation.observe(compare(dxy, 0) > 0, 0.0, **witness)
        ok, deviation = check_eq(dxy, d(y, x), tol)
        symmetry.observe(ok, deviation, **witness)
        ok, deviation = check_ge(dxy + d(y, z), d(x, z), tol)
        triangle.observe(ok, deviation, z=G.format(z), **witness)
    report.samples = count
    return report


def verify_fuzzy_metric(
    M: FuzzyMetric,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
    tolerance=None,
) -> PropertyReport:
    """Conditions (i)-(v) of a fuzzy metric; (iv) over all ordered (t, s)
    pairs of the grid, (v) by oscillation shrinkage."""
    G = M.carrier
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    times = _times(G, t_grid)
    pairs = t_pairs(times)
    tol = _exact_tolerance(G, tolerance)
    logger.info("fuzzy metric %s on %s: seed=%d samples=%d", M.name, G.name, seed, n)
    report = PropertyReport(f"fuzzy-metric:{M.name}:{M.tnorm.name}:{G.name}", seed, 0)
    codomain = report.law("codomain")
    positivity = report.law("positivity")
    identity = report.law("identity")
    symmetry = report.law("symmetry")
    triangle = report.law("triangle")
    continuity = report.law("continuity")
    monotone = report.law("nondecreasing-in-t")

    count = 0
    for x, y, z in tuples(G, 3, n, rng, sampler):
        witness = {"x": G.format(x), "y": G.format(y)}
        values = {}
        for t in times:
            value = M(x, y, t)
            values[t] = value
            positivity.observe(compare(value, 0) > 0, 0.0, t=t, **witness)
            ok, deviation = check_ge(1, value, tol)
            codomain.observe(ok, deviation, t=t, **witness)
            ok, deviation = check_eq(M(x, x, t), 1, tol)
            identity.observe(ok, deviation, x=G.format(x), t=t)
            ok, deviation = check_eq(value, M(y, x, t), tol)
            symmetry.observe(ok, deviation, t=t, **witness)
        if not G.eq(x, y):
            identity.observe(any(compare(v, 1) < 0 for v in values.values()), 0.0, **witness)
        for earlier, later in zip(times, times[1:]):
            ok, deviation = check_ge(values[later], values[earlier], tol)
            monotone.observe(ok, deviation, t=earlier, s=later, **witness)
        for t, s in pairs:
            rhs = tnorm_eval(M.tnorm, M(x, z, t), M(z, y, s))
            lhs = values.get(t + s)
            if lhs is None:
                lhs = M(x, y, t + s)
            ok, deviation = check_ge(lhs, rhs, tol)
            triangle.observe(ok, deviation, z=G.format(z), t=t, s=s, **witness)
        if count < 16:
            check_refinement(
                continuity,
                lambda time, x=x, y=y: M(x, y, time),
                times[0],
                times[-1],
                tol or 0,
                **witness,
            )
        count += 1
    report.samples = count
    return report


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"
    GYRATION = "gyration"


def check_invariance(
    M: FuzzyMetric,
    side: Side = Side.LEFT,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
    tolerance=None,
) -> PropertyReport:
    """Left: M(a(+)x, a(+)y, t) = M(x, y, t); right: M(x(+)a, y(+)a, t) = M(x, y, t);
    gyration: M(gyr[u,v]x, gyr[u,v]y, t) = M(x, y, t)."""
    side = Side(side)
    G = M.carrier
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    times = _times(G, t_grid)
    tol = _exact_tolerance(G, tolerance)
    logger.info(
        "%s invariance of %s on %s: seed=%d samples=%d", side.value, M.name, G.name, seed, n
    )
    report = PropertyReport(f"invariance:{side.value}:{M.name}:{G.name}", seed, 0)
    laws = []
    if side in (Side.LEFT, Side.BOTH):
        laws.append((report.law("left-invariance"), lambda a, b, x: left_translate(G, a, x)))
    if side in (Side.RIGHT, Side.BOTH):
        laws.append((report.law("right-invariance"), lambda a, b, x: right_translate(G, a, x)))
    if side is Side.GYRATION:
        laws.append((report.law("gyration-invariance"), lambda a, b, x: G.gyr(a, b, x)))

    count = 0
    for x, y, a, b in tuples(G, 4, n, rng, sampler):
        count += 1
        for t in times:
            base = M(x, y, t)
            for check, move in laws:
                ok, deviation = check_eq(M(move(a, b, x), move(a, b, y), t), base, tol)
                check.observe(
                    ok,
                    deviation,
                    x=G.format(x),
                    y=G.format(y),
                    a=G.format(a),
                    b=G.format(b),
                    t=t,
                )
    report.samples = count
    return report


KLEE_CONDITIONS = ("I", "I'", "II", "II'")
KLEE_IMPLICATIONS = ("II=>II'", "II'=>II", "II'=>I'", "I=>I'", "I'=>I")


@dataclass
class KleeReport:
    """Per-condition verdicts plus the implication audit.

    Conditions: (I) right-gyrotranslation inequality, (I)' Klee's
    condition, (II) commutative-like condition, (II)' right-gyrotranslation
    invariance. Each audit law transports a premise instance to the
    instance its conclusion needs, so a failure is a genuine inconsistency.
    """

    conditions: PropertyReport
    audit: PropertyReport

    def holds(self, condition: str) -> bool:
        return self.conditions[condition].passed

    @property
    def consistent(self) -> bool:
        return self.audit.passed

    def to_report(self) -> PropertyReport:
        conditions = self.conditions
        merged = PropertyReport(conditions.suite, conditions.seed, conditions.samples)
        merged.extend(self.conditions, "condition")
        merged.extend(self.audit, "implication")
        return merged


def check_klee(
    M: FuzzyMetric,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
    tolerance=None,
) -> KleeReport:
    G = M.carrier
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    times = _times(G, t_grid)
    pairs = t_pairs(times)
    tol = _exact_tolerance(G, tolerance)
    N = M.norm if M.norm is not None else gyronorm_from_invariant_metric(M, verify=False)
    star = M.tnorm
    logger.info("Klee conditions for %s on %s: seed=%d samples=%d", M.name, G.name, seed, n)
    conditions = PropertyReport(f"klee:{M.name}:{G.name}", seed, 0)
    audit = PropertyReport(f"klee-audit:{M.name}:{G.name}", seed, 0)
    checks = {name: conditions.law(name) for name in KLEE_CONDITIONS}
    audits = {name: audit.law(name) for name in KLEE_IMPLICATIONS}

    def right_inequality(x, y, a, t):
        return check_ge(M(right_translate(G, a, x), right_translate(G, a, y), t), M(x, y, t), tol)

    def right_invariance(x, y, a, t):
        return check_eq(M(right_translate(G, a, x), right_translate(G, a, y), t), M(x, y, t), tol)

    def commutative_like(x, y, a, t):
        shifted = left_translate(G, left_translate(G, a, x), G.gyr(a, x, G.ominus(y, a)))
        return check_eq(N(shifted, t), N(G.oplus(x, y), t), tol)

    def klee(x, y, a, b, t, s):
        lhs = M(G.oplus(x, y), G.oplus(a, b), t + s)
        return check_ge(lhs, tnorm_eval(star, M(x, a, t), M(y, b, s)), tol)

    count = 0
    for x, y, a, b in tuples(G, 4, n, rng, sampler):
        count += 1
        nx, na = G.neg(x), G.neg(a)
        witness = {"x": G.format(x), "y": G.format(y), "a": G.format(a), "b": G.format(b)}
        for t in times:
            one, dev_one = right_inequality(x, y, a, t)
            checks["I"].observe(one, dev_one, t=t, **witness)
            two_prime, dev = right_invariance(x, y, a, t)
            checks["II'"].observe(two_prime, dev, t=t, **witness)
            two, dev = commutative_like(x, y, a, t)
            checks["II"].observe(two, dev, t=t, **witness)

            # (II) at (-x, y, -a) gives (II)' at (x, y, a) and conversely
            if not two_prime:
                premise, _ = commutative_like(nx, y, na, t)
                audits["II=>II'"].observe(not premise, 0.0, t=t, **witness)
            if not two:
                premise, _ = right_invariance(nx, y, na, t)
                audits["II'=>II"].observe(not premise, 0.0, t=t, **witness)
            if not one:
                # (I)' on the ladder (x, a, y, a, t - h, h) bounds the right translate
                # from below by M(x, y, t - h) for every h
                ladder = True
                lhs = M(right_translate(G, a, x), right_translate(G, a, y), t)
                floor = None
                for k in range(1, LADDER_DEPTH + 1):
                    h = t / 2**k
                    holds, _ = klee(x, a, y, a, t - h, h)
                    ladder = ladder and holds
                    floor = M(x, y, t - h)
                consistent = not ladder or check_ge(lhs, floor, tol)[0]
                audits["I'=>I"].observe(consistent, 0.0, t=t, **witness)

        for t, s in pairs:
            holds, dev = klee(x, y, a, b, t, s)
            checks["I'"].observe(holds, dev, t=t, s=s, **witness)
            if not holds:
                # both (II)' and (I) at (x, a, b, t) force (I)' at (x, y, a, b, t, s)
                premise, _ = right_invariance(x, a, b, t)
                audits["II'=>I'"].observe(not premise, 0.0, t=t, s=s, **witness)
                premise, _ = right_inequality(x, a, b, t)
                audits["I=>I'"].observe(not premise, 0.0, t=t, s=s, **witness)

    conditions.samples = audit.samples = count
    return KleeReport(conditions, audit)


def ball_membership(M: FuzzyMetric, ball: Ball, y) -> bool:
    """y in B(center, eps, t), i.e. M(center, y, t) > 1 - eps."""
    return compare(M(ball.center, y, ball.t), 1 - ball.eps) > 0


def metric_radius(eps, t):
    """r with M_d(x, y, t) > 1 - eps exactly when d(x, y) < r."""
    if not 0 < eps < 1:
        raise DomainError(f"eps={eps} must lie in (0, 1)")
    positive_time(t)
    return t * eps / (1 - eps)


def homogeneity_map(G: Gyrogroup, x, y) -> Callable:
    """L_y o L_(-x): an isometry of every left-invariant fuzzy metric sending x to y."""
    nx = G.neg(x)
    return lambda z: G.oplus(y, G.oplus(nx, z))


def sample_in_ball(M: FuzzyMetric, ball: Ball, rng, attempts: int = BALL_ATTEMPTS):
    """A random point of ``ball`` or ``None``; proposals come from
    ``carrier.perturb`` and shrink until one lands inside."""
    G = M.carrier
    scale = metric_radius(Fraction(ball.eps) if G.exact else float(ball.eps), ball.t)
    for _ in range(attempts):
        candidate = G.perturb(rng, ball.center, scale)
        if ball_membership(M, ball, candidate):
            return candidate
        scale = scale / 2
    return None


@dataclass
class ContinuityWitness:
    eps0: object
    half_t: object
    sound: bool
    pairs: int = 0
    failures: int = 0
    inverse_failures: int = 0
    # pairs the ball sampler could not draw; they validate nothing
    gave_up: int = 0
    report: Optional[PropertyReport] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.inverse_failures == 0 and self.gave_up == 0


def continuity_witness(
    M: FuzzyMetric,
    x,
    y,
    eps,
    t,
    klee: Optional[KleeReport] = None,
    assume_klee: bool = False,
    strict: bool = False,
    pairs: Optional[int] = None,
    seed: Optional[int] = None,
) -> ContinuityWitness:
    """(eps0, t/2) with B(x, eps0, t/2) (+) B(y, eps0, t/2) inside B(x(+)y, eps, t),
    validated on sampled pairs, plus the inversion witness
    -B(x, eps, t) inside B(-x, eps, t).

    Soundness needs Klee's condition (I)'; pass a ``KleeReport`` in which it
    holds or set ``assume_klee``. With ``strict`` an unsound witness raises.
    """
    G = M.carrier
    pairs = settings.CONTAINMENT_PAIRS if pairs is None else pairs
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    sound = assume_klee or (klee is not None and klee.holds("I'"))
    if not sound and strict:
        raise UnsoundOperationError("Klee's condition (I)' is not verified for this metric")
    eps0 = tnorm_root(M.tnorm, eps)
    half_t = t / 2
    target = Ball(G.oplus(x, y), eps, t)
    around_x = Ball(x, eps0, half_t)
    around_y = Ball(y, eps0, half_t)
    inverse_target = Ball(G.neg(x), eps, t)
    around_x_wide = Ball(x, eps, t)

    report = PropertyReport(f"continuity:{M.name}:{G.name}", seed, pairs)
    root = report.law("root")
    root.observe(
        compare(tnorm_eval(M.tnorm, 1 - eps0, 1 - eps0), 1 - eps) > 0, 0.0, eps=eps, eps0=eps0
    )
    report.law("klee-precondition").observe(sound, 0.0, condition="I'")
    sampling = report.law("ball-sampling")
    containment = report.law("containment")
    inverse = report.law("inverse-containment")
    witness = ContinuityWitness(eps0, half_t, sound, pairs, report=report)

    for _ in range(pairs):
        a = sample_in_ball(M, around_x, rng)
        b = sample_in_ball(M, around_y, rng)
        sampling.observe(a is not None and b is not None, 0.0, ball="B(x) (+) B(y)")
        if a is None or b is None:
            witness.gave_up += 1
            continue
        inside = ball_membership(M, target, G.oplus(a, b))
        if not inside:
            witness.failures += 1
        containment.observe(inside, 0.0, a=G.format(a), b=G.format(b))

        z = sample_in_ball(M, around_x_wide, rng)
        sampling.observe(z is not None, 0.0, ball="B(x)")
        if z is None:
            witness.gave_up += 1
            continue
        inside = ball_membership(M, inverse_target, G.neg(z))
        if not inside:
            witness.inverse_failures += 1
        inverse.observe(inside, 0.0, y=G.format(z))
    if witness.gave_up:
        logger.warning(
            "ball sampler gave up %d times over %d pairs for %s", witness.gave_up, pairs, M.name
        )
    if not sound:
        logger.warning("continuity witness for %s built without a verified Klee condition", M.name)
    return witness


def automorphism_isometry_check(
    N: FuzzyGyronorm,
    alpha: Optional[Callable] = None,
    sampler: Optional[Sampler] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid: Optional[Sequence] = None,
    tolerance=None,
    name: Optional[str] = None,
) -> PropertyReport:
    """M_N(alpha x, alpha y, t) = M_N(x, y, t) wherever alpha is a homomorphism
    preserving N. Without ``alpha`` a gyroautomorphism gyr[u, v] is drawn
    for every sample."""
    G = N.base
    M = metric_from_fuzzy_gyronorm(N)
    n = resolve_samples(n)
    seed = resolve_seed(seed)
    rng = make_rng(seed)
    times = _times(G, t_grid)
    tol = _exact_tolerance(G, tolerance)
    label = name or ("gyr" if alpha is None else getattr(alpha, "__name__", "alpha"))
    report = PropertyReport(f"automorphism:{label}:{N.name}:{G.name}", seed, 0)
    homomorphism = report.law("precondition:homomorphism")
    preserves = report.law("precondition:norm-preservation")
    isometry = report.law("isometry")

    count = 0
    for x, y in tuples(G, 2, n, rng, sampler):
        count += 1
        if alpha is None:
            u, v = draw(G, rng, sampler), draw(G, rng, sampler)
            mapping = lambda z, u=u, v=v: G.gyr(u, v, z)  # noqa: E731
            extra = {"u": G.format(u), "v": G.format(v)}
        else:
            mapping, extra = alpha, {}
        witness = {"x": G.format(x), "y": G.format(y), **extra}
        ax, ay = mapping(x), mapping(y)
        image, product = mapping(G.oplus(x, y)), G.oplus(ax, ay)
        ok = G.eq(image, product)
        homomorphism.observe(ok, G.deviation(image, product), **witness)
        valid = ok
        for t in times:
            ok, deviation = check_eq(N(ax, t), N(x, t), tol)
            preserves.observe(ok, deviation, t=t, **witness)
            valid = valid and ok
        if not valid:
            continue
        for t in times:
            ok, deviation = check_eq(M(ax, ay, t), M(x, y, t), tol)
            isometry.observe(ok, deviation, t=t, **witness)
    report.samples = count
    return report
