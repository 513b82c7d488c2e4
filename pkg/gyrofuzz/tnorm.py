"""Continuous t-norms.

Built-ins are ``MIN``, ``PRODUCT`` and ``LUKASIEWICZ``; a tabulated t-norm
is an (r+1)x(r+1) grid of values on {k/r} completed by bilinear
interpolation. Arithmetic is exact on rationals unless the instance is
``floating``.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .conf import settings
from .exceptions import ConfigurationError, DomainError
from .reals import compare, exact, floor, is_symbolic, maximum, minimum, to_fraction
from .reports import PropertyReport

logger = logging.getLogger(__name__)

TABLE_HEADER = "tnorm"


class TNormKind(str, Enum):
    MIN = "min"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"
    TABULATED = "tabulated"


def unit_value(value):
    """Validate a value of the unit interval; exact irrationals pass through."""
    if is_symbolic(value):
        if compare(value, 0) < 0 or compare(value, 1) > 0:
            raise DomainError(f"{value} lies outside [0, 1]")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
        raise DomainError(f"not a number: {value!r}")
    if isinstance(value, float) and math.isnan(value):
        raise DomainError("NaN is not a unit value")
    if not 0 <= value <= 1:
        raise DomainError(f"{value} lies outside [0, 1]")
    return value


@dataclass(frozen=True)
class TNorm:
    kind: TNormKind
    table: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    floating: bool = False

    def __call__(self, a, b):
        return tnorm_eval(self, a, b)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def resolution(self) -> Optional[int]:
        return None if self.table is None else len(self.table) - 1

    def as_floating(self) -> "TNorm":
        return TNorm(self.kind, self.table, floating=True)

    def __str__(self):
        return self.name


MIN = TNorm(TNormKind.MIN)
PRODUCT = TNorm(TNormKind.PRODUCT)
LUKASIEWICZ = TNorm(TNormKind.LUKASIEWICZ)

BUILTINS = {t.name: t for t in (MIN, PRODUCT, LUKASIEWICZ)}


def by_name(name: str) -> TNorm:
    """Resolve ``min``/``product``/``lukasiewicz`` or ``file:<path>``."""
    if name.startswith("file:"):
        return load_tnorm(name[len("file:"):])
    try:
        return BUILTINS[name.lower()]
    except KeyError:
        raise ConfigurationError(
            f"unknown t-norm {name!r}; expected one of {', '.join(BUILTINS)} or file:<path>"
        ) from None


def tabulated(rows, floating: bool = False) -> TNorm:
    table = tuple(tuple(to_fraction(v) for v in row) for row in rows)
    if len(table) < 2 or any(len(row) != len(table) for row in table):
        raise ConfigurationError("a tabulated t-norm needs a square table of side r+1 >= 2")
    for row in table:
        for value in row:
            unit_value(value)
    return TNorm(TNormKind.TABULATED, table, floating)


def _interpolate(table, a, b):
    r = len(table) - 1
    i = min(floor(a * r), r - 1)
    j = min(floor(b * r), r - 1)
    fa = a * r - i
    fb = b * r - j
    return (
        (1 - fa) * (1 - fb) * table[i][j]
        + fa * (1 - fb) * table[i + 1][j]
        + (1 - fa) * fb * table[i][j + 1]
        + fa * fb * table[i + 1][j + 1]
    )


def tnorm_eval(t: TNorm, a, b):
    unit_value(a)
    unit_value(b)
    return exact(_evaluate(t, a, b))


def _evaluate(t: TNorm, a, b):
    if t.floating:
        a, b = float(a), float(b)
    if t.kind is TNormKind.MIN:
        return minimum(a, b)
    if t.kind is TNormKind.PRODUCT:
        return a * b
    if t.kind is TNormKind.LUKASIEWICZ:
        return maximum(a + b - 1, 0)
    if t.table is None:
        raise ConfigurationError("tabulated t-norm has no table")
    if t.floating:
        return float(_interpolate(t.table, to_fraction(a), to_fraction(b)))
    return _interpolate(t.table, a, b)


def _grid(t: TNorm, resolution: int) -> list:
    if t.floating:
        return [k / resolution for k in range(resolution + 1)]
    return [Fraction(k, resolution) for k in range(resolution + 1)]


def oscillation(t: TNorm, resolution: int) -> float:
    """Largest difference between grid-neighbour values at the given resolution."""
    grid = _grid(t, resolution)
    values = np.array([[float(tnorm_eval(t, a, b)) for b in grid] for a in grid])
    return float(max(np.abs(np.diff(values, axis=0)).max(), np.abs(np.diff(values, axis=1)).max()))


def tnorm_check_axioms(t: TNorm, resolution: int = 64, tolerance=None) -> PropertyReport:
    """Grid check of associativity, commutativity, boundary, monotonicity,
    the bound a*b <= min(a, b) and continuity by oscillation shrinkage."""
    if resolution < 2:
        raise DomainError("resolution must be at least 2")
    if tolerance is None:
        tolerance = 1e-15 if t.floating else 0
    logger.info("t-norm axioms for %s at resolution %d", t.name, resolution)
    grid = _grid(t, resolution)
    report = PropertyReport(f"tnorm:{t.name}", seed=0, samples=(resolution + 1) ** 3)
    table = {(i, j): tnorm_eval(t, a, b) for i, a in enumerate(grid) for j, b in enumerate(grid)}

    commutativity = report.law("commutativity")
    boundary = report.law("boundary")
    monotonicity = report.law("monotonicity")
    bound = report.law("bounded-by-min")
    for i, a in enumerate(grid):
        boundary.observe(
            abs(table[i, resolution] - a) <= tolerance, table[i, resolution] - a, a=a
        )
        for j, b in enumerate(grid):
            value = table[i, j]
            commutativity.observe(
                abs(value - table[j, i]) <= tolerance, value - table[j, i], a=a, b=b
            )
            bound.observe(value <= min(a, b) + tolerance, max(0, value - min(a, b)), a=a, b=b)
            if i < resolution:
                step = table[i + 1, j] - value
                monotonicity.observe(
                    step >= -tolerance, min(0, step), a=a, b=b, a_next=grid[i + 1]
                )
            if j < resolution:
                step = table[i, j + 1] - value
                monotonicity.observe(
                    step >= -tolerance, min(0, step), a=a, b=b, b_next=grid[j + 1]
                )

    associativity = report.law("associativity")
    for a in grid:
        for b in grid:
            ab = tnorm_eval(t, a, b)
            for c in grid:
                lhs = tnorm_eval(t, ab, c)
                rhs = tnorm_eval(t, a, tnorm_eval(t, b, c))
                associativity.observe(abs(lhs - rhs) <= tolerance, lhs - rhs, a=a, b=b, c=c)

    coarse = oscillation(t, resolution)
    fine = oscillation(t, 2 * resolution)
    report.law("continuity").observe(
        fine < coarse or coarse == 0,
        max(0.0, fine - coarse),
        oscillation=coarse,
        refined_oscillation=fine,
    )
    return report


def _admissible(t: TNorm, eps0, target) -> bool:
    return tnorm_eval(t, 1 - eps0, 1 - eps0) > 1 - target


def tnorm_root(t: TNorm, target, tol=None):
    """eps0 in (0, 1) with (1-eps0)*(1-eps0) > 1-target, within ``tol`` of the
    supremum of such eps0; bisection relies on monotonicity."""
    tol = settings.ROOT_TOLERANCE if tol is None else tol
    target = to_fraction(target) if not t.floating else float(target)
    if not 0 < target < 1:
        raise DomainError(f"target {target} must lie in (0, 1)")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    lo, hi = (0.0, 1.0) if t.floating else (Fraction(0), Fraction(1))
    while hi - lo > tol or lo == 0:
        mid = (lo + hi) / 2
        if _admissible(t, mid, target):
            lo = mid
        else:
            hi = mid
    return lo


def parse_tnorm(text: str, floating: bool = False) -> TNorm:
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise ConfigurationError("empty t-norm table")
    header = lines[0].split()
    if len(header) != 2 or header[0] != TABLE_HEADER or not header[1].isdigit():
        raise ConfigurationError(f"malformed t-norm header {lines[0]!r}; expected 'tnorm <r>'")
    r = int(header[1])
    body = lines[1:]
    if len(body) != r + 1:
        raise ConfigurationError(f"expected {r + 1} table rows, found {len(body)}")
    rows = []
    for number, line in enumerate(body, start=2):
        cells = line.split()
        if len(cells) != r + 1:
            raise ConfigurationError(f"row {number}: expected {r + 1} values, found {len(cells)}")
        try:
            rows.append([to_fraction(cell) for cell in cells])
        except DomainError as exc:
            raise ConfigurationError(f"row {number}: {exc}") from exc
    return tabulated(rows, floating=floating)


def load_tnorm(path, floating: bool = False) -> TNorm:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read t-norm table {path}: {exc}") from exc
    return parse_tnorm(text, floating=floating)
