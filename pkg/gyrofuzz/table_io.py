"""Finite Cayley tables: parsing, table-backed gyrogroups and exhaustive proofs.

File format::

    # comment
    gyrotable 2
    e a
    e a
    a e

Line 1 (after comments) is ``gyrotable <n>``, line 2 the element names and
then ``n`` rows, row r column c naming ``element_r (+) element_c``.
Gyration tables are always derived from the operation, never read.
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .exceptions import ConfigurationError, DomainError, TableParseError
from .gyro_core import Gyrogroup
from .reports import PropertyReport

logger = logging.getLogger(__name__)

HEADER = "gyrotable"
NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")
TOKEN_RE = re.compile(r"\S+")

FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


@dataclass(frozen=True)
class CayleyTable:
    names: Tuple[str, ...]
    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise DomainError("a Cayley table needs at least one element")
        if len(set(self.names)) != n:
            raise DomainError("element names must be distinct")
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise DomainError("the table body must be square")
        for row in self.cells:
            for cell in row:
                if not 0 <= cell < n:
                    raise DomainError(f"cell index {cell} outside [0, {n})")

    @property
    def order(self) -> int:
        return len(self.names)

    def op(self, a: int, b: int) -> int:
        return self.cells[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"unknown element {name!r}") from None

    def swapped(self, first: Tuple[int, int], second: Tuple[int, int]) -> "CayleyTable":
        """Copy with two cells exchanged; used to build corrupted tables."""
        rows = [list(row) for row in self.cells]
        (r1, c1), (r2, c2) = first, second
        rows[r1][c1], rows[r2][c2] = rows[r2][c2], rows[r1][c1]
        return CayleyTable(self.names, tuple(tuple(row) for row in rows))


class Verdict(str, Enum):
    GROUP = "group"
    GYROGROUP = "gyrogroup-nongroup"
    NOT_GYROGROUP = "not-gyrogroup"


@dataclass
class Diagnosis:
    verdict: Verdict
    failing_axiom: Optional[str] = None
    witness: Optional[Tuple[str, ...]] = None
    passed_stages: List[str] = field(default_factory=list)

    def to_report(self, suite: str = "table") -> PropertyReport:
        report = PropertyReport(suite, seed=0, samples=0)
        for stage in self.passed_stages:
            report.law(stage)
        if self.failing_axiom is not None:
            witness = {f"w{k}": name for k, name in enumerate(self.witness or ())}
            report.law(self.failing_axiom).observe(False, 1.0, **witness)
        return report


def _tokens(line: str):
    return [(match.group(), match.start() + 1) for match in TOKEN_RE.finditer(line)]


def parse_table(text: str) -> CayleyTable:
    """Parse the table format; errors carry the 1-based line and column."""
    lines = [
        (number, raw)
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    last_line = len(text.splitlines())
    if not lines:
        raise TableParseError("empty table, expected 'gyrotable <n>'", max(last_line, 1))

    number, raw = lines[0]
    header = _tokens(raw)
    if len(header) != 2 or header[0][0] != HEADER or not header[1][0].isdigit():
        raise TableParseError(
            f"malformed header {raw.strip()!r}, expected 'gyrotable <n>'", number
        )
    n = int(header[1][0])
    if n < 1:
        raise TableParseError("order must be positive", number, header[1][1])

    if len(lines) < 2:
        raise TableParseError("missing element names", last_line + 1)
    number, raw = lines[1]
    names = []
    for name, column in _tokens(raw):
        if not NAME_RE.match(name):
            raise TableParseError(f"invalid element name {name!r}", number, column)
        if name in names:
            raise TableParseError(f"duplicate element name {name!r}", number, column)
        names.append(name)
    if len(names) != n:
        raise TableParseError(f"expected {n} element names, found {len(names)}", number)
    index = {name: k for k, name in enumerate(names)}

    body = lines[2:]
    rows = []
    for row_number in range(n):
        if row_number >= len(body):
            raise TableParseError(f"missing row {row_number + 1} of {n}", last_line + 1)
        number, raw = body[row_number]
        cells = _tokens(raw)
        if len(cells) != n:
            column = cells[n][1] if len(cells) > n else len(raw) + 1
            raise TableParseError(
                f"row {row_number + 1} has {len(cells)} cells, expected {n}", number, column
            )
        row = []
        for name, column in cells:
            if name not in index:
                raise TableParseError(f"unknown element {name!r}", number, column)
            row.append(index[name])
        rows.append(tuple(row))

    if len(body) > n:
        number, raw = body[n]
        if raw.strip().lower().startswith("gyr"):
            raise TableParseError(
                "gyration tables are derived from the operation and cannot be supplied", number
            )
        raise TableParseError("unexpected content after the table body", number)

    return CayleyTable(tuple(names), tuple(rows))


def load_table(path) -> CayleyTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read table {path}: {exc}") from exc
    return parse_table(text)


def serialize_table(table: CayleyTable) -> str:
    lines = [f"{HEADER} {table.order}", " ".join(table.names)]
    for row in table.cells:
        lines.append(" ".join(table.names[cell] for cell in row))
    return "\n".join(lines) + "\n"


def fixture_path(name: str) -> Path:
    path = FIXTURES_DIR / (name if name.endswith(".gt") else f"{name}.gt")
    if not path.exists():
        raise ConfigurationError(f"no bundled table named {name!r}")
    return path


def find_identity(table: CayleyTable) -> Optional[int]:
    for e in range(table.order):
        if all(table.op(e, x) == x for x in range(table.order)):
            return e
    return None


def left_inverses(table: CayleyTable, e: int) -> Dict[int, int]:
    """Smallest y with y (+) x = e, for every x that has one."""
    inverses = {}
    for x in range(table.order):
        for y in range(table.order):
            if table.op(y, x) == e:
                inverses[x] = y
                break
    return inverses


class TableGyrogroup(Gyrogroup):
    """A finite table read as a gyrogroup; gyr is derived by the gyrator identity."""

    def __init__(self, table: CayleyTable, name: Optional[str] = None):
        self.table = table
        self.name = name or f"table{table.order}"
        self.identity = find_identity(table)
        self._inverses = {} if self.identity is None else left_inverses(table, self.identity)
        self._gyrations: Dict[Tuple[int, int], Tuple[int, ...]] = {}

    def oplus(self, a, b):
        return self.table.op(a, b)

    def neg(self, a):
        try:
            return self._inverses[a]
        except KeyError:
            raise DomainError(f"{self.format(a)} has no inverse") from None

    def gyration(self, a: int, b: int) -> Tuple[int, ...]:
        """gyr[a,b] as the tuple of images of every element."""
        key = (a, b)
        cached = self._gyrations.get(key)
        if cached is None:
            ab = self.neg(self.oplus(a, b))
            cached = tuple(
                self.oplus(ab, self.oplus(a, self.oplus(b, c))) for c in range(self.table.order)
            )
            self._gyrations[key] = cached
        return cached

    def gyr(self, a, b, c):
        return self.gyration(a, b)[c]

    def elements(self):
        return tuple(range(self.table.order))

    def parse(self, literal: str):
        return self.table.index(literal.strip())

    def format(self, x) -> str:
        return self.table.names[x]

    def validate(self, x):
        if not isinstance(x, int) or not 0 <= x < self.table.order:
            raise DomainError(f"{x!r} is not an element of {self.name}")
        return x


def prove_gyrogroup(table: CayleyTable) -> Diagnosis:
    """Exhaustive decision: identity, inverses, gyr bijective, gyr
    automorphism, G3 over all triples and G4 over all pairs. Witnesses are
    the first failing tuple in row-major order."""
    n = table.order
    names = table.names
    stages: List[str] = []
    elements = range(n)
    logger.info("proving gyrogroup axioms for a table of order %d", n)

    def fail(axiom, *witness):
        logger.debug("table fails %s at %s", axiom, witness)
        return Diagnosis(
            Verdict.NOT_GYROGROUP, axiom, tuple(names[w] for w in witness), list(stages)
        )

    e = find_identity(table)
    if e is None:
        # the left identity candidate 0 fails first
        x = next(x for x in elements if table.op(0, x) != x)
        return fail("G1", 0, x)
    for x in elements:
        if table.op(x, e) != x:
            return fail("right-identity", x)
    stages.append("G1")

    inverses = left_inverses(table, e)
    for x in elements:
        if x not in inverses:
            return fail("G2", x)
    stages.append("G2")

    G = TableGyrogroup(table)
    for a in elements:
        for b in elements:
            image = G.gyration(a, b)
            if len(set(image)) != n:
                return fail("gyr-bijective", a, b)
    stages.append("gyr-bijective")

    for a in elements:
        for b in elements:
            gyr_ab = G.gyration(a, b)
            for c in elements:
                for d in elements:
                    if gyr_ab[table.op(c, d)] != table.op(gyr_ab[c], gyr_ab[d]):
                        return fail("gyr-automorphism", a, b, c, d)
    stages.append("gyr-automorphism")

    for x in elements:
        for y in elements:
            for z in elements:
                if table.op(x, table.op(y, z)) != table.op(table.op(x, y), G.gyr(x, y, z)):
                    return fail("G3", x, y, z)
    stages.append("G3")

    for x in elements:
        for y in elements:
            if G.gyration(table.op(x, y), y) != G.gyration(x, y):
                return fail("G4", x, y)
    stages.append("G4")

    trivial = all(G.gyration(a, b) == tuple(elements) for a in elements for b in elements)
    return Diagnosis(Verdict.GROUP if trivial else Verdict.GYROGROUP, passed_stages=stages)
