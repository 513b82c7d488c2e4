"""Named instances: a selector string resolves to a gyrogroup together with
the gyronorm and metric used by the command-line suites.

Selectors::

    mobius-exact | mobius-float
    group:zN | group:q-add | group:r-add
    table:<path or bundled name>
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Optional

from .exceptions import ConfigurationError
from .fuzzy_metric import Metric, absolute_metric, gyrodistance
from .gyro_core import Gyrogroup, MobiusGyrogroup, cyclic_group, rational_additive, real_additive
from .norms import Gyronorm, absolute_gyronorm, discrete_gyronorm, mobius_abs_gyronorm
from .table_io import CayleyTable, TableGyrogroup, fixture_path, load_table

logger = logging.getLogger(__name__)


@dataclass
class Instance:
    selector: str
    group: Gyrogroup
    gyronorm: Optional[Gyronorm] = None
    metric: Optional[Metric] = None
    table: Optional[CayleyTable] = None

    @property
    def is_mobius(self) -> bool:
        return isinstance(self.group, MobiusGyrogroup)


Factory = Callable[[str, Optional[float]], Instance]

_registry: Dict[str, Factory] = {}


def register_instance(kind: str):
    """Register a factory for selectors ``kind`` or ``kind:<argument>``."""

    def decorator(factory: Factory) -> Factory:
        _registry[kind] = factory
        return factory

    return decorator


def registered_kinds():
    return tuple(_registry)


def resolve_instance(selector: str, tolerance: Optional[float] = None) -> Instance:
    kind, _, argument = selector.partition(":")
    try:
        factory = _registry[kind]
    except KeyError:
        raise ConfigurationError(
            f"unknown instance {selector!r}; expected one of {', '.join(_registry)}"
        ) from None
    instance = factory(argument, tolerance)
    logger.info("resolved instance %s to %s", selector, instance.group.name)
    return instance


def _mobius(selector: str, floating: bool, tolerance: Optional[float]) -> Instance:
    G = MobiusGyrogroup(floating=floating, tolerance=tolerance)
    nrm = mobius_abs_gyronorm(G)
    return Instance(selector, G, nrm, gyrodistance(nrm))


@register_instance("mobius-exact")
def mobius_exact(argument: str, tolerance: Optional[float] = None) -> Instance:
    if argument:
        raise ConfigurationError("mobius-exact takes no argument")
    return _mobius("mobius-exact", False, tolerance)


@register_instance("mobius-float")
def mobius_float(argument: str, tolerance: Optional[float] = None) -> Instance:
    if argument:
        raise ConfigurationError("mobius-float takes no argument")
    return _mobius("mobius-float", True, tolerance)


@register_instance("group")
def group(argument: str, tolerance: Optional[float] = None) -> Instance:
    selector = f"group:{argument}"
    if argument == "q-add":
        G = rational_additive()
    elif argument == "r-add":
        G = real_additive(tolerance)
    elif argument.startswith("z") and argument[1:].isdigit():
        G = cyclic_group(int(argument[1:]))
        nrm = discrete_gyronorm(G)
        return Instance(selector, G, nrm, gyrodistance(nrm))
    else:
        raise ConfigurationError(f"unknown group {argument!r}; expected zN, q-add or r-add")
    return Instance(selector, G, absolute_gyronorm(G), absolute_metric(G))


def table_source(argument: str) -> Path:
    """A path as given, else the bundled table of the same name."""
    if not argument:
        raise ConfigurationError("table: needs a path")
    path = Path(argument)
    if path.is_file():
        return path
    return fixture_path(path.name)


@register_instance("table")
def table(argument: str, tolerance: Optional[float] = None) -> Instance:
    source = table_source(argument)
    cayley = load_table(source)
    G = TableGyrogroup(cayley, name=source.stem)
    if G.identity is None:
        return Instance(f"table:{argument}", G, table=cayley)
    nrm = discrete_gyronorm(G)
    return Instance(f"table:{argument}", G, nrm, gyrodistance(nrm), cayley)
