import logging
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Tuple, Union

from resgaps.errors import InvalidComponent, NoPositiveContribution, UndefinedPair
from resgaps.fibers.models import FiberConfig
from resgaps.lattice.models import Root, RootA, RootD, RootE

logger = logging.getLogger(__name__)

E6, E7, E8 = RootE(6), RootE(7), RootE(8)


class Bounds(NamedTuple):
    c_max: Fraction
    c_min: Fraction
    delta: Fraction


def component_count(t: Root) -> int:
    """Number of admissible component indices; index 0 is the identity component."""
    if isinstance(t, RootA):
        return t.n + 1
    if isinstance(t, RootD):
        return t.n
    if isinstance(t, RootE):
        return {6: 3, 7: 2, 8: 1}[t.n]
    raise InvalidComponent(f"not an ADE label: {t!r}")


def _check(t: Root, i: int) -> None:
    if not 0 <= i < component_count(t):
        raise InvalidComponent(f"component {i} is not valid for {t.label}")


def contr_single(t: Root, i: int) -> Fraction:
    """Local height correction of a section meeting component i of a fiber with lattice t."""
    _check(t, i)
    if i == 0:
        return Fraction(0)
    if isinstance(t, RootA):
        n = t.n + 1
        return Fraction(i * (n - i), n)
    if isinstance(t, RootD):
        return Fraction(1) if i == 1 else 1 + Fraction(t.n - 4, 4)
    return {E6: Fraction(4, 3), E7: Fraction(3, 2)}[t]


def contr_pair(t: Root, i: int, j: int) -> Fraction:
    """Local correction to the pairing of two sections meeting components i and j."""
    i, j = min(i, j), max(i, j)
    if t in (RootA(1), E7) and 0 < i < j:
        raise UndefinedPair(f"pair contribution is undefined for {t.label}")
    _check(t, i)
    _check(t, j)
    if i == 0:
        return Fraction(0)
    if i == j:
        return contr_single(t, i)
    if isinstance(t, RootA):
        n = t.n + 1
        return Fraction(i * (n - j), n)
    if isinstance(t, RootD):
        return Fraction(1, 2) if i == 1 else Fraction(1, 2) + Fraction(t.n - 4, 4)
    return Fraction(2, 3)


def extremes(t: Root) -> Tuple[Fraction, Fraction]:
    """(largest, smallest positive) single contribution of a fiber."""
    if t == E8:
        raise NoPositiveContribution("E8 fibers contribute nothing")
    if isinstance(t, RootA):
        n = t.n + 1
        half = n // 2
        return Fraction(half * (n - half), n), Fraction(n - 1, n)
    if isinstance(t, RootD):
        return 1 + Fraction(t.n - 4, 4), Fraction(1)
    if t in (E6, E7):
        value = contr_single(t, 1)
        return value, value
    raise InvalidComponent(f"not an ADE label: {t!r}")


def bounds(config: Union[FiberConfig, Iterable[Root]]) -> Bounds:
    """c_max, c_min and their difference; (0, 0, 0) when no fiber contributes."""
    roots = config.t_lattices if isinstance(config, FiberConfig) else tuple(config)
    active = [extremes(t) for t in roots if t != E8]
    if not active:
        return Bounds(Fraction(0), Fraction(0), Fraction(0))
    c_max = sum((top for top, _ in active), Fraction(0))
    c_min = min(bottom for _, bottom in active)
    return Bounds(c_max, c_min, c_max - c_min)


def height(p_dot_o: int, contributions: Sequence[Fraction]) -> Fraction:
    return 2 + 2 * p_dot_o - sum(contributions, Fraction(0))


def pairing(p_dot_o: int, q_dot_o: int, p_dot_q: int, pair_contributions: Sequence[Fraction]) -> Fraction:
    return 1 + p_dot_o + q_dot_o - p_dot_q - sum(pair_contributions, Fraction(0))
