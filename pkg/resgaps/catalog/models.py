import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Tuple

from resgaps.arith.models import SymMatrix
from resgaps.arith.utils import inverse
from resgaps.errors import ParseError, RankZero
from resgaps.fibers.models import FiberConfig, root_sort_key
from resgaps.fibers.utils import Bounds, bounds
from resgaps.lattice.models import LatticeSpec, Root
from resgaps.lattice.utils import realize

PROVENANCE_TAGS = ("paper-table", "paper-proof", "external-OS-table")

_CYCLIC = re.compile(r"^Z/(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Torsion:
    """Torsion subgroup as a list of cyclic factor orders; () is trivial."""

    orders: Tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Torsion":
        text = text.replace(" ", "")
        if text in ("trivial", "0", "1"):
            return cls()
        orders = []
        for factor in text.split("x"):
            match = _CYCLIC.match(factor)
            if not match or int(match.group(1)) < 2:
                raise ParseError(f"bad torsion descriptor {text!r}")
            orders.extend([int(match.group(1))] * int(match.group(2) or 1))
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    def __str__(self) -> str:
        if not self.orders:
            return "trivial"
        if len(set(self.orders)) == 1 and len(self.orders) > 1:
            return f"Z/{self.orders[0]}^{len(self.orders)}"
        return "xZ/".join(["Z/" + str(self.orders[0])] + [str(n) for n in self.orders[1:]])


@dataclass(frozen=True)
class SectionWitness:
    """A section given by free coordinates, an optional torsion summand and
    the component met on each reducible fiber (in T order)."""

    coords: Tuple[int, ...]
    torsion: bool
    components: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "SectionWitness":
        try:
            coords, flag, components = text.split(";")
            if flag not in ("tor", "-"):
                raise ValueError(f"torsion flag must be 'tor' or '-', got {flag!r}")
            return cls(
                tuple(int(x) for x in coords.split(",")),
                flag == "tor",
                tuple(int(x) for x in components.split(",")) if components else (),
            )
        except ValueError as e:
            raise ParseError(f"bad witness {text!r}: {e}")

    def __str__(self) -> str:
        return ";".join([
            ",".join(str(x) for x in self.coords),
            "tor" if self.torsion else "-",
            ",".join(str(i) for i in self.components),
        ])


@dataclass(frozen=True)
class SurfaceCase:
    id: int
    t: Tuple[Root, ...]                             # fiber root lattices as written
    mw_free: Optional[LatticeSpec]                  # None for rank 0
    torsion: Torsion
    mu: Optional[Fraction] = None                   # stated minimal norm
    stated_bounds: Tuple[Optional[Fraction], ...] = (None, None, None)
    provenance: Tuple[Tuple[str, str], ...] = (("*", "external-OS-table"),)
    fibers: Optional[FiberConfig] = None
    witnesses: Tuple[SectionWitness, ...] = ()
    note: Optional[str] = None

    @cached_property
    def free_gram(self) -> Optional[SymMatrix]:
        return realize(self.mw_free) if self.mw_free is not None else None

    @cached_property
    def narrow_gram(self) -> SymMatrix:
        """Gram matrix of E(K)^0, the dual of the free part."""
        if self.free_gram is None:
            raise RankZero(f"case {self.id} has Mordell-Weil rank 0")
        return inverse(self.free_gram)

    @property
    def rank(self) -> int:
        return self.free_gram.dim if self.free_gram is not None else 0

    @cached_property
    def bounds(self) -> Bounds:
        return bounds(self.t)

    @property
    def t_multiset(self) -> Tuple[Root, ...]:
        return tuple(sorted(self.t, key=root_sort_key))

    def source_of(self, field_name: str) -> str:
        tags = dict(self.provenance)
        return tags.get(field_name, tags.get("*", "external-OS-table"))


@dataclass(frozen=True)
class Catalog:
    cases: Mapping[int, SurfaceCase]
    version: int = 1
    notes: Tuple[str, ...] = field(default=())

    def __iter__(self):
        return iter(self.cases[key] for key in sorted(self.cases))

    def __len__(self) -> int:
        return len(self.cases)
