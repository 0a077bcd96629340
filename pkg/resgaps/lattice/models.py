from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from resgaps.arith.models import SymMatrix, to_rational


@dataclass(frozen=True)
class RootA:
    n: int

    @property
    def family(self) -> str:
        return "A"

    @property
    def label(self) -> str:
        return f"A{self.n}"


@dataclass(frozen=True)
class RootD:
    n: int

    @property
    def family(self) -> str:
        return "D"

    @property
    def label(self) -> str:
        return f"D{self.n}"


@dataclass(frozen=True)
class RootE:
    n: int

    @property
    def family(self) -> str:
        return "E"

    @property
    def label(self) -> str:
        return f"E{self.n}"


@dataclass(frozen=True)
class ScaledUnit:
    """The rank-1 lattice ⟨q⟩."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", to_rational(self.q))


@dataclass(frozen=True)
class ExplicitGram:
    gram: SymMatrix


@dataclass(frozen=True)
class DirectSum:
    parts: Tuple["LatticeSpec", ...]


@dataclass(frozen=True)
class Dual:
    child: "LatticeSpec"


Root = Union[RootA, RootD, RootE]
LatticeSpec = Union[RootA, RootD, RootE, ScaledUnit, ExplicitGram, DirectSum, Dual]


@dataclass(frozen=True)
class LatticeVector:
    coords: Tuple[int, ...]     # coordinates in the generator basis of the owning Gram
    norm: Fraction              # coordsᵀ·G·coords

    def sort_key(self):
        return (self.norm, self.coords)
