import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from resgaps.errors import ParseError
from resgaps.lattice.models import Root, RootA, RootD, RootE


class KodairaKind(str, Enum):
    I = "I"
    I_STAR = "I*"
    II = "II"
    III = "III"
    IV = "IV"
    II_STAR = "II*"
    III_STAR = "III*"
    IV_STAR = "IV*"


_SYMBOL = re.compile(r"^(?:(?P<roman>IV|III|II)(?P<rstar>\*)?|I(?P<n>\d+)(?P<star>\*)?)$")

# Order used to list T: E before D before A, larger rank first
_FAMILY_ORDER = {"E": 0, "D": 1, "A": 2}


def root_sort_key(root: Root):
    return (_FAMILY_ORDER[root.family], -root.n)


@dataclass(frozen=True)
class KodairaFiber:
    kind: KodairaKind
    n: int = 0

    @classmethod
    def parse(cls, symbol: str) -> "KodairaFiber":
        match = _SYMBOL.match(symbol.strip())
        if not match:
            raise ParseError(f"unknown Kodaira symbol {symbol!r}")
        if match.group("roman"):
            kind = KodairaKind(match.group("roman") + (match.group("rstar") or ""))
            return cls(kind)
        n = int(match.group("n"))
        if match.group("star"):
            return cls(KodairaKind.I_STAR, n)
        if n < 1:
            raise ParseError(f"I{n} is not a singular fiber")
        return cls(KodairaKind.I, n)

    @property
    def symbol(self) -> str:
        if self.kind is KodairaKind.I:
            return f"I{self.n}"
        if self.kind is KodairaKind.I_STAR:
            return f"I{self.n}*"
        return self.kind.value

    @property
    def lattice(self) -> Optional[Root]:
        """The root lattice T_v spanned by the non-identity components."""
        if self.kind is KodairaKind.I:
            return RootA(self.n - 1) if self.n >= 2 else None
        return {
            KodairaKind.I_STAR: RootD(self.n + 4),
            KodairaKind.II: None,
            KodairaKind.III: RootA(1),
            KodairaKind.IV: RootA(2),
            KodairaKind.II_STAR: RootE(8),
            KodairaKind.III_STAR: RootE(7),
            KodairaKind.IV_STAR: RootE(6),
        }[self.kind]

    @property
    def reducible(self) -> bool:
        return self.lattice is not None


@dataclass(frozen=True)
class FiberConfig:
    fibers: Tuple[KodairaFiber, ...]

    @classmethod
    def parse(cls, text: str) -> "FiberConfig":
        symbols = [s for s in text.split(",") if s.strip()]
        if not symbols:
            raise ParseError("empty fiber configuration")
        return cls(tuple(KodairaFiber.parse(s) for s in symbols))

    @property
    def t_lattices(self) -> Tuple[Root, ...]:
        roots = [fiber.lattice for fiber in self.fibers if fiber.reducible]
        return tuple(sorted(roots, key=root_sort_key))

    def __str__(self) -> str:
        return ",".join(fiber.symbol for fiber in self.fibers)

