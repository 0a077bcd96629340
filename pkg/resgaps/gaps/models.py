from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple


class Status(str, Enum):
    REALIZED = "realized"
    GAP = "gap"
    UNKNOWN = "unknown"


class Route(str, Enum):
    """How a witness was found; the order is the order routes are tried."""

    NARROW = "narrow"           # P in E(K)^0 with h = 2 + 2k, paired with O
    FRAME = "frame"             # same, built from an A1^4 or A4 root frame
    TORSION = "torsion"         # P in E(K)^0 with h = 2k, paired with a torsion section
    SQUARE = "square"           # n·P_mu outside E(K)^0 with h in the window
    INTERVAL = "interval"       # any P outside E(K)^0 with h in the window
    OVERRIDE = "override"       # section with component data shipped in the catalog
    DISJOINT = "disjoint"       # O and a torsion section, k = 0


@dataclass(frozen=True)
class WitnessTrace:
    route: Route
    k: int
    coords: Tuple[int, ...]                     # P in the free basis of E(K)
    height: Fraction                            # h(P)
    partner: str = "O"                          # "O", "Q" (torsion) or "O|Q" when the interval argument decides
    p_dot_o: Optional[int] = None               # when fixed by the route
    contributions: Tuple[Fraction, ...] = ()    # per T summand, when known
    torsion: bool = False                       # P carries a torsion summand
    frame: Optional[str] = None                 # "A1^4" or "A4" for the frame route


@dataclass(frozen=True)
class SearchWindow:
    label: str                  # "narrow" or "outside-narrow"
    lower: Fraction
    upper: Fraction
    upper_open: bool = False
    found: int = 0


@dataclass(frozen=True)
class GapCertificate:
    windows: Tuple[SearchWindow, ...]
    reason: str


@dataclass(frozen=True)
class NecessaryResult:
    holds: bool
    branch: Optional[str]                       # "narrow" | "outside-narrow" | None
    coords: Optional[Tuple[int, ...]]
    windows: Tuple[SearchWindow, ...]


@dataclass(frozen=True)
class GapVerdict:
    case_id: int
    k: int
    status: Status
    witness: Optional[WitnessTrace] = None
    certificate: Optional[GapCertificate] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class DensityReport:
    case_id: int
    n: int
    method: str
    gaps: Tuple[int, ...]
    unknown: Tuple[int, ...]

    @property
    def gap_count(self) -> int:
        return len(self.gaps)

    @property
    def unknown_count(self) -> int:
        return len(self.unknown)

    @property
    def density(self) -> Fraction:
        return Fraction(self.gap_count, self.n) if self.n else Fraction(0)


@dataclass(frozen=True)
class OneGapRow:
    case_id: int
    has_1_gap: Optional[bool]                   # None when k = 1 stays undecided
    method: str
