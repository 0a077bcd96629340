import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from resgaps.errors import DimensionMismatch, MalformedSpec

_RATIONAL = re.compile(r"^\s*[-+]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse "p", "p/q" or "-p/q" into an exact Fraction (no decimals)."""
    if not _RATIONAL.match(text):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text.replace(" ", ""))


def to_rational(value) -> Fraction:
    """Coerce int, Fraction, "p/q" text or a sympy Rational to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    numerator = getattr(value, "p", None)
    denominator = getattr(value, "q", None)
    if numerator is not None and denominator is not None:
        return Fraction(int(numerator), int(denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def render_rational(value: Fraction) -> str:
    return str(value)


def render_decimal(value: Fraction, places: int = 6) -> str:
    """Fixed-point rendering, rounded half to even, without going through float."""
    scaled = round(Fraction(value) * 10 ** places)
    sign = "-" if scaled < 0 else ""
    whole, fraction = divmod(abs(scaled), 10 ** places)
    return f"{sign}{whole}.{fraction:0{places}d}"


@dataclass(frozen=True)
class SymMatrix:
    """Exact symmetric rational matrix, immutable and hashable."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.entries)
        size = len(rows)
        if size == 0:
            raise DimensionMismatch("matrix must have positive dimension")
        if any(len(row) != size for row in rows):
            raise DimensionMismatch("matrix is not square")
        for i in range(size):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise MalformedSpec(f"matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "SymMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, size: int) -> "SymMatrix":
        return cls.of([[int(i == j) for j in range(size)] for i in range(size)])

    @classmethod
    def block_diag(cls, *blocks: "SymMatrix") -> "SymMatrix":
        size = sum(block.dim for block in blocks)
        rows = [[Fraction(0)] * size for _ in range(size)]
        offset = 0
        for block in blocks:
            for i in range(block.dim):
                for j in range(block.dim):
                    rows[offset + i][offset + j] = block.entries[i][j]
            offset += block.dim
        return cls.of(rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    @property
    def diagonal(self) -> Tuple[Fraction, ...]:
        return tuple(self.entries[i][i] for i in range(self.dim))

    def rows(self):
        return [list(row) for row in self.entries]

    def scaled(self, factor) -> "SymMatrix":
        factor = to_rational(factor)
        return SymMatrix.of([[factor * x for x in row] for row in self.entries])

    def reversed(self) -> "SymMatrix":
        """Same form with the basis order reversed."""
        last = self.dim - 1
        return SymMatrix.of(
            [[self.entries[last - i][last - j] for j in range(self.dim)] for i in range(self.dim)]
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def is_even(self) -> bool:
        return self.is_integral() and all(x.numerator % 2 == 0 for x in self.diagonal)

    def _check(self, coords: Sequence) -> None:
        if len(coords) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(coords)}")

    def apply(self, coords: Sequence) -> Tuple[Fraction, ...]:
        self._check(coords)
        return tuple(sum((x * c for x, c in zip(row, coords)), Fraction(0)) for row in self.entries)

    def bilinear(self, left: Sequence, right: Sequence) -> Fraction:
        self._check(left)
        return sum((a * b for a, b in zip(left, self.apply(right))), Fraction(0))

    def quadratic(self, coords: Sequence) -> Fraction:
        return self.bilinear(coords, coords)

    def __str__(self) -> str:
        return "[" + ",".join(
            "[" + ",".join(render_rational(x) for x in row) + "]" for row in self.entries
        ) + "]"
