import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from resgaps.arith.models import SymMatrix
from resgaps.arith.utils import ldlt
from resgaps.errors import MalformedSpec


@dataclass(frozen=True)
class IntQuadraticForm:
    """Positive-definite form Q(x) = xᵀ·A·x / divisor with A an integer matrix.

    divisor 1 is the plain integer-matrix case (Q_X); divisor 2 covers forms
    with half-integral cross terms such as x₁² + x₂² - x₁x₂. Construction
    rejects forms that are not integer-valued.
    """

    matrix: SymMatrix
    divisor: int = 1

    def __post_init__(self):
        if not self.matrix.is_integral():
            raise MalformedSpec(f"form matrix {self.matrix} is not integral")
        if self.divisor < 1:
            raise MalformedSpec(f"divisor must be positive, got {self.divisor}")
        size = self.matrix.dim
        for i in range(size):
            if self.matrix[i, i] % self.divisor:
                raise MalformedSpec(f"diagonal entry {i} is not divisible by {self.divisor}")
            for j in range(i):
                if (2 * self.matrix[i, j]) % self.divisor:
                    raise MalformedSpec(f"cross term ({i}, {j}) is not divisible by {self.divisor}")
        ldlt(self.matrix)

    @classmethod
    def from_gram(cls, gram: SymMatrix) -> "IntQuadraticForm":
        """Clear denominators of a rational Gram matrix."""
        divisor = math.lcm(*(x.denominator for row in gram.entries for x in row))
        return cls(gram.scaled(divisor), divisor)

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @cached_property
    def gram(self) -> SymMatrix:
        return self.matrix.scaled(Fraction(1, self.divisor))

    def __call__(self, coords: Sequence[int]) -> int:
        value = self.gram.quadratic(coords)
        return value.numerator
