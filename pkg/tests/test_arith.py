from fractions import Fraction

import pytest

from resgaps.arith.models import SymMatrix, parse_rational, render_decimal, render_rational, to_rational
from resgaps.arith.utils import (
    adjugate,
    ceil_sqrt,
    det,
    floor_sqrt,
    inverse,
    is_positive_definite,
    is_rational_square,
    ldlt,
)
from resgaps.errors import DimensionMismatch, MalformedSpec, NotPositiveDefinite, SingularMatrix
from resgaps.lattice.models import RootA
from resgaps.lattice.utils import cartan


def _product(a: SymMatrix, b: SymMatrix):
    size = a.dim
    return [[sum(a[i, k] * b[k, j] for k in range(size)) for j in range(size)] for i in range(size)]


class TestRationals:
    def test_parse_fraction_and_integer(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-7") == Fraction(-7)
        assert parse_rational(" 10/4 ") == Fraction(5, 2)

    @pytest.mark.parametrize("text", ["1.5", "1e3", "", "3/", "a/b"])
    def test_parse_rejects_non_rationals(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_to_rational_refuses_booleans(self):
        with pytest.raises(TypeError):
            to_rational(True)

    def test_render(self):
        assert render_rational(Fraction(13, 6)) == "13/6"
        assert render_rational(Fraction(4)) == "4"

    def test_render_decimal_rounds_half_to_even(self):
        assert render_decimal(Fraction(1, 3)) == "0.333333"
        assert render_decimal(Fraction(1, 8), places=2) == "0.12"
        assert render_decimal(Fraction(3, 8), places=2) == "0.38"
        assert render_decimal(Fraction(-1, 2), places=2) == "-0.50"
        assert render_decimal(Fraction(1)) == "1.000000"


class TestSymMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(MalformedSpec):
            SymMatrix.of([[1, 2], [3, 1]])

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            SymMatrix.of([[1, 2]])

    def test_quadratic_and_dimension_check(self):
        m = SymMatrix.of([[2, -1], [-1, 2]])
        assert m.quadratic((1, 1)) == 2
        assert m.quadratic((1, -1)) == 6
        with pytest.raises(DimensionMismatch):
            m.quadratic((1, 0, 0))

    def test_block_diag_and_reversed(self):
        m = SymMatrix.block_diag(SymMatrix.of([[2]]), SymMatrix.of([["1/2"]]))
        assert m.rows() == [[2, 0], [0, Fraction(1, 2)]]
        assert m.reversed().rows() == [[Fraction(1, 2), 0], [0, 2]]

    def test_even_and_integral(self):
        assert cartan(RootA(3)).is_even()
        assert not SymMatrix.of([[1]]).is_even()
        assert not SymMatrix.of([["1/2"]]).is_integral()

    def test_hashable(self):
        assert hash(SymMatrix.of([[2]])) == hash(SymMatrix.of([["4/2"]]))


class TestFactorization:
    def test_ldlt_reconstructs_a3(self):
        m = cartan(RootA(3))
        lower, pivots = ldlt(m)
        for i in range(3):
            for j in range(3):
                value = sum(lower[i][k] * pivots[k] * lower[j][k] for k in range(3))
                assert value == m[i, j]
        assert pivots == (Fraction(2), Fraction(3, 2), Fraction(4, 3))

    def test_indefinite_matrix(self):
        m = SymMatrix.of([[1, 2], [2, 1]])
        assert not is_positive_definite(m)
        with pytest.raises(NotPositiveDefinite):
            ldlt(m)

    def test_adjugate_identity_a3(self):
        m = cartan(RootA(3))
        assert det(m) == 4
        assert _product(m, adjugate(m)) == [[4 if i == j else 0 for j in range(3)] for i in range(3)]

    def test_inverse_of_rank_two_free_gram(self):
        free = SymMatrix.of([["2/15", "1/15"], ["1/15", "8/15"]])
        assert inverse(free) == SymMatrix.of([[8, -1], [-1, 2]])
        assert _product(free, inverse(free)) == [[1, 0], [0, 1]]

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            inverse(SymMatrix.of([[1, 1], [1, 1]]))


class TestSquares:
    def test_rational_square(self):
        assert is_rational_square(Fraction(9, 4))
        assert is_rational_square(Fraction(0))
        assert not is_rational_square(Fraction(2, 9))
        assert not is_rational_square(Fraction(-4))

    @pytest.mark.parametrize("q, floor, ceil", [
        (Fraction(17, 4), 2, 3),
        (Fraction(4), 2, 2),
        (Fraction(5), 2, 3),
        (Fraction(1, 4), 0, 1),
        (Fraction(0), 0, 0),
    ])
    def test_integer_square_roots(self, q, floor, ceil):
        assert floor_sqrt(q) == floor
        assert ceil_sqrt(q) == ceil
