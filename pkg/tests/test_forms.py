from fractions import Fraction

import pytest

from resgaps.arith.models import SymMatrix
from resgaps.errors import MalformedSpec, NotPositiveDefinite
from resgaps.forms.models import IntQuadraticForm
from resgaps.forms.utils import (
    CRITICAL_290,
    A4_FORM,
    build_qx,
    check_290_critical,
    four_square,
    is_universal,
    parse_form,
    represent_record,
    represents,
    represents_in_interval,
)
from resgaps.verify import goldens


def q(x1, x2, x3, x4):
    return x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4 - x1 * x2 - x2 * x3 - x3 * x4


class TestIntQuadraticForm:
    def test_a4_form_values(self):
        for x in [(1, 0, 0, 0), (1, 1, 2, 0), (1, -5, -9, 8), (3, -1, 4, 1)]:
            assert A4_FORM(x) == q(*x)

    def test_from_gram_clears_denominators(self):
        form = IntQuadraticForm.from_gram(SymMatrix.of([[1, "-1/2"], ["-1/2", 1]]))
        assert form.divisor == 2
        assert form.matrix == SymMatrix.of([[2, -1], [-1, 2]])
        assert form((1, 1)) == 1

    def test_rejects_non_integer_valued(self):
        with pytest.raises(MalformedSpec):
            IntQuadraticForm(SymMatrix.of([[1, 0], [0, 1]]), divisor=2)

    def test_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            IntQuadraticForm(SymMatrix.of([[1, 2], [2, 1]]))

    def test_parse_form(self):
        assert parse_form("[[2,1],[1,8]]").matrix == SymMatrix.of([[2, 1], [1, 8]])
        assert parse_form("A4").divisor == 1
        with pytest.raises(MalformedSpec):
            parse_form("0")


class TestRepresentation:
    @pytest.mark.parametrize("n", [1, 3, 93, 290])
    def test_witness_is_deterministic(self, n):
        found = represents(A4_FORM, n)
        assert A4_FORM(found) == n
        assert represents(A4_FORM, n) == found

    def test_lexicographic_witness_for_qx(self, catalog):
        assert represents(build_qx(catalog.cases[31]), 2) == (1, 0)

    def test_not_represented(self, catalog):
        qx = build_qx(catalog.cases[43])
        assert represents(qx, 9) == (3,)
        assert represents(qx, 7) is None
        assert represents(qx, 0) == (0,)

    def test_negative_target(self):
        with pytest.raises(ValueError):
            represents(A4_FORM, -1)

    def test_interval(self, catalog):
        qx = build_qx(catalog.cases[43])
        assert represents_in_interval(qx, 1, 4) == (1,)
        assert represents_in_interval(qx, 2, 4, open_right=True) is None
        assert represents_in_interval(qx, Fraction(3, 2), 4, exclude_multiples_of=4) is None
        assert represents_in_interval(qx, 2, 9, exclude_multiples_of=4) == (3,)


class TestFourSquares:
    @pytest.mark.parametrize("n, expected", [
        (0, (0, 0, 0, 0)), (1, (1, 0, 0, 0)), (4, (1, 1, 1, 1)), (7, (2, 1, 1, 1)),
        (16, (2, 2, 2, 2)), (31, (3, 3, 3, 2)),
    ])
    def test_lexicographically_smallest(self, n, expected):
        assert four_square(n) == expected

    def test_every_small_integer(self):
        for n in range(300):
            a, b, c, d = four_square(n)
            assert a * a + b * b + c * c + d * d == n
            assert a >= b >= c >= d >= 0


class TestCriticalIntegers:
    def test_shipped_witnesses(self):
        assert sorted(goldens.TABLE5) == list(CRITICAL_290)
        for n, x in goldens.TABLE5.items():
            assert q(*x) == n

    def test_a4_form_is_universal(self):
        report = check_290_critical(A4_FORM)
        assert set(report) == set(CRITICAL_290)
        assert is_universal(report)
        assert all(q(*report[n]) == n for n in CRITICAL_290)

    def test_sum_of_two_squares_is_not(self):
        form = IntQuadraticForm(SymMatrix.identity(2))
        report = check_290_critical(form)
        assert not is_universal(report)
        assert report[3] is None
        assert report[2] == (1, -1)


class TestRecord:
    def test_case_31(self, catalog):
        record = represent_record(build_qx(catalog.cases[31]), 2, case_id=31)
        assert record.status == "represented"
        assert record.witness == [1, 0]
        assert record.form == [["2", "1"], ["1", "8"]]

    def test_not_represented(self, catalog):
        record = represent_record(build_qx(catalog.cases[43]), 7, case_id=43)
        assert record.status == "not-represented"
        assert record.witness is None
