import random
from fractions import Fraction

import pytest

from resgaps.arith.utils import det, is_positive_definite
from resgaps.catalog.utils import (
    analyze_case,
    analyze_fibers,
    load_catalog,
    lookup,
    narrow_gram,
    parse_catalog,
    render_catalog,
    save_catalog,
    witness_p_dot_o,
)
from resgaps.errors import NotFound, ParseError, RankZero, ValidationError
from resgaps.forms.utils import build_qx
from resgaps.lattice.models import RootA, RootE

REQUIRED_IDS = {
    1, 2, 3, 4, 5, 6, 7, 20, 24, 27, 28, 29, 31, 37, 38, 39, 40, 41, 42, 43, 44, 45,
    46, 47, 48, 49, 50, 51, 52, 53, 54, 55, 56, 57, 58, 59, 60, 61,
}

ROW_43 = "id=43 | T=E7 | EK_free_gram=A1* | torsion=trivial | mu=1/2 | provenance=paper-table"


class TestEmbeddedCatalog:
    def test_required_rows(self, catalog):
        assert REQUIRED_IDS <= set(catalog.cases)

    def test_bounds_row(self, catalog):
        case = catalog.cases[53]
        assert str(case.torsion) == "Z/2"
        assert case.t_multiset == (RootA(5), RootA(1), RootA(1))
        assert case.bounds[:2] == (Fraction(5, 2), Fraction(1, 2))

    def test_rank_one_e7(self, catalog):
        case = catalog.cases[43]
        assert case.t == (RootE(7),)
        assert case.rank == 1
        assert case.mu == Fraction(1, 2)

    def test_stated_mu(self, catalog):
        assert catalog.cases[55].mu == Fraction(1, 20)

    def test_provenance(self, catalog):
        case = catalog.cases[59]
        assert case.source_of("witness") == "paper-proof"
        assert case.source_of("mu") == "paper-table"
        assert catalog.cases[62].source_of("T") == "external-OS-table"

    def test_witness_gives_one(self, catalog):
        case = catalog.cases[59]
        assert witness_p_dot_o(case, case.witnesses[0]) == 1

    def test_round_trip(self, catalog, tmp_path):
        path = tmp_path / "copy.txt"
        save_catalog(catalog, path)
        again = load_catalog(path)
        assert again == catalog
        assert render_catalog(again) == render_catalog(catalog)

    def test_environment_override(self, catalog_file, monkeypatch):
        from resgaps.config import config

        monkeypatch.setattr(config, "CATALOG", str(catalog_file(ROW_43 + "\n")))
        assert set(load_catalog().cases) == {43}


class TestStructure:
    """Lattice facts every shipped case satisfies."""

    def test_every_case(self, catalog):
        rng = random.Random(7)
        for case in catalog:
            c_max, c_min, delta = case.bounds
            if c_max > 0:
                assert 0 < c_min and c_max < 4
            if delta >= 2:
                assert not case.torsion.is_trivial
            if case.rank == 0:
                continue
            narrow = case.narrow_gram
            assert narrow.is_even()
            free = case.free_gram
            size = case.rank
            product = [[free.bilinear(
                [int(i == k) for k in range(size)], narrow.apply([int(j == k) for k in range(size)])
            ) for j in range(size)] for i in range(size)]
            assert product == [[int(i == j) for j in range(size)] for i in range(size)]

            qx = build_qx(case)
            assert qx.matrix.is_integral()
            assert is_positive_definite(qx.matrix)
            d = det(narrow)
            for _ in range(25):
                x = [rng.randint(-5, 5) for _ in range(size)]
                assert qx(x) == d * free.quadratic(x)

    def test_rank_zero_has_no_narrow_lattice(self, catalog):
        with pytest.raises(RankZero):
            narrow_gram(catalog.cases[62])


class TestValidation:
    def test_rank_sum(self):
        with pytest.raises(ValidationError) as e:
            parse_catalog("id=1 | T=A1 | EK_free_gram=E8* | mu=2 | provenance=paper-table")
        assert e.value.case_id == 1
        assert "rank" in e.value.reason

    def test_mu_mismatch(self):
        with pytest.raises(ValidationError, match="minimal norm"):
            parse_catalog(ROW_43.replace("mu=1/2", "mu=1"))

    def test_determinant_relation(self):
        row = "id=53 | T=A5+A1^2 | EK_free_gram=<1/6> | mu=1/6 | provenance=paper-table"
        with pytest.raises(ValidationError, match="torsion"):
            parse_catalog(row)

    def test_stored_bounds(self):
        with pytest.raises(ValidationError, match="c_max"):
            parse_catalog(ROW_43 + " | c_max=2")

    def test_duplicate_id(self):
        with pytest.raises(ValidationError) as e:
            parse_catalog(ROW_43 + "\n" + ROW_43)
        assert e.value.reason == "duplicate id"
        assert e.value.line == 2

    def test_witness_component_count(self):
        row = (
            "id=59 | T=A3+A2+A1^2 | EK_free_gram=<1/12> | torsion=Z/2 | mu=1/12"
            " | witness=4;tor;2,1,1 | provenance=paper-table"
        )
        with pytest.raises(ValidationError, match="component"):
            parse_catalog(row)

    def test_fibers_must_give_t(self):
        with pytest.raises(ValidationError, match="fibers"):
            parse_catalog(ROW_43 + " | fibers=IV*,I1,I1,I1,I1")

    @pytest.mark.parametrize("text, line", [
        ("# comment\nid=43 | T=E7 | bogus", 2),
        ("id=43 | T=E7 | EK_free_gram=A1* | mu=1/2 | colour=red | provenance=paper-table", 1),
        ("id=43 | T=E7 | EK_free_gram=A1* | mu=1/2", 1),
        ("@format 1\n@colour red", 2),
        ("id=43 | T=E7 | EK_free_gram=A1* | mu=0.5 | provenance=paper-table", 1),
        ("id=43 | T=E7 | EK_free_gram=A1* | mu=1/2 | provenance=hearsay", 1),
    ])
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as e:
            parse_catalog(text)
        assert e.value.line == line

    def test_directives(self):
        catalog = parse_catalog("@format 1\n@note hand-made\n" + ROW_43)
        assert catalog.notes == ("hand-made",)
        assert len(catalog) == 1


class TestLookup:
    def test_by_id(self, catalog):
        assert lookup(catalog, 43).id == 43
        assert lookup(catalog, "43").id == 43

    def test_missing(self, catalog):
        with pytest.raises(NotFound):
            lookup(catalog, 999)
        with pytest.raises(NotFound):
            lookup(catalog, "I9,I1,I1,I1")

    def test_by_fibers(self, catalog):
        assert [case.id for case in lookup(catalog, "III*,I1,I1,I1,I1,I1")] == [43]
        assert [case.id for case in lookup(catalog, "I8,I1,I1,I1,I1")] == [44, 45]


class TestAnalysis:
    def test_case_43(self, catalog):
        record = analyze_case(catalog.cases[43])
        assert record.q_x == [["1"]]
        assert record.narrow_gram == [["2"]]
        assert record.mu == "1/2"
        assert record.inputs == {"case": "43"}

    def test_case_41_delta(self, catalog):
        assert analyze_case(catalog.cases[41]).delta == "13/6"

    def test_worked_fibers(self, catalog):
        record = analyze_fibers(catalog, "I4,IV,III,I1")
        assert (record.c_max, record.c_min) == ("13/6", "1/2")
        assert record.matches == [37]
        assert record.fibers == "I4,IV,III,I1"

    def test_unmatched_fibers_give_bounds_only(self, catalog):
        record = analyze_fibers(catalog, "I9,I1,I1,I1")
        assert record.case_id is None
        assert record.T == "A8"
        assert (record.c_max, record.c_min) == ("20/9", "8/9")
        assert record.matches == []
