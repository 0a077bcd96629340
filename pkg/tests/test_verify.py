import pytest

from resgaps.catalog.utils import parse_catalog
from resgaps.errors import VerificationMismatch
from resgaps.verify.schemas import TargetReport, VerifyCell, VerifyRecord
from resgaps.verify.utils import TARGETS, ensure_passed, verify

ROW_43 = (
    "id=43 | T=E7 | EK_free_gram=A1* | torsion=trivial | mu=1/2 | provenance=paper-table"
)


def _failures(record: VerifyRecord):
    return [(r.target, c.key, c.field, c.expected, c.actual) for r in record.reports for c in r.cells if not c.passed]


class TestTargets:
    @pytest.mark.parametrize("target", ["table2", "table3", "table4", "table5", "table10", "one-gap"])
    def test_passes(self, catalog, target):
        record = verify(catalog, target)
        assert _failures(record) == []
        assert record.status == "pass"
        assert record.inputs == {"target": target}

    def test_first_gaps_with_errata(self, catalog):
        record = verify(catalog, "table9")
        assert _failures(record) == []
        errata = record.reports[0].errata
        assert "45 first gaps: printed 8,11, recomputed 4,8" in errata
        assert not any(line.startswith("43 ") for line in errata)

    def test_rank_five_and_up(self, catalog):
        report = TARGETS["theorem-r5"](catalog)
        assert report.failed == 0
        assert report.passed == 14

    def test_interval_errata(self, catalog):
        errata = verify(catalog, "table10").reports[0].errata
        assert "20 I: printed [13,23], recomputed [13,21]" in errata
        assert "53 I: printed [9,12), recomputed [9,21)" in errata
        assert not any(line.startswith("29 ") for line in errata)

    def test_unknown_target(self, catalog):
        with pytest.raises(ValueError):
            verify(catalog, "table7")


class TestMissingRows:
    def test_row_cells_fail(self):
        record = verify(parse_catalog(ROW_43), "table3")
        assert record.status == "fail"
        assert {cell.field for cell in record.reports[0].cells} == {"row"}
        assert record.reports[0].failed == 6


class TestEnsurePassed:
    def test_raises_on_failure(self):
        cell = VerifyCell(key="45", field="mu", expected="1/8", actual="1/4", passed=False)
        report = TargetReport(target="table10", cells=[cell], passed=0, failed=1)
        record = VerifyRecord(inputs={"target": "table10"}, status="fail", reports=[report])
        with pytest.raises(VerificationMismatch) as info:
            ensure_passed(record)
        assert info.value.exit_code == 5
        assert "table10" in str(info.value)

    def test_silent_on_pass(self, catalog):
        ensure_passed(verify(catalog, "table2"))
