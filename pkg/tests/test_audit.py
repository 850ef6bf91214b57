# Tests for the audit reports.

import pytest
from src.thetaglue.core.audit import (
    NIEMEIER_CASES,
    SPECIALIZATION_CASES,
    counts_report,
    family_for_k,
    niemeier_report,
    specialization_audit,
    theorem_audit_specs,
    theorem_report,
)
from src.thetaglue.core.lattice_spec import Family, create_spec
from src.thetaglue.core.qseries import quarters

TRUNC = quarters(8)


def test_family_for_k():
    """Odd k glues rank-8m blocks, even k rank-(8m+4) blocks."""
    assert family_for_k(3) is Family.ODD_8M
    assert family_for_k(4) is Family.EVEN_8M4


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_asserted_specializations_pass(k):
    """Printed formulas for k <= 4 match the coset sums."""
    for m in SPECIALIZATION_CASES[k]:
        row = specialization_audit(k, m, TRUNC)
        assert row.asserted
        assert row.passed, row.detail


def test_k5_specialization_is_informational():
    """The k = 5 formula as printed does not match and is not asserted."""
    row = specialization_audit(5, (1, 1, 1, 1, 1), TRUNC)
    assert not row.asserted
    assert not row.passed
    assert row.status == "INFO"


def test_k6_specialization_is_informational():
    """k = 6 is reported without being asserted."""
    row = specialization_audit(6, (0, 0, 0, 0, 0, 0), TRUNC)
    assert not row.asserted


def test_specialization_range():
    """Only k = 1..6 have printed formulas."""
    with pytest.raises(ValueError):
        specialization_audit(7, (1,) * 7, TRUNC)


def test_niemeier_report():
    """Four rank-24 identifications and four D4-power rows, all passing."""
    rows = niemeier_report(TRUNC)
    assert len(rows) == len(NIEMEIER_CASES) + 4
    assert [r for r in rows if not r.passed] == []
    assert rows[0].name == "D24 = E4^3 + 384*Delta24"
    assert "roots=1104" in rows[0].detail


def test_counts_report():
    """Asserted counting rows pass; printed variants show up as informational."""
    rows = counts_report(4)
    assert all(r.passed for r in rows if r.asserted)
    info = [r for r in rows if not r.asserted and not r.passed]
    assert info
    assert all(r.status == "INFO" for r in info)


def test_theorem_audit_specs():
    """Specs stay within the rank cap and cover all three families."""
    specs = theorem_audit_specs(24)
    assert all(s.rank <= 24 for s in specs if s.family is not Family.FOUR_BLOCK)
    assert {s.family for s in specs} == set(Family)
    assert create_spec(Family.ODD_8M, (1, 1, 1)) in specs
    assert create_spec(Family.EVEN_8M4, (0, 0, 0, 0)) in specs


def test_theorem_report_small():
    """Extended reading and weights are asserted; the literal one is reported."""
    specs = [create_spec(Family.ODD_8M, (1,)), create_spec(Family.EVEN_8M4, (1, 1, 0, 0))]
    rows = theorem_report(quarters(6), specs)
    assert len(rows) == 3 * len(specs)
    assert all(r.passed for r in rows if r.asserted)
    literal = [r for r in rows if r.name.endswith("[literal]")]
    assert all(not r.asserted for r in literal)
