from fractions import Fraction

import pytest

from nzflow.bounds import (bounds_csv, bounds_record, is_snark, ratio_report,
                           snark_lower_bound, table1_upper)
from nzflow.errors import ContractViolation
from nzflow.graphs import MultiGraph


def test_is_snark(petersen, k4, blanusa1, blanusa2):
    assert is_snark(petersen)
    assert is_snark(blanusa1) and is_snark(blanusa2)
    assert not is_snark(k4)
    k33 = MultiGraph(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    assert not is_snark(k33)


def test_is_snark_rejects_multigraph():
    theta = MultiGraph(2, [(0, 1)] * 3)
    assert not is_snark(theta)  # not simple


def test_snark_lower_bound_values():
    assert snark_lower_bound(10) == Fraction(5, 2)
    assert snark_lower_bound(18) == Fraction(9, 4)
    assert snark_lower_bound(26) == Fraction(13, 6)
    with pytest.raises(ContractViolation):
        snark_lower_bound(8)


def test_table1_cells():
    assert table1_upper(2, "bridgeless") == 3
    assert table1_upper(3, "bridgeless") == Fraction(5, 2)
    assert table1_upper(6, "bridgeless") == Fraction(7, 3)
    assert table1_upper(7, "bridgeless") == 2
    assert table1_upper(3, "4ocdc") == 2
    assert table1_upper(2, "5ocdc") == 3
    assert table1_upper(3, "5cdc") == Fraction(5, 2)
    assert table1_upper(4, "5cdc") == 2
    with pytest.raises(ContractViolation):
        table1_upper(8, "bridgeless")
    with pytest.raises(ContractViolation):
        table1_upper(2, "planar")


def test_ratio_report_petersen(petersen):
    rec = ratio_report(petersen, qmax=2)
    assert rec.phi1.value == 5
    assert rec.phi2_inf.value == Fraction(5, 2)
    assert rec.ratio == 2
    assert rec.snark and rec.lower_2inf == Fraction(5, 2)


def test_ratio_report_k4(k4):
    rec = ratio_report(k4, qmax=2)
    assert rec.phi1.value == 4
    assert rec.phi2_inf.value == 2
    assert rec.ratio == 2
    assert not rec.snark and rec.lower_2inf is None


def test_order20_ratio_arithmetic():
    # the reported order-20 combination: phi1 = 9/2 with phi2_inf = 7/3
    assert Fraction(9, 2) / Fraction(7, 3) == Fraction(27, 14) < 2


def test_bounds_record_structural_only(petersen):
    rec = bounds_record(petersen)
    assert rec.phi1 is None and rec.ratio is None
    assert rec.uppers["bridgeless"] == 3


def test_bounds_csv_shape(petersen, k4):
    recs = [bounds_record(petersen), ratio_report(k4, qmax=2)]
    text = bounds_csv(recs)
    lines = text.strip().splitlines()
    assert lines[0].startswith("key,n,is_snark")
    assert len(lines) == 3
    assert ",10,true,5/2," in lines[1]
    assert lines[2].endswith(",4,exact,2,exact,2")
