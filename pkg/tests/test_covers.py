from fractions import Fraction
from itertools import combinations, product

import pytest

from nzflow.covers import (CycleCover, HadamardMatrix, OrientedCycle,
                           find_cycle_cover, find_k_ocdc, find_z2cube_flow,
                           flow_from_3cover_q, flow_from_4ocdc,
                           flow_from_5ocdc_3d, flow_from_cdc_hadamard,
                           flow_from_cover_basis, format_cover,
                           hadamard_sylvester, orient_even_subgraph,
                           parse_cover, validate_cover)
from nzflow.errors import ContractViolation, NoFlowPossible
from nzflow.flows import CHEBYSHEV, MANHATTAN, norm, verify
from nzflow.graphs import MultiGraph, cycle_basis


# --- Z2^3 covers ------------------------------------------------------------

def test_z2cube_k4(k4):
    c1, c2, c3 = find_z2cube_flow(k4)
    assert c1 | c2 | c3 == set(range(6))


def test_z2cube_petersen(petersen):
    cycles = find_z2cube_flow(petersen)
    assert frozenset().union(*cycles) == set(range(15))


def test_z2cube_even_graph_single_cycle():
    square = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    cycles = find_z2cube_flow(square)
    assert frozenset().union(*cycles) == set(range(4))


def test_z2cube_bridge():
    with pytest.raises(NoFlowPossible):
        find_z2cube_flow(MultiGraph(2, [(0, 1)]))


# --- oriented k-cycle double covers -------------------------------------------

def test_k4_has_4ocdc(k4):
    out = find_k_ocdc(k4, 4)
    assert out.value is not None and out.exhaustive
    validate_cover(out.value, oriented=True)


def test_petersen_has_5ocdc(petersen):
    out = find_k_ocdc(petersen, 5)
    assert out.value is not None
    fa = flow_from_5ocdc_3d(out.value)
    assert all(norm(v, MANHATTAN) == 1 for v in fa.values)
    assert verify(fa).valid and fa.dim == 3


def test_petersen_has_no_4ocdc(petersen):
    out = find_k_ocdc(petersen, 4)
    assert out.value is None
    assert out.exhaustive  # complete search, not a budget stop


def test_ocdc_budget_flag(petersen):
    out = find_k_ocdc(petersen, 5, node_budget=3)
    assert out.value is None and not out.exhaustive


def test_ocdc_contract():
    with pytest.raises(ContractViolation):
        find_k_ocdc(MultiGraph(3, [(0, 1), (1, 2), (0, 2)]), 2)
    with pytest.raises(NoFlowPossible):
        find_k_ocdc(MultiGraph(2, [(0, 1)]), 4)


def test_flow_from_4ocdc_values_in_derived_set(k4):
    # oracle: possible edge values are the pairwise differences of the four
    # corner vectors (+-1/2, +-1/2); all eight nonzero integer vectors of
    # Chebyshev norm 1 occur among them
    h = Fraction(1, 2)
    corners = [(h, h), (h, -h), (-h, h), (-h, -h)]
    expected = {tuple(a - b for a, b in zip(x, y))
                for x, y in product(corners, corners) if x != y}
    assert expected == {(x, y) for x in (-1, 0, 1) for y in (-1, 0, 1)
                        if max(abs(x), abs(y)) == 1}
    out = find_k_ocdc(k4, 4)
    fa = flow_from_4ocdc(out.value)
    assert verify(fa).valid
    assert all(norm(v, CHEBYSHEV) == 1 for v in fa.values)
    assert set(fa.values) <= expected


def test_flow_from_4ocdc_rejects_bad_cover(k4):
    cycles = [OrientedCycle({}) for _ in range(4)]
    with pytest.raises(ContractViolation) as err:
        flow_from_4ocdc(CycleCover(k4, cycles, 2))
    assert "edge 0" in str(err.value)


def test_5ocdc_point_differences():
    h = Fraction(1, 2)
    z = Fraction(0)
    pts = [(h, z, z), (-h, z, z), (z, h, z), (z, -h, z), (z, z, h)]
    for a, b in combinations(pts, 2):
        diff = tuple(x - y for x, y in zip(a, b))
        assert norm(diff, MANHATTAN) == 1


# --- the (5/2, 3) construction ---------------------------------------------------

def test_q_vector_norms_match_fixed_list():
    q1 = (Fraction(3, 8), Fraction(3, 8), Fraction(-1, 4))
    q2 = (Fraction(3, 8), Fraction(-1, 4), Fraction(3, 8))
    q3 = (Fraction(-1, 4), Fraction(3, 8), Fraction(3, 8))
    add = lambda *vs: tuple(sum(cs) for cs in zip(*vs))
    neg = lambda v: tuple(-c for c in v)
    assert norm(q1, MANHATTAN) == 1
    assert norm(add(q1, q2), MANHATTAN) == 1
    assert norm(add(q1, neg(q2)), MANHATTAN) == Fraction(5, 4)
    assert norm(add(q1, q2, q3), MANHATTAN) == Fraction(3, 2)
    assert norm(add(q1, q2, neg(q3)), MANHATTAN) == Fraction(3, 2)


@pytest.mark.parametrize("name", ["petersen", "k4"])
def test_flow_from_3cover_q(name, request):
    g = request.getfixturevalue(name)
    fa = flow_from_3cover_q(g, find_z2cube_flow(g))
    assert verify(fa).valid and fa.r == Fraction(5, 2)
    norms = {norm(v, MANHATTAN) for v in fa.values}
    assert norms <= {Fraction(1), Fraction(5, 4), Fraction(3, 2)}


def test_flow_from_3cover_q_uncovered_edge(k4):
    with pytest.raises(ContractViolation) as err:
        flow_from_3cover_q(k4, (frozenset(), frozenset(), frozenset()))
    assert "not covered" in str(err.value)


# --- m-cycle k-covers --------------------------------------------------------------

def test_k4_seven_cycle_four_cover(k4):
    out = find_cycle_cover(k4, 7, 4)
    assert out.value is not None and out.exhaustive
    fa = flow_from_cover_basis(out.value, 0)
    assert fa.dim == 7 and fa.r == 2
    assert all(norm(v, MANHATTAN) == 1 for v in fa.values)
    fb = flow_from_cover_basis(out.value, 1)
    assert fb.dim == 6 and fb.r == Fraction(7, 3)
    assert verify(fb).valid


def test_cdc_as_two_cover_unit_norms(k4):
    out = find_cycle_cover(k4, 3, 2)
    assert out.value is not None
    fa = flow_from_cover_basis(out.value, 0)
    assert all(norm(v, MANHATTAN) == 1 for v in fa.values)


def test_cover_basis_contract(k4):
    cover = find_cycle_cover(k4, 3, 2).value
    with pytest.raises(ContractViolation):
        flow_from_cover_basis(cover, 2)
    with pytest.raises(ContractViolation):
        flow_from_cover_basis(cover, -1)


# --- Hadamard ------------------------------------------------------------------------

def test_h4_is_the_printed_pattern():
    h = hadamard_sylvester(4)
    assert h.rows == ((1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1))


def test_h8_is_doubled_h4():
    h4 = hadamard_sylvester(4).rows
    h8 = hadamard_sylvester(8).rows
    for i in range(4):
        assert h8[i] == h4[i] + h4[i]
        assert h8[4 + i] == h4[i] + tuple(-x for x in h4[i])


def test_h1():
    assert hadamard_sylvester(1).rows == ((1,),)


def test_hadamard_validation_and_row_agreement():
    for order in (2, 4, 8, 16):
        h = hadamard_sylvester(order)
        for i in range(order):
            for j in range(i + 1, order):
                agree = sum(1 for a, b in zip(h.rows[i], h.rows[j]) if a == b)
                assert agree == order // 2
    with pytest.raises(ContractViolation):
        hadamard_sylvester(12)
    with pytest.raises(ContractViolation):
        hadamard_sylvester(0)
    with pytest.raises(ContractViolation):
        HadamardMatrix(((1, 1), (1, 1)))


def test_k4_hadamard_flow(k4):
    cdc = find_cycle_cover(k4, 5, 2).value
    fa = flow_from_cdc_hadamard(cdc, hadamard_sylvester(4))
    assert fa.dim == 4 and verify(fa).valid
    assert all(norm(v, MANHATTAN) == 1 for v in fa.values)
    # per-edge structure: either (m-1)/2 entries of +-2/(m-1), or all
    # entries +-1/(m-1)
    for vec in fa.values:
        nz = [abs(c) for c in vec if c != 0]
        if len(nz) == 4:
            assert all(c == Fraction(1, 4) for c in nz)
        else:
            assert len(nz) == 2 and all(c == Fraction(1, 2) for c in nz)


def test_hadamard_flow_order_mismatch(k4):
    cdc = find_cycle_cover(k4, 3, 2).value
    with pytest.raises(ContractViolation):
        flow_from_cdc_hadamard(cdc, hadamard_sylvester(4))


# --- cover files ------------------------------------------------------------------------

def test_cover_file_round_trip(k4):
    cover = find_cycle_cover(k4, 5, 2).value  # includes empty cycles
    text = format_cover(cover)
    back = parse_cover(text, k4)
    assert back.k == cover.k and back.m == cover.m
    assert [c.signs for c in back.cycles] == [c.signs for c in cover.cycles]
    assert format_cover(back) == text


def test_supplied_cover_feeds_constructions(k4):
    text = format_cover(find_cycle_cover(k4, 7, 4).value)
    cover = parse_cover(text, k4)
    fa = flow_from_cover_basis(cover, 0)
    assert verify(fa).valid


def test_orient_even_subgraph_boundary(petersen):
    basis = cycle_basis(petersen)
    cyc = orient_even_subgraph(petersen, set(basis[0]))
    from nzflow.covers import boundary_violations
    assert boundary_violations(petersen, cyc) == []
