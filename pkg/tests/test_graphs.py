from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nzflow.errors import ContractViolation, GraphParseError
from nzflow.flows import CHEBYSHEV, FlowAssignment, verify
from nzflow.graphs import (MultiGraph, cycle_basis, find_bridges, format_edge_list,
                           girth, named_graph, orient_even_edges, parse_edge_list,
                           parse_graph6, perfect_matchings, three_edge_colouring)
from oracles import (encode_graph6, oracle_bridges, oracle_perfect_matchings,
                     oracle_three_edge_colourable)


# --- small random multigraphs for property tests ---------------------------

@st.composite
def small_multigraphs(draw, max_n=6, max_m=9):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    edges = [(draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)))
             for _ in range(m)]
    return MultiGraph(n, edges)


# --- graph6 -----------------------------------------------------------------

def test_graph6_k4_decoded_by_hand():
    # 'C' encodes order 4; '~' contributes bits 111111 for the six pairs
    g = parse_graph6("C~")
    assert g.vertex_count == 4
    assert sorted(g.edges) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_graph6_single_vertex():
    g = parse_graph6("@")
    assert g.vertex_count == 1
    assert g.edge_count == 0


def test_graph6_petersen_round_trip(petersen):
    line = encode_graph6(petersen)
    g = parse_graph6(line)
    assert g.vertex_count == 10
    assert g.edge_count == 15
    assert all(d == 3 for d in g.degrees())
    assert sorted(g.edges) == sorted(petersen.edges)


def test_graph6_header_prefix(petersen):
    line = ">>graph6<<" + encode_graph6(petersen)
    assert parse_graph6(line).edge_count == 15


def test_graph6_errors_name_offsets():
    with pytest.raises(GraphParseError) as err:
        parse_graph6("C")          # truncated bit-vector
    assert "truncated" in str(err.value)
    with pytest.raises(GraphParseError) as err:
        parse_graph6("C~~")        # trailing data
    assert "trailing" in str(err.value)
    with pytest.raises(GraphParseError) as err:
        parse_graph6("C\x1c")      # character below the printable range
    assert "offset" in str(err.value)
    with pytest.raises(GraphParseError):
        parse_graph6("")


@given(small_multigraphs())
def test_graph6_round_trip_simple_part(g):
    # encoder only handles simple graphs: simplify first
    simple = MultiGraph(g.vertex_count,
                        sorted({(u, v) for u, v in g.edges if u != v}))
    back = parse_graph6(encode_graph6(simple))
    assert back.vertex_count == simple.vertex_count
    assert sorted(back.edges) == sorted(simple.edges)


# --- edge list format --------------------------------------------------------

def test_edge_list_round_trip():
    g = MultiGraph(4, [(0, 1), (0, 1), (2, 2), (1, 3)])  # parallel + loop
    back = parse_edge_list(format_edge_list(g))
    assert back == g


def test_edge_list_errors():
    with pytest.raises(GraphParseError):
        parse_edge_list("")
    with pytest.raises(GraphParseError):
        parse_edge_list("2 1\n0 1\n0 1")   # wrong count
    with pytest.raises(GraphParseError):
        parse_edge_list("2 1\n0 5")        # out of range


# --- named generators --------------------------------------------------------

def test_named_graphs_basic(petersen, k4, blanusa1, blanusa2):
    assert petersen.vertex_count == 10 and petersen.edge_count == 15
    assert three_edge_colouring(petersen) is None
    assert k4.vertex_count == 4 and three_edge_colouring(k4) is not None
    assert blanusa1.vertex_count == 18 and blanusa2.vertex_count == 18
    assert three_edge_colouring(blanusa1) is None
    assert three_edge_colouring(blanusa2) is None
    j5 = named_graph("flower_j5")
    assert j5.vertex_count == 20 and j5.is_cubic()


def test_named_graph_unknown_lists_names():
    with pytest.raises(ContractViolation) as err:
        named_graph("nope")
    assert "petersen" in str(err.value)


def test_blanusa_snarks_differ(blanusa1, blanusa2):
    # frozen distinguishing invariant: perfect matching counts 20 vs 19
    assert sum(1 for _ in perfect_matchings(blanusa1)) == 20
    assert sum(1 for _ in perfect_matchings(blanusa2)) == 19


def test_girth_of_named():
    assert girth(named_graph("petersen")) == 5
    assert girth(named_graph("k4")) == 3
    assert girth(named_graph("blanusa1")) == 5


# --- bridges ------------------------------------------------------------------

def test_bridges_path():
    g = MultiGraph(3, [(0, 1), (1, 2)])
    assert find_bridges(g) == {0, 1}


def test_bridges_petersen_empty(petersen):
    assert find_bridges(petersen) == frozenset()
    assert oracle_bridges(petersen) == frozenset()


def test_bridges_triangle_with_pendant():
    g = MultiGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert find_bridges(g) == {3}


def test_parallel_edges_and_loops_never_bridges():
    g = MultiGraph(3, [(0, 1), (0, 1), (1, 2), (2, 2)])
    # (1,2) is the only bridge; the loop and the parallel pair are not
    assert find_bridges(g) == {2}


@given(small_multigraphs())
def test_bridges_match_deletion_oracle(g):
    assert find_bridges(g) == oracle_bridges(g)


# --- colouring -----------------------------------------------------------------

def test_colouring_k4(k4):
    col = three_edge_colouring(k4)
    assert col is not None
    for v, edges in enumerate(k4.vertex_edges()):
        assert len({col.colour(e) for e in edges}) == 3


def test_colouring_k33():
    k33 = MultiGraph(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    assert three_edge_colouring(k33) is not None
    assert oracle_three_edge_colourable(k33)


def test_colouring_requires_cubic():
    with pytest.raises(ContractViolation):
        three_edge_colouring(MultiGraph(2, [(0, 1)]))


def test_colouring_theta_multigraph():
    theta = MultiGraph(2, [(0, 1)] * 3)
    col = three_edge_colouring(theta)
    assert col is not None
    assert sorted(col.colours) == [1, 2, 3]


def test_colouring_agrees_with_matching_oracle(corpus):
    for g in corpus:
        if g.vertex_count > 12:
            continue
        assert (three_edge_colouring(g) is not None) == oracle_three_edge_colourable(g)


# --- perfect matchings -----------------------------------------------------------

def test_matchings_k4(k4):
    ms = list(perfect_matchings(k4))
    assert len(ms) == 3
    assert len(set(ms)) == 3


def test_matchings_petersen(petersen):
    ms = list(perfect_matchings(petersen))
    assert len(ms) == 6
    assert sorted(ms, key=sorted) == sorted(oracle_perfect_matchings(petersen), key=sorted)


def test_matchings_odd_order():
    g = MultiGraph(3, [(0, 1), (1, 2), (0, 2)])
    assert list(perfect_matchings(g)) == []


@given(small_multigraphs())
def test_matchings_match_subset_oracle(g):
    mine = sorted(perfect_matchings(g), key=sorted)
    theirs = sorted(oracle_perfect_matchings(g), key=sorted)
    assert mine == theirs


# --- cycle basis ------------------------------------------------------------------

def test_cycle_basis_tree():
    g = MultiGraph(4, [(0, 1), (1, 2), (1, 3)])
    assert cycle_basis(g) == []


def test_cycle_basis_triangle():
    g = MultiGraph(3, [(0, 1), (0, 2), (1, 2)])
    basis = cycle_basis(g)
    assert len(basis) == 1
    assert set(basis[0]) == {0, 1, 2}


def test_cycle_basis_petersen_dimension(petersen):
    assert len(cycle_basis(petersen)) == 6


def test_cycle_basis_loops_and_parallel():
    g = MultiGraph(2, [(0, 1), (0, 1), (0, 0)])
    basis = cycle_basis(g)
    assert len(basis) == 2


@given(small_multigraphs())
def test_fundamental_cycles_conserve(g):
    # each fundamental cycle, read as a 1-D flow of +-1 values, conserves
    for cyc in cycle_basis(g):
        values = tuple((Fraction(cyc.get(e, 0)),) for e in range(g.edge_count))
        fa = FlowAssignment(g, 1, CHEBYSHEV, Fraction(2), values)
        assert verify(fa).conservation_violations == ()


def test_degree_sum_is_twice_edges(corpus):
    for g in corpus:
        assert sum(g.degrees()) == 2 * g.edge_count


def test_orient_even_edges_conserves(petersen):
    matching = next(iter(perfect_matchings(petersen)))
    factor = [e for e in range(15) if e not in matching]
    signs = orient_even_edges(petersen, factor)
    values = tuple((Fraction(signs.get(e, 0)),) for e in range(15))
    fa = FlowAssignment(petersen, 1, CHEBYSHEV, Fraction(2), values)
    assert verify(fa).conservation_violations == ()


def test_orient_even_edges_rejects_odd():
    g = MultiGraph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ContractViolation):
        orient_even_edges(g, [0, 1])
