"""t-flow-pairs: a 2-flow plus a bounded integer flow that is large wherever
the 2-flow vanishes, and the flows derived from such a pair.

For t = p/q (reduced, 0 < t <= 1) a pair consists of a 2-flow phi2 with
values in {-1, 0, +1} and a (p+q+1)-flow phiBig with |phiBig(e)| <= p+q,
sharing the canonical orientation, such that phi2(e) = 0 implies
|phiBig(e)| >= q.  A pair yields a (2+t, 2)-ChNZF and a (4+2t, 1)-NZF.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ContractViolation, GraphParseError, NoFlowPossible
from .flows import CHEBYSHEV, FlowAssignment, verify
from .graphs import (MultiGraph, cycle_basis, find_bridges, orient_even_edges,
                     perfect_matchings)
from .search import FEASIBLE, UNKNOWN, _FlowSearch
from .covers import SearchOutcome
from .bounds import is_snark


@dataclass(frozen=True)
class FlowPair:
    """A 2-flow and a (p+q+1)-flow over one shared orientation."""

    graph: MultiGraph
    p: int
    q: int
    phi2: tuple[int, ...]
    phi_big: tuple[int, ...]

    @property
    def t(self) -> Fraction:
        return Fraction(self.p, self.q)


def validate_pair(fp: FlowPair) -> None:
    """Raise ContractViolation on the first violated pair condition."""
    g = fp.graph
    if len(fp.phi2) != g.edge_count or len(fp.phi_big) != g.edge_count:
        raise ContractViolation("pair does not assign every edge")
    bound = fp.p + fp.q
    for e in range(g.edge_count):
        if fp.phi2[e] not in (-1, 0, 1):
            raise ContractViolation(f"edge {e}: phi2 value {fp.phi2[e]} not in -1..1")
        if abs(fp.phi_big[e]) > bound:
            raise ContractViolation(
                f"edge {e}: |phiBig| = {abs(fp.phi_big[e])} exceeds {bound}")
        if fp.phi2[e] == 0 and abs(fp.phi_big[e]) < fp.q:
            raise ContractViolation(
                f"edge {e}: phi2 is zero but |phiBig| = {abs(fp.phi_big[e])} < q")
    for name, values in (("phi2", fp.phi2), ("phiBig", fp.phi_big)):
        bal = [0] * g.vertex_count
        for e, (u, v) in enumerate(g.edges):
            if u == v:
                continue
            bal[v] += values[e]
            bal[u] -= values[e]
        bad = [w for w in range(g.vertex_count) if bal[w]]
        if bad:
            raise ContractViolation(f"{name} violates conservation at vertex {bad[0]}")


def _search_phi_big(g: MultiGraph, zero_support: set[int], q: int, bound: int,
                    node_budget):
    """Integer flow with |phi| <= bound everywhere and |phi| >= q on the
    given edges.  Returns (values | None, exhausted, nodes)."""
    full = [(v,) for v in range(-bound, bound + 1)]
    full.sort(key=lambda t: (abs(t[0]), t[0]))
    lower = [t for t in full if abs(t[0]) >= q]
    domains = [lower if e in zero_support else full for e in range(g.edge_count)]
    engine = _FlowSearch(g, domains, 1, node_budget=node_budget)
    status, vals = engine.run()
    if status == FEASIBLE:
        return [v[0] for v in vals], True, engine.nodes
    return None, status != UNKNOWN, engine.nodes


def find_t_flow_pair(g: MultiGraph, p: int, q: int,
                     node_budget: int | None = None) -> SearchOutcome:
    """Search for a t-flow-pair with t = p/q (reduced internally).

    Cubic snarks with t < 1 go through perfect matchings: the 2-flow support
    must be a 2-factor there, so its complement is a perfect matching and
    only phiBig needs searching.  All other graphs enumerate the 2-flow over
    even subgraphs (one orientation each; feasibility only depends on the
    support) before the phiBig search.  A None value with exhaustive=True
    proves no pair exists.
    """
    if p < 1 or q < 1:
        raise ContractViolation("p and q must be positive integers")
    if p > q:
        raise ContractViolation("t = p/q must satisfy 0 < t <= 1")
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; no flows exist")
    r = gcd(p, q)
    p, q = p // r, q // r
    bound = p + q
    nodes = 0
    exhausted = True
    if g.is_cubic() and p < q and is_snark(g):
        for matching in perfect_matchings(g):
            factor = [e for e in range(g.edge_count) if e not in matching]
            phi2_map = orient_even_edges(g, factor)
            phi2 = tuple(phi2_map.get(e, 0) for e in range(g.edge_count))
            remaining = None if node_budget is None else node_budget - nodes
            if remaining is not None and remaining <= 0:
                return SearchOutcome(None, False, nodes)
            vals, complete, used = _search_phi_big(g, set(matching), q, bound,
                                                   remaining)
            nodes += used
            exhausted = exhausted and complete
            if vals is not None:
                pair = FlowPair(g, p, q, phi2, tuple(vals))
                validate_pair(pair)
                return SearchOutcome(pair, True, nodes)
        return SearchOutcome(None, exhausted, nodes)
    # generic route: phi2 ranges over oriented even subgraphs
    basis = cycle_basis(g)
    supports = [frozenset()]
    seen = {frozenset()}
    for cyc in basis:
        for s in list(supports):
            new = s.symmetric_difference(cyc.keys())
            if new not in seen:
                seen.add(new)
                supports.append(new)
    for support in supports:
        phi2_map = orient_even_edges(g, support) if support else {}
        phi2 = tuple(phi2_map.get(e, 0) for e in range(g.edge_count))
        zero = {e for e in range(g.edge_count) if phi2[e] == 0}
        remaining = None if node_budget is None else node_budget - nodes
        if remaining is not None and remaining <= 0:
            return SearchOutcome(None, False, nodes)
        vals, complete, used = _search_phi_big(g, zero, q, bound, remaining)
        nodes += used
        exhausted = exhausted and complete
        if vals is not None:
            pair = FlowPair(g, p, q, phi2, tuple(vals))
            validate_pair(pair)
            return SearchOutcome(pair, True, nodes)
    return SearchOutcome(None, exhausted, nodes)


def chnzf_from_pair(fp: FlowPair) -> FlowAssignment:
    """(2+t, 2)-ChNZF: edge value (phi2(e), phiBig(e)/q)."""
    validate_pair(fp)
    values = tuple((Fraction(fp.phi2[e]), Fraction(fp.phi_big[e], fp.q))
                   for e in range(fp.graph.edge_count))
    fa = FlowAssignment(fp.graph, 2, CHEBYSHEV, 2 + fp.t, values)
    report = verify(fa)
    if not report.valid:  # pragma: no cover - guaranteed by pair validity
        raise AssertionError("pair produced an invalid 2-D flow")
    return fa


def nzf1d_from_pair(fp: FlowPair) -> FlowAssignment:
    """(4+2t, 1)-NZF: edge value (2 + t) * phi2(e) + phiBig(e)/q."""
    validate_pair(fp)
    coeff = 2 + fp.t
    values = tuple((coeff * fp.phi2[e] + Fraction(fp.phi_big[e], fp.q),)
                   for e in range(fp.graph.edge_count))
    fa = FlowAssignment(fp.graph, 1, CHEBYSHEV, 4 + 2 * fp.t, values)
    report = verify(fa)
    if not report.valid:  # pragma: no cover - guaranteed by pair validity
        raise AssertionError("pair produced an invalid 1-D flow")
    return fa


def check_support_two_factor(fp: FlowPair, g: MultiGraph | None = None) -> bool:
    """True iff the 2-flow's support is a spanning 2-regular subgraph."""
    graph = g if g is not None else fp.graph
    deg = [0] * graph.vertex_count
    for e, (u, v) in enumerate(graph.edges):
        if fp.phi2[e] != 0:
            deg[u] += 1
            deg[v] += 1
    return all(dd == 2 for dd in deg)


# ---------------------------------------------------------------------------
# pair file format

def format_pair(fp: FlowPair) -> str:
    lines = ["nzflow-pair 1", f"p {fp.p}", f"q {fp.q}"]
    lines.extend(f"{fp.phi2[e]} {fp.phi_big[e]}"
                 for e in range(fp.graph.edge_count))
    return "\n".join(lines) + "\n"


def parse_pair(text: str, graph: MultiGraph) -> FlowPair:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "nzflow-pair 1":
        raise GraphParseError("not an nzflow pair file (bad magic line)")
    if len(lines) < 3 or not lines[1].startswith("p ") or not lines[2].startswith("q "):
        raise GraphParseError("missing p/q header lines")
    p, q = int(lines[1][2:]), int(lines[2][2:])
    body = [ln for ln in lines[3:] if ln.strip()]
    if len(body) != graph.edge_count:
        raise GraphParseError(
            f"pair file has {len(body)} edge lines, graph has {graph.edge_count}")
    phi2, phi_big = [], []
    for ln in body:
        toks = ln.split()
        if len(toks) != 2:
            raise GraphParseError(f"bad pair line {ln!r}")
        phi2.append(int(toks[0]))
        phi_big.append(int(toks[1]))
    fp = FlowPair(graph, p, q, tuple(phi2), tuple(phi_big))
    validate_pair(fp)
    return fp
