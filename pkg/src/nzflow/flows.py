"""Exact rational flow values: norms, verification, 2-D norm transforms, file IO.

All arithmetic is exact (fractions.Fraction); no floating point enters any
flow computation.  A FlowAssignment stores one d-dimensional vector per edge,
always relative to the graph's canonical tail->head orientation; a flow that
"uses" an edge backwards is represented by a negated vector, never by a
mutated orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolation, GraphParseError
from .graphs import MultiGraph

MANHATTAN = "manhattan"
CHEBYSHEV = "chebyshev"
NORM_KINDS = (MANHATTAN, CHEBYSHEV)


def norm(vec, kind: str) -> Fraction:
    """Manhattan (L1) or Chebyshev (L-infinity) norm, exactly."""
    if kind == MANHATTAN:
        return sum((abs(Fraction(x)) for x in vec), Fraction(0))
    if kind == CHEBYSHEV:
        return max(abs(Fraction(x)) for x in vec) if vec else Fraction(0)
    raise ContractViolation(f"unknown norm kind {kind!r}")


@dataclass(frozen=True)
class FlowAssignment:
    """A d-dimensional flow candidate on a graph, with its norm window.

    values[e] is the vector on edge e in the canonical orientation.  The
    admissible window for every edge norm is [1, r-1].
    """

    graph: MultiGraph
    dim: int
    norm_kind: str
    r: Fraction
    values: tuple[tuple[Fraction, ...], ...]

    def __init__(self, graph, dim, norm_kind, r, values):
        if norm_kind not in NORM_KINDS:
            raise ContractViolation(f"unknown norm kind {norm_kind!r}")
        if len(values) != graph.edge_count:
            raise ContractViolation(
                f"flow defines {len(values)} edges, graph has {graph.edge_count}")
        vals = []
        for e, vec in enumerate(values):
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) != dim:
                raise ContractViolation(
                    f"edge {e}: vector has {len(vec)} coordinates, expected {dim}")
            vals.append(vec)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "norm_kind", norm_kind)
        object.__setattr__(self, "r", Fraction(r))
        object.__setattr__(self, "values", tuple(vals))

    @property
    def window(self) -> tuple[Fraction, Fraction]:
        return Fraction(1), self.r - 1


@dataclass(frozen=True)
class VerificationReport:
    """Exhaustive list of violated constraints (not fail-fast)."""

    conservation_violations: tuple[tuple[int, int, Fraction], ...]  # (vertex, coord, sum)
    window_violations: tuple[tuple[int, Fraction], ...]             # (edge, norm value)

    @property
    def valid(self) -> bool:
        return not self.conservation_violations and not self.window_violations


def verify(fa: FlowAssignment) -> VerificationReport:
    """Check conservation at every vertex/coordinate and the window on every edge."""
    g = fa.graph
    d = fa.dim
    sums = [[Fraction(0)] * d for _ in range(g.vertex_count)]
    for e, (u, v) in enumerate(g.edges):
        vec = fa.values[e]
        if u == v:
            continue  # a loop enters and leaves: no net contribution
        for i in range(d):
            sums[v][i] += vec[i]
            sums[u][i] -= vec[i]
    cons = tuple((w, i, sums[w][i])
                 for w in range(g.vertex_count)
                 for i in range(d) if sums[w][i] != 0)
    lo, hi = fa.window
    win = []
    for e in range(g.edge_count):
        nv = norm(fa.values[e], fa.norm_kind)
        if not lo <= nv <= hi:
            win.append((e, nv))
    return VerificationReport(cons, tuple(win))


def _map_values(fa: FlowAssignment, fn, new_kind: str) -> FlowAssignment:
    return FlowAssignment(fa.graph, 2, new_kind, fa.r,
                          tuple(fn(x, y) for x, y in fa.values))


def cheb_to_manh_2d(fa: FlowAssignment) -> FlowAssignment:
    """Map a 2-D Chebyshev flow to a Manhattan flow with the same window.

    Applies (x, y) -> ((x-y)/2, (x+y)/2), whose Manhattan norm equals the
    input's Chebyshev norm.  Inverse of manh_to_cheb_2d.
    """
    if fa.dim != 2:
        raise ContractViolation("cheb_to_manh_2d requires dimension 2")
    if fa.norm_kind != CHEBYSHEV:
        raise ContractViolation("input must be a Chebyshev flow")
    return _map_values(fa, lambda x, y: ((x - y) / 2, (x + y) / 2), MANHATTAN)


def manh_to_cheb_2d(fa: FlowAssignment) -> FlowAssignment:
    """Map a 2-D Manhattan flow to a Chebyshev flow with the same window.

    Applies (x, y) -> (x+y, y-x), whose Chebyshev norm equals the input's
    Manhattan norm.  Inverse of cheb_to_manh_2d.
    """
    if fa.dim != 2:
        raise ContractViolation("manh_to_cheb_2d requires dimension 2")
    if fa.norm_kind != MANHATTAN:
        raise ContractViolation("input must be a Manhattan flow")
    return _map_values(fa, lambda x, y: (x + y, y - x), CHEBYSHEV)


# ---------------------------------------------------------------------------
# flow file format: bit-exact round trip

def format_flow(fa: FlowAssignment) -> str:
    lines = [
        "nzflow-flow 1",
        f"graph_hash {fa.graph.graph_hash()}",
        f"dim {fa.dim}",
        f"norm {fa.norm_kind}",
        f"r {fa.r.numerator}/{fa.r.denominator}",
    ]
    for e, (u, v) in enumerate(fa.graph.edges):
        coords = " ".join(f"{c.numerator}/{c.denominator}" for c in fa.values[e])
        lines.append(f"{u} {v} : {coords}")
    return "\n".join(lines) + "\n"


def parse_flow(text: str, graph: MultiGraph) -> FlowAssignment:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "nzflow-flow 1":
        raise GraphParseError("not an nzflow flow file (bad magic line)")

    def header(idx, key):
        parts = lines[idx].split(None, 1)
        if len(parts) != 2 or parts[0] != key:
            raise GraphParseError(f"expected '{key} ...' on line {idx + 1}")
        return parts[1].strip()

    ghash = header(1, "graph_hash")
    if ghash != graph.graph_hash():
        raise ContractViolation("flow file was written for a different graph")
    dim = int(header(2, "dim"))
    kind = header(3, "norm")
    rnum, rden = header(4, "r").split("/")
    r = Fraction(int(rnum), int(rden))
    body = [ln for ln in lines[5:] if ln.strip()]
    if len(body) != graph.edge_count:
        raise GraphParseError(
            f"flow file has {len(body)} edge lines, graph has {graph.edge_count}")
    values = []
    for e, ln in enumerate(body):
        head, _, tail = ln.partition(":")
        ends = head.split()
        if len(ends) != 2 or (int(ends[0]), int(ends[1])) != graph.edges[e]:
            raise GraphParseError(f"edge line {e} does not match graph edge {graph.edges[e]}")
        coords = []
        for tok in tail.split():
            num, _, den = tok.partition("/")
            coords.append(Fraction(int(num), int(den) if den else 1))
        values.append(tuple(coords))
    return FlowAssignment(graph, dim, kind, r, values)
