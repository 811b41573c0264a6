"""Cycle covers and the flows built from them.

Covers come in two flavours: oriented k-cycle double covers (each edge occurs
once with each sign across the collection) and plain m-cycle k-covers
(orientation ignored, each edge covered exactly k times).  Constructions
assign fixed rational vectors to the cycles and sum them per edge; every
construction verifies its output window before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolation, GraphParseError, NoFlowPossible
from .flows import CHEBYSHEV, MANHATTAN, FlowAssignment, verify
from .graphs import MultiGraph, cycle_basis, find_bridges, orient_even_edges
from .search import _static_edge_order


@dataclass(frozen=True)
class OrientedCycle:
    """Signed edge map of an even subgraph: edge -> {-1, +1} on its support.

    Sign +1 means the cycle traverses the edge in its canonical direction.
    The signed boundary is zero at every vertex.
    """

    signs: tuple[tuple[int, int], ...]

    def __init__(self, signs):
        items = tuple(sorted((int(e), int(s)) for e, s in
                             (signs.items() if isinstance(signs, dict) else signs)
                             if s != 0))
        if any(s not in (-1, 1) for _, s in items):
            raise ContractViolation("cycle signs must be -1 or +1")
        object.__setattr__(self, "signs", items)

    def sign(self, e: int) -> int:
        for f, s in self.signs:
            if f == e:
                return s
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.signs)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(e for e, _ in self.signs)


@dataclass(frozen=True)
class CycleCover:
    """m oriented cycles covering each edge exactly k times (with sign
    structure ignored for plain covers)."""

    graph: MultiGraph
    cycles: tuple[OrientedCycle, ...]
    k: int

    def __init__(self, graph, cycles, k):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "cycles", tuple(cycles))
        object.__setattr__(self, "k", int(k))

    @property
    def m(self) -> int:
        return len(self.cycles)


def boundary_violations(g: MultiGraph, cycle: OrientedCycle) -> list[int]:
    """Vertices where the signed boundary of the cycle is non-zero."""
    bal = [0] * g.vertex_count
    for e, s in cycle.signs:
        u, v = g.edges[e]
        if u == v:
            continue
        bal[v] += s
        bal[u] -= s
    return [w for w in range(g.vertex_count) if bal[w] != 0]


def validate_cover(cover: CycleCover, oriented: bool = False) -> None:
    """Raise ContractViolation naming the first offending edge or vertex."""
    g = cover.graph
    for idx, cyc in enumerate(cover.cycles):
        bad = boundary_violations(g, cyc)
        if bad:
            raise ContractViolation(
                f"cycle {idx} has non-zero boundary at vertex {bad[0]}")
    counts = [0] * g.edge_count
    plus = [0] * g.edge_count
    minus = [0] * g.edge_count
    for cyc in cover.cycles:
        for e, s in cyc.signs:
            counts[e] += 1
            if s > 0:
                plus[e] += 1
            else:
                minus[e] += 1
    for e in range(g.edge_count):
        if counts[e] != cover.k:
            raise ContractViolation(
                f"edge {e} is covered {counts[e]} times, expected {cover.k}")
        if oriented and (plus[e] != 1 or minus[e] != 1):
            raise ContractViolation(
                f"edge {e} does not occur once with each orientation")


def orient_even_subgraph(g: MultiGraph, edges) -> OrientedCycle:
    """Deterministically orient an even subgraph as a union of closed trails."""
    return OrientedCycle(orient_even_edges(g, edges))


# ---------------------------------------------------------------------------
# GF(2) cycle space helpers

def _gf2_basis_masks(g: MultiGraph) -> list[int]:
    return [sum(1 << e for e in cyc) for cyc in
            ({e for e, _ in c.items()} for c in cycle_basis(g))]


def _gf2_cover_solve(basis: list[int], required: int) -> int | None:
    """A cycle-space member whose support contains `required`, or None.

    Solves the linear system (member restricted to the required edges is
    all-ones) by Gaussian elimination over GF(2); free variables are zero,
    so the returned member is deterministic.
    """
    rows = []  # (coefficient bitmask over basis indices, rhs bit)
    e = 0
    req = required
    while req:
        if req & 1:
            coeff = 0
            for i, b in enumerate(basis):
                if (b >> e) & 1:
                    coeff |= 1 << i
            rows.append((coeff, 1))
        req >>= 1
        e += 1
    pivots: dict[int, tuple[int, int]] = {}
    for coeff, rhs in rows:
        for pv, (pc, pr) in pivots.items():
            if (coeff >> pv) & 1:
                coeff ^= pc
                rhs ^= pr
        if coeff == 0:
            if rhs:
                return None
            continue
        pivots[coeff.bit_length() - 1] = (coeff, rhs)
    sol = 0
    for pv in sorted(pivots, reverse=True):
        pc, pr = pivots[pv]
        bit = pr
        c = pc & ~(1 << pv)
        while c:
            low = c & -c
            if (sol >> (low.bit_length() - 1)) & 1:
                bit ^= 1
            c ^= low
        if bit:
            sol |= 1 << pv
    member = 0
    for i, b in enumerate(basis):
        if (sol >> i) & 1:
            member ^= b
    return member


def _mask_to_edges(mask: int) -> frozenset[int]:
    out = set()
    e = 0
    while mask:
        if mask & 1:
            out.add(e)
        mask >>= 1
        e += 1
    return frozenset(out)


def find_z2cube_flow(g: MultiGraph) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Three even subgraphs whose union covers every edge.

    Equivalent to a nowhere-zero flow over the group of 3-bit vectors: the
    coordinate supports are the three cycles.  Enumerates pairs of cycle-space
    members (heaviest first) and solves for a third covering the remainder by
    Gaussian elimination; existence is guaranteed for bridgeless graphs, so
    the first-found triple terminates the scan.
    """
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; no nowhere-zero flow exists")
    full = (1 << g.edge_count) - 1
    if full == 0:
        return (frozenset(), frozenset(), frozenset())
    basis = _gf2_basis_masks(g)
    members = [0]
    for b in basis:
        members.extend(m ^ b for m in list(members))
    members = sorted(set(members), key=lambda m: (-bin(m).count("1"), m))
    for c1 in members:
        for c2 in members:
            c3 = _gf2_cover_solve(basis, full & ~(c1 | c2))
            if c3 is not None:
                return (_mask_to_edges(c1), _mask_to_edges(c2), _mask_to_edges(c3))
    raise AssertionError(
        "no triple of cycles covers the graph; this contradicts the 8-flow "
        "theorem and indicates a bug")


# ---------------------------------------------------------------------------
# oriented k-cycle double cover search

@dataclass
class SearchOutcome:
    """Result of a budgeted search: `exhaustive` distinguishes a proven
    nonexistence from running out of budget."""

    value: object | None
    exhaustive: bool
    nodes: int = 0


def find_k_ocdc(g: MultiGraph, k: int, node_budget: int | None = None) -> SearchOutcome:
    """Search for an oriented k-cycle double cover.

    Each edge is assigned an ordered pair (a, b) of distinct cycle indices:
    it occurs canonically oriented in cycle a and reversed in cycle b.
    Symmetry over cycle relabelling is broken by a least-new-index rule.
    A None value with exhaustive=True is a proof of nonexistence.
    """
    if k < 3:
        raise ContractViolation("an OCDC needs at least 3 cycles")
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; no cycle double cover exists")
    n, m = g.vertex_count, g.edge_count
    ends = []
    for u, v in g.edges:
        ends.append(() if u == v else ((u, -1), (v, +1)))
    # close-early static order mirrors the flow search
    order = _static_edge_order(g, {e for e in range(m) if not ends[e]})
    assign: list[tuple[int, int] | None] = [None] * m
    for e in range(m):
        if g.edges[e][0] == g.edges[e][1]:
            assign[e] = (0, 1)  # a loop is balanced in any pair of cycles
    net = [[0] * k for _ in range(n)]
    remv = [0] * n
    for e in range(m):
        for w, _ in ends[e]:
            remv[w] += 1
    nodes = 0
    exhausted = True

    def pairs(max_used: int):
        top = min(k - 1, max_used + 1)
        for a in range(top + 1):
            for b in range(min(k - 1, max(max_used, a) + 1) + 1):
                if b != a:
                    yield (a, b)

    def ok_vertex(w) -> bool:
        r = remv[w]
        row = net[w]
        for i in range(k):
            x = row[i]
            if (x if x >= 0 else -x) > r:
                return False
        return True

    def rec(pos: int, max_used: int) -> bool:
        nonlocal nodes, exhausted
        while pos < len(order) and assign[order[pos]] is not None:
            pos += 1
        if pos == len(order):
            return True
        e = order[pos]
        (u, su), (v, sv) = ends[e]
        for a, b in pairs(max_used):
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = False
                return False
            assign[e] = (a, b)
            net[u][a] += su
            net[u][b] -= su
            net[v][a] += sv
            net[v][b] -= sv
            remv[u] -= 1
            remv[v] -= 1
            if ok_vertex(u) and ok_vertex(v):
                if rec(pos + 1, max(max_used, a, b)):
                    return True
            net[u][a] -= su
            net[u][b] += su
            net[v][a] -= sv
            net[v][b] += sv
            remv[u] += 1
            remv[v] += 1
            assign[e] = None
            if not exhausted:
                return False
        return False

    found = rec(0, 1 if any(a is not None for a in assign) else -1)
    if not found:
        return SearchOutcome(None, exhausted, nodes)
    cycles = []
    for i in range(k):
        signs = {}
        for e in range(m):
            a, b = assign[e]
            if a == i:
                signs[e] = +1
            elif b == i:
                signs[e] = -1
        cycles.append(OrientedCycle(signs))
    cover = CycleCover(g, cycles, 2)
    validate_cover(cover, oriented=True)
    return SearchOutcome(cover, True, nodes)


def find_cycle_cover(g: MultiGraph, m: int, k: int,
                     node_budget: int | None = None) -> SearchOutcome:
    """Search for an (unoriented) m-cycle k-cover; cycles come back oriented.

    Multisets of cycle-space members are enumerated with non-decreasing
    member index (members sorted heaviest first); edge coverage counts prune.
    """
    if m < 1 or k < 1:
        raise ContractViolation("m and k must be positive")
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; no cycle cover exists")
    ecount = g.edge_count
    basis = _gf2_basis_masks(g)
    if len(basis) > 22:
        raise ContractViolation(
            "cycle space too large for exhaustive cover enumeration")
    members = [0]
    for b in basis:
        members.extend(mm ^ b for mm in list(members))
    members = sorted(set(members), key=lambda mm: (-bin(mm).count("1"), mm))
    sizes = [bin(mm).count("1") for mm in members]
    counts = [0] * ecount
    chosen: list[int] = []
    nodes = 0
    exhausted = True

    def rec(start: int, slots: int) -> bool:
        nonlocal nodes, exhausted
        if slots == 0:
            return all(c == k for c in counts)
        deficit = 0
        worst = 0
        for e in range(ecount):
            miss = k - counts[e]
            if miss < 0:
                return False
            deficit += miss
            if miss > worst:
                worst = miss
        if worst > slots:
            return False
        for idx in range(start, len(members)):
            if deficit > slots * sizes[idx]:
                break  # members only get smaller
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = False
                return False
            mm = members[idx]
            bad = False
            mmm = mm
            e = 0
            touched = []
            while mmm:
                if mmm & 1:
                    counts[e] += 1
                    touched.append(e)
                    if counts[e] > k:
                        bad = True
                mmm >>= 1
                e += 1
            if not bad and rec(idx, slots - 1):
                chosen.append(idx)
                return True
            for e in touched:
                counts[e] -= 1
            if not exhausted:
                return False
        return False

    found = rec(0, m)
    if not found:
        return SearchOutcome(None, exhausted, nodes)
    cycles = [orient_even_subgraph(g, _mask_to_edges(members[i]))
              for i in reversed(chosen)]
    cover = CycleCover(g, cycles, k)
    validate_cover(cover)
    return SearchOutcome(cover, True, nodes)


# ---------------------------------------------------------------------------
# flows from covers

def _flow_from_cycle_vectors(g: MultiGraph, cycles, vectors, d: int,
                             norm_kind: str, r: Fraction) -> FlowAssignment:
    values = [[Fraction(0)] * d for _ in range(g.edge_count)]
    for cyc, vec in zip(cycles, vectors):
        for e, s in cyc.signs:
            row = values[e]
            for i in range(d):
                row[i] += s * vec[i]
    fa = FlowAssignment(g, d, norm_kind, r, tuple(tuple(v) for v in values))
    report = verify(fa)
    if not report.valid:
        detail = report.window_violations or report.conservation_violations
        raise ContractViolation(f"cover does not yield a valid flow: {detail[0]}")
    return fa


def flow_from_4ocdc(cover: CycleCover) -> FlowAssignment:
    """(2,2)-ChNZF from a 4-OCDC: the cycles carry the four corner vectors
    (+-1/2, +-1/2); every edge value is a difference of two corners, with
    Chebyshev norm exactly 1."""
    if cover.m != 4:
        raise ContractViolation("need exactly 4 cycles")
    validate_cover(cover, oriented=True)
    h = Fraction(1, 2)
    corners = [(h, h), (h, -h), (-h, h), (-h, -h)]
    return _flow_from_cycle_vectors(cover.graph, cover.cycles, corners,
                                    2, CHEBYSHEV, Fraction(2))


def flow_from_5ocdc_3d(cover: CycleCover) -> FlowAssignment:
    """(2,3)-MNZF from a 5-OCDC: cycles carry five points at mutual Manhattan
    distance 1; each edge value is the difference of its two cycles' points."""
    if cover.m != 5:
        raise ContractViolation("need exactly 5 cycles")
    validate_cover(cover, oriented=True)
    h = Fraction(1, 2)
    z = Fraction(0)
    points = [(h, z, z), (-h, z, z), (z, h, z), (z, -h, z), (z, z, h)]
    return _flow_from_cycle_vectors(cover.graph, cover.cycles, points,
                                    3, MANHATTAN, Fraction(2))


def flow_from_3cover_q(g: MultiGraph, cycles) -> FlowAssignment:
    """(5/2,3)-MNZF from three covering cycles.

    The three cycles (any even subgraphs whose union is E) are oriented
    deterministically and carry the fixed vectors with pairwise sums/
    differences of Manhattan norm in {1, 5/4, 3/2}.
    """
    triple = list(cycles)
    if len(triple) != 3:
        raise ContractViolation("need exactly 3 cycles")
    covered = set()
    for c in triple:
        covered |= set(c)
    missing = [e for e in range(g.edge_count) if e not in covered]
    if missing:
        raise ContractViolation(f"edge {missing[0]} is not covered by any cycle")
    oriented = [orient_even_subgraph(g, c) for c in triple]
    q8 = Fraction(3, 8)
    q4 = Fraction(-1, 4)
    vectors = [(q8, q8, q4), (q8, q4, q8), (q4, q8, q8)]
    return _flow_from_cycle_vectors(g, oriented, vectors, 3, MANHATTAN,
                                    Fraction(5, 2))


def flow_from_cover_basis(cover: CycleCover, n: int) -> FlowAssignment:
    """Manhattan flow in dimension m-n from an m-cycle k-cover: the first
    m-n cycles carry scaled canonical basis vectors; window [1, k/(k-n)]."""
    if not 0 <= n < cover.k:
        raise ContractViolation("need 0 <= n < k")
    validate_cover(cover)
    d = cover.m - n
    if d < 1:
        raise ContractViolation("dimension m - n must be positive")
    scale = Fraction(1, cover.k - n)
    vectors = []
    for i in range(d):
        vec = [Fraction(0)] * d
        vec[i] = scale
        vectors.append(tuple(vec))
    r = 1 + Fraction(cover.k, cover.k - n)
    return _flow_from_cycle_vectors(cover.graph, cover.cycles[:d], vectors,
                                    d, MANHATTAN, r)


# ---------------------------------------------------------------------------
# Hadamard matrices

@dataclass(frozen=True)
class HadamardMatrix:
    order: int
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ContractViolation("Hadamard matrix must be square")
        if any(x not in (-1, 1) for row in rows for x in row):
            raise ContractViolation("Hadamard entries must be +-1")
        for i in range(n):
            for j in range(n):
                dot = sum(rows[i][t] * rows[j][t] for t in range(n))
                if dot != (n if i == j else 0):
                    raise ContractViolation("H * H^T != n * I")
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "rows", rows)


def hadamard_sylvester(order: int) -> HadamardMatrix:
    """Sylvester doubling: supported orders are the powers of two (the order-4
    matrix equals the classical printed pattern)."""
    if order < 1 or order & (order - 1):
        raise ContractViolation(
            f"order {order} not supported; Sylvester construction covers "
            "powers of two (1, 2, 4, 8, ...)")
    rows = [[1]]
    while len(rows) < order:
        rows = ([r + r for r in rows] +
                [r + [-x for x in r] for r in rows])
    return HadamardMatrix(rows)


def flow_from_cdc_hadamard(cdc: CycleCover, h: HadamardMatrix) -> FlowAssignment:
    """(2, m-1)-MNZF from an m-cycle double cover and a Hadamard matrix of
    order m-1: the first m-1 cycles carry the scaled Hadamard rows, the last
    cycle carries nothing; every edge ends with Manhattan norm exactly 1."""
    if cdc.k != 2:
        raise ContractViolation("need a double cover (k = 2)")
    if h.order != cdc.m - 1:
        raise ContractViolation(
            f"Hadamard order {h.order} does not match m - 1 = {cdc.m - 1}")
    validate_cover(cdc)
    d = h.order
    scale = Fraction(1, d)
    vectors = [tuple(scale * x for x in row) for row in h.rows]
    return _flow_from_cycle_vectors(cdc.graph, cdc.cycles[:d], vectors,
                                    d, MANHATTAN, Fraction(2))


# ---------------------------------------------------------------------------
# cover file format

def format_cover(cover: CycleCover) -> str:
    lines = ["nzflow-cover 1", f"{cover.m} {cover.k}"]
    for cyc in cover.cycles:
        lines.append(" ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in cyc.signs))
    return "\n".join(lines) + "\n"


def parse_cover(text: str, graph: MultiGraph) -> CycleCover:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "nzflow-cover 1":
        raise GraphParseError("not an nzflow cover file (bad magic line)")
    if len(lines) < 2:
        raise GraphParseError("missing cover header line")
    head = lines[1].split()
    if len(head) != 2:
        raise GraphParseError(f"bad cover header {lines[1]!r}")
    m, k = int(head[0]), int(head[1])
    body = lines[2:2 + m]
    if len(body) != m:
        raise GraphParseError(f"expected {m} cycle lines, found {len(body)}")
    cycles = []
    for ln in body:
        signs = {}
        for tok in ln.split():
            if tok[0] not in "+-" or not tok[1:].isdigit():
                raise GraphParseError(f"bad signed edge token {tok!r}")
            e = int(tok[1:])
            if e >= graph.edge_count:
                raise GraphParseError(f"edge id {e} out of range")
            signs[e] = 1 if tok[0] == "+" else -1
        cycles.append(OrientedCycle(signs))
    return CycleCover(graph, cycles, k)
