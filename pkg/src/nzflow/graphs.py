"""Multigraph representation, parsing, generators and structural predicates.

Vertices are integers 0..n-1.  Edges are (tail, head) pairs stored in a fixed
list; the list position is the edge identity.  Every non-loop edge is stored
with tail < head, which fixes the reference orientation used by all flow
values elsewhere in the package.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass

from .errors import ContractViolation, GraphParseError


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph with stable edge ids and a canonical orientation.

    Parallel edges and loops are permitted.  Instances are immutable values:
    two graphs compare equal iff they have the same vertex count and the same
    edge list (order included).
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertex_count, edges):
        n = int(vertex_count)
        if n < 0:
            raise ContractViolation("vertex_count must be non-negative")
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ContractViolation(f"edge ({u},{v}) out of range for {n} vertices")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def vertex_edges(self) -> list[list[int]]:
        """Incident edge ids per vertex (loops listed twice)."""
        inc = [[] for _ in range(self.vertex_count)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v or (u, v) in seen:
                return False
            seen.add((u, v))
        return True

    def is_cubic(self) -> bool:
        return self.vertex_count > 0 and all(d == 3 for d in self.degrees())

    def graph_key(self) -> str:
        """Canonical cache key: vertex count plus the sorted edge list."""
        body = ",".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"{self.vertex_count}:{body}"

    def graph_hash(self) -> str:
        return hashlib.sha256(self.graph_key().encode("ascii")).hexdigest()


# ---------------------------------------------------------------------------
# parsing / formatting

_G6_HEADER = ">>graph6<<"


def _g6_byte(text: str, i: int) -> int:
    c = ord(text[i]) - 63
    if not 0 <= c <= 63:
        raise GraphParseError(f"invalid graph6 character {text[i]!r}", offset=i)
    return c


def parse_graph6(text: str) -> MultiGraph:
    """Decode one graph6 line (simple graphs; 63-offset printable encoding).

    Bits fill the upper triangle column by column: (0,1), (0,2), (1,2), ...
    """
    line = text.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    if not line:
        raise GraphParseError("empty graph6 line", offset=0)
    pos = 0
    first = _g6_byte(line, pos)
    if first < 63:
        n = first
        pos = 1
    else:
        if len(line) >= 2 and ord(line[1]) == 126:  # '~~': 36-bit order
            if len(line) < 8:
                raise GraphParseError("truncated graph6 size header", offset=len(line))
            vals = [_g6_byte(line, i) for i in range(2, 8)]
            n = 0
            for v in vals:
                n = (n << 6) | v
            pos = 8
        else:
            if len(line) < 4:
                raise GraphParseError("truncated graph6 size header", offset=len(line))
            vals = [_g6_byte(line, i) for i in range(1, 4)]
            n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
            pos = 4
    need = n * (n - 1) // 2
    body = line[pos:]
    want_chars = (need + 5) // 6
    if len(body) < want_chars:
        raise GraphParseError("truncated graph6 bit-vector", offset=pos + len(body))
    if len(body) > want_chars:
        raise GraphParseError("trailing data after graph6 bit-vector", offset=pos + want_chars)
    bits = []
    for i in range(want_chars):
        c = _g6_byte(line, pos + i)
        for b in range(5, -1, -1):
            bits.append((c >> b) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return MultiGraph(n, edges)


def parse_edge_list(text: str) -> MultiGraph:
    """Plain multigraph interchange format: header "n m", then m lines "u v"."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise GraphParseError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2 or not all(tok.lstrip("-").isdigit() for tok in head):
        raise GraphParseError(f"bad edge-list header {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for k, ln in enumerate(lines[1:]):
        toks = ln.split()
        if len(toks) != 2 or not all(t.lstrip("-").isdigit() for t in toks):
            raise GraphParseError(f"bad edge line {ln!r} (line {k + 2})")
        edges.append((int(toks[0]), int(toks[1])))
    try:
        return MultiGraph(n, edges)
    except ContractViolation as exc:
        raise GraphParseError(str(exc)) from exc


def format_edge_list(g: MultiGraph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# named generators

def _petersen_edges():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def _k4_edges():
    return [(i, j) for i in range(4) for j in range(i + 1, 4)]


def _flower_j5_edges():
    # five claws (hub 4i, leaves 4i+1..4i+3); petals: 5-cycle on the first
    # leaves, one 10-cycle through the remaining two leaf families
    edges = []
    for i in range(5):
        h, x, y, z = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(h, x), (h, y), (h, z)]
    for i in range(5):
        edges.append((4 * i + 1, 4 * ((i + 1) % 5) + 1))
    for i in range(4):
        edges.append((4 * i + 2, 4 * (i + 1) + 2))
        edges.append((4 * i + 3, 4 * (i + 1) + 3))
    edges.append((4 * 4 + 2, 3))   # y4 - z0
    edges.append((4 * 4 + 3, 2))   # z4 - y0
    return edges

# 18-vertex snarks obtained as dot products of two Petersen graphs; edge
# lists frozen from that construction.  blanusa1 is the class with
# automorphism group of order 8 (20 perfect matchings), blanusa2 the one
# of order 4 (19 perfect matchings).
_BLANUSA1_EDGES = [
    (0, 4), (0, 5), (0, 12), (1, 2), (1, 6), (1, 13), (2, 3), (2, 7),
    (3, 4), (3, 10), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9),
    (8, 14), (10, 11), (10, 15), (11, 12), (11, 16), (12, 17), (13, 15),
    (13, 16), (14, 16), (14, 17), (15, 17),
]
_BLANUSA2_EDGES = [
    (0, 4), (0, 5), (0, 12), (1, 2), (1, 6), (1, 13), (2, 7), (2, 10),
    (3, 4), (3, 8), (3, 14), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9),
    (7, 9), (10, 11), (10, 15), (11, 12), (11, 16), (12, 17), (13, 15),
    (13, 16), (14, 16), (14, 17), (15, 17),
]

_GENERATORS = {
    "petersen": (10, _petersen_edges),
    "k4": (4, _k4_edges),
    "blanusa1": (18, lambda: _BLANUSA1_EDGES),
    "blanusa2": (18, lambda: _BLANUSA2_EDGES),
    "flower_j5": (20, _flower_j5_edges),
}

# (order, girth, 3-edge-colourable) expected per generator; checked on build
_VALIDATION = {
    "petersen": (10, 5, False),
    "k4": (4, 3, True),
    "blanusa1": (18, 5, False),
    "blanusa2": (18, 5, False),
    "flower_j5": (20, 5, False),
}


def named_graph(name: str) -> MultiGraph:
    """Build one of the fixed generators; validates structure on construction."""
    if name not in _GENERATORS:
        known = ", ".join(sorted(_GENERATORS))
        raise ContractViolation(f"unknown graph name {name!r}; supported: {known}")
    n, maker = _GENERATORS[name]
    g = MultiGraph(n, maker())
    order, want_girth, colourable = _VALIDATION[name]
    if g.vertex_count != order or not g.is_cubic() or not g.is_simple():
        raise AssertionError(f"generator {name} produced a malformed graph")
    if find_bridges(g):
        raise AssertionError(f"generator {name} produced a bridged graph")
    if girth(g) != want_girth:
        raise AssertionError(f"generator {name}: girth {girth(g)} != {want_girth}")
    if (three_edge_colouring(g) is not None) != colourable:
        raise AssertionError(f"generator {name}: wrong colourability class")
    return g


def named_graph_names() -> list[str]:
    return sorted(_GENERATORS)


# ---------------------------------------------------------------------------
# structural predicates

def connected_components(g: MultiGraph) -> list[list[int]]:
    inc = g.vertex_edges()
    seen = [False] * g.vertex_count
    comps = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for e in inc[v]:
                u, w = g.edges[e]
                other = w if v == u else u
                if not seen[other]:
                    seen[other] = True
                    stack.append(other)
        comps.append(sorted(comp))
    return comps


def is_connected(g: MultiGraph) -> bool:
    return len(connected_components(g)) <= 1


def find_bridges(g: MultiGraph) -> frozenset[int]:
    """Cut edges, via one iterative DFS low-link pass.

    A parallel edge or a loop is never a bridge: only the specific tree edge
    id is excluded when back edges are considered.
    """
    n = g.vertex_count
    inc = g.vertex_edges()
    disc = [-1] * n
    low = [0] * n
    bridges = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        # stack entries: (vertex, incoming edge id, iterator index)
        stack = [(root, -1, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, in_edge, i = stack[-1]
            if i < len(inc[v]):
                stack[-1] = (v, in_edge, i + 1)
                e = inc[v][i]
                if e == in_edge or g.is_loop(e):
                    continue
                u, w = g.edges[e]
                other = w if v == u else u
                if disc[other] == -1:
                    disc[other] = low[other] = timer
                    timer += 1
                    stack.append((other, e, 0))
                else:
                    low[v] = min(low[v], disc[other])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.add(in_edge)
    return frozenset(bridges)


def is_two_connected(g: MultiGraph) -> bool:
    """No articulation vertex, connected, at least 3 vertices."""
    n = g.vertex_count
    if n < 3 or not is_connected(g):
        return False
    inc = g.vertex_edges()
    disc = [-1] * n
    low = [0] * n
    timer = 0
    root = 0
    # iterative articulation-point DFS from vertex 0
    stack = [(0, -1, 0)]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    articulation = False
    while stack:
        v, parent_edge, i = stack[-1]
        if i < len(inc[v]):
            stack[-1] = (v, parent_edge, i + 1)
            e = inc[v][i]
            if e == parent_edge or g.is_loop(e):
                continue
            a, b = g.edges[e]
            other = b if v == a else a
            if disc[other] == -1:
                disc[other] = low[other] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((other, e, 0))
            else:
                low[v] = min(low[v], disc[other])
        else:
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    articulation = True
    if root_children > 1:
        articulation = True
    return not articulation


def girth(g: MultiGraph) -> int | None:
    """Length of a shortest cycle; None for forests. Loops count as 1-cycles."""
    best = None
    if any(g.is_loop(e) for e in range(g.edge_count)):
        return 1
    seen = {}
    for e, (u, v) in enumerate(g.edges):
        if (u, v) in seen:
            return 2
        seen[(u, v)] = e
    # BFS from every vertex, ignoring the edge we arrived by (edge id)
    inc = g.vertex_edges()
    for s in range(g.vertex_count):
        dist = {s: 0}
        queue = deque([(s, -1)])
        while queue:
            v, in_edge = queue.popleft()
            for e in inc[v]:
                if e == in_edge:
                    continue
                a, b = g.edges[e]
                other = b if v == a else a
                if other not in dist:
                    dist[other] = dist[v] + 1
                    queue.append((other, e))
                else:
                    cyc = dist[v] + dist[other] + 1
                    best = cyc if best is None else min(best, cyc)
    return best


@dataclass(frozen=True)
class EdgeColouring3:
    """Proper 3-edge-colouring: colours[e] in {1, 2, 3}."""

    colours: tuple[int, ...]

    def colour(self, e: int) -> int:
        return self.colours[e]


def three_edge_colouring(g: MultiGraph) -> EdgeColouring3 | None:
    """Exhaustive deterministic proper 3-edge-colouring of a cubic graph.

    Returns None iff no proper colouring with 3 colours exists.
    """
    if not g.is_cubic() or any(g.is_loop(e) for e in range(g.edge_count)):
        raise ContractViolation("three_edge_colouring requires a loopless cubic graph")
    m = g.edge_count
    inc = g.vertex_edges()
    # adjacency between edges via shared endpoints
    adj = [set() for _ in range(m)]
    for edges_at_v in inc:
        for e in edges_at_v:
            for f in edges_at_v:
                if e != f:
                    adj[e].add(f)
    adj = [tuple(sorted(s)) for s in adj]
    # order edges to keep the frontier connected: BFS over edges
    order = []
    placed = [False] * m
    for seed in range(m):
        if placed[seed]:
            continue
        queue = [seed]
        placed[seed] = True
        while queue:
            e = queue.pop(0)
            order.append(e)
            for f in adj[e]:
                if not placed[f]:
                    placed[f] = True
                    queue.append(f)
    colours = [0] * m

    def dfs(pos: int) -> bool:
        if pos == m:
            return True
        e = order[pos]
        used = {colours[f] for f in adj[e] if colours[f]}
        # colour permutations act on all proper colourings: pin the first edge
        choices = (1,) if pos == 0 else (1, 2, 3)
        for c in choices:
            if c in used:
                continue
            colours[e] = c
            if dfs(pos + 1):
                return True
            colours[e] = 0
        return False

    if dfs(0):
        return EdgeColouring3(tuple(colours))
    return None


def perfect_matchings(g: MultiGraph):
    """Yield every perfect matching (as a frozenset of edge ids) exactly once.

    Branches on the lowest uncovered vertex, so each matching appears once;
    order is deterministic (ascending edge ids at each branch).
    """
    n = g.vertex_count
    if n % 2 == 1:
        return
    inc = g.vertex_edges()
    covered = [False] * n
    chosen = []

    def rec(start: int):
        v = start
        while v < n and covered[v]:
            v += 1
        if v == n:
            yield frozenset(chosen)
            return
        for e in inc[v]:
            a, b = g.edges[e]
            if a == b:
                continue
            other = b if v == a else a
            if covered[other]:
                continue
            covered[v] = covered[other] = True
            chosen.append(e)
            yield from rec(v + 1)
            chosen.pop()
            covered[v] = covered[other] = False

    yield from rec(0)


def orient_even_edges(g: MultiGraph, edges) -> dict[int, int]:
    """Orient an even subgraph as a union of closed trails: edge -> sign.

    Sign +1 means the trail follows the edge's canonical tail->head
    direction; conservation holds per closed trail, hence for the sum.
    Walks lowest-edge-first, so the result is deterministic.  Loops get +1.
    Raises if some vertex has odd degree in the subgraph.
    """
    edge_list = sorted(set(edges))
    at_vertex: dict[int, list[int]] = {}
    signs: dict[int, int] = {}
    for e in edge_list:
        u, v = g.edges[e]
        if u == v:
            signs[e] = +1
            continue
        at_vertex.setdefault(u, []).append(e)
        at_vertex.setdefault(v, []).append(e)
    if any(len(es) % 2 for es in at_vertex.values()):
        raise ContractViolation("edge set is not an even subgraph")
    used = set(signs)
    for e0 in edge_list:
        if e0 in used:
            continue
        u0, v0 = g.edges[e0]
        signs[e0] = +1
        used.add(e0)
        here = v0
        while here != u0:
            nxt = next(f for f in at_vertex[here] if f not in used)
            a, b = g.edges[nxt]
            signs[nxt] = +1 if here == a else -1
            used.add(nxt)
            here = b if here == a else a
    return signs


def spanning_forest(g: MultiGraph) -> tuple[set[int], list[tuple[int, int] | None]]:
    """BFS spanning forest: (tree edge ids, parent[v] = (parent vertex, edge))."""
    n = g.vertex_count
    inc = g.vertex_edges()
    parent: list[tuple[int, int] | None] = [None] * n
    seen = [False] * n
    tree = set()
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in inc[v]:
                if g.is_loop(e):
                    continue
                a, b = g.edges[e]
                other = b if v == a else a
                if not seen[other]:
                    seen[other] = True
                    parent[other] = (v, e)
                    tree.add(e)
                    queue.append(other)
    return tree, parent


def cycle_basis(g: MultiGraph) -> list[dict[int, int]]:
    """Fundamental cycles of a BFS spanning forest, as signed edge maps.

    Each cycle maps edge id -> sign in {-1, +1}; sign +1 means the cycle
    traverses the edge along its canonical tail->head direction.  The signed
    boundary is zero at every vertex, and the defining non-tree edge always
    carries +1.  Disconnected input: per-component bases are concatenated.
    """
    tree, parent = spanning_forest(g)
    ancestors = []
    for x in range(g.vertex_count):
        chain = [x]
        while parent[chain[-1]] is not None:
            chain.append(parent[chain[-1]][0])
        ancestors.append(chain)
    basis = []
    for e, (u, v) in enumerate(g.edges):
        if e in tree:
            continue
        if u == v:
            basis.append({e: +1})
            continue
        on_u = set(ancestors[u])
        lca = next(x for x in ancestors[v] if x in on_u)
        # cycle direction: u -(e)-> v, then the tree path v -> lca -> u
        signs = {e: +1}
        x = v
        while x != lca:      # walking x -> p follows the cycle direction
            p, pe = parent[x]
            a, b = g.edges[pe]
            signs[pe] = +1 if (x, p) == (a, b) else -1
            x = p
        x = u
        while x != lca:      # walking x -> p goes against the cycle direction
            p, pe = parent[x]
            a, b = g.edges[pe]
            signs[pe] = -1 if (x, p) == (a, b) else +1
            x = p
        basis.append(signs)
    return basis
