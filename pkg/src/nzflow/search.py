"""Exact decision procedures and flow-number computation.

Feasibility of an (p/q, d)-ChNZF is decided over the integer normal form:
flow vectors are integer multiples of 1/q, i.e. integer vectors k(e) with
|k_i(e)| <= p-q per coordinate and max_i |k_i(e)| >= q.  The search is a
per-edge DFS in a precomputed close-vertices-early order, with unit
propagation (a vertex with one unassigned incident edge forces it), window
pruning on partially summed vertices, and a canonical-form restriction on
the first edge (signed coordinate permutations act on the solution set).

Flow numbers are computed by scanning the Farey ladder of candidates
r = p/q with q <= qmax in increasing order; feasibility is monotone in r,
so the first feasible candidate together with the infeasibility of all
smaller candidates pins the value (subject to the qmax denominator caveat
recorded on the result).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import ContractViolation, NoFlowPossible, SearchBudgetExceeded
from .flows import CHEBYSHEV, MANHATTAN, FlowAssignment, cheb_to_manh_2d, verify
from .graphs import (MultiGraph, find_bridges, orient_even_edges,
                     perfect_matchings)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"


@dataclass
class SearchStats:
    nodes: int = 0
    decisions: int = 0
    seconds: float = 0.0


class _BudgetHit(Exception):
    pass


def window_domain(cap: int, floor: int, d: int) -> list[tuple[int, ...]]:
    """All integer vectors with every |k_i| <= cap and max_i |k_i| >= floor,
    sorted by (Chebyshev norm, lexicographic)."""
    vecs = [v for v in product(range(-cap, cap + 1), repeat=d)
            if max(abs(c) for c in v) >= floor]
    vecs.sort(key=lambda v: (max(abs(c) for c in v), v))
    return vecs


def _canonical_window_domain(cap: int, floor: int, d: int) -> list[tuple[int, ...]]:
    """Representatives under signed coordinate permutations: sorted
    non-increasing, non-negative, leading coordinate >= floor."""
    vecs = [v for v in product(range(cap, -1, -1), repeat=d)
            if all(v[i] >= v[i + 1] for i in range(d - 1)) and v[0] >= floor]
    vecs.sort(key=lambda v: (max(v), v))
    return vecs


def _static_edge_order(g: MultiGraph, skip: set[int]) -> list[int]:
    """Process edges so vertices close as early as possible (deterministic)."""
    remdeg = [0] * g.vertex_count
    remaining = []
    for e, (u, v) in enumerate(g.edges):
        if e in skip or u == v:
            continue
        remaining.append(e)
        remdeg[u] += 1
        remdeg[v] += 1
    touched = [False] * g.vertex_count
    order = []
    remaining_set = set(remaining)
    while remaining_set:
        best = None
        best_score = None
        for e in remaining:
            if e not in remaining_set:
                continue
            u, v = g.edges[e]
            score = (min(remdeg[u], remdeg[v]),
                     0 if (touched[u] or touched[v]) else 1,
                     e)
            if best_score is None or score < best_score:
                best_score = score
                best = e
        order.append(best)
        remaining_set.discard(best)
        u, v = g.edges[best]
        remdeg[u] -= 1
        remdeg[v] -= 1
        touched[u] = touched[v] = True
    return order


def _enc2(vec, d: int) -> complex:
    return complex(vec[0], vec[1] if d == 2 else 0)


def _dec2(c: complex, d: int) -> tuple[int, ...]:
    return (int(c.real),) if d == 1 else (int(c.real), int(c.imag))


class _FlowSearch:
    """Backtracking over integer edge vectors with unit propagation.

    Dimensions 1 and 2 run on a scalar fast path (vectors packed into complex
    numbers, exact for these magnitudes); d >= 3 uses the generic tuple path.
    """

    def __init__(self, g: MultiGraph, domains, d: int,
                 first_domain=None, node_budget=None):
        self.g = g
        self.d = d
        self.node_budget = node_budget
        self.nodes = 0
        self.scalar = d <= 2
        n, m = g.vertex_count, g.edge_count
        self.ends = []
        for u, v in g.edges:
            self.ends.append(() if u == v else ((u, -1), (v, +1)))
        self.inc = [[] for _ in range(n)]
        for e, pair in enumerate(self.ends):
            for w, s in pair:
                self.inc[w].append((e, s))
        if self.scalar:
            self.domains = [tuple(_enc2(v, d) for v in dom) for dom in domains]
            self.first_domain = (None if first_domain is None
                                 else tuple(_enc2(v, d) for v in first_domain))
        else:
            self.domains = [tuple(dom) for dom in domains]
            self.first_domain = None if first_domain is None else tuple(first_domain)
        self.domain_sets = [frozenset(dom) for dom in self.domains]
        self.maxabs = [max((max(abs(c) for c in vec) for vec in dom), default=0)
                       for dom in domains]
        self.val = [None] * m
        # pre-assign loops: any window value works, pick the domain minimum
        loops = set()
        for e, (u, v) in enumerate(g.edges):
            if u == v:
                if not domains[e]:
                    raise _Infeasible()
                self.val[e] = self.domains[e][0]
                loops.add(e)
        self.order = _static_edge_order(g, loops)
        if self.scalar:
            self.sums = [0j] * n
        else:
            self.sums = [[0] * d for _ in range(n)]
        self.rem = [len(self.inc[w]) for w in range(n)]
        self.cap = [sum(self.maxabs[e] for e, _ in self.inc[w]) for w in range(n)]
        self.trail: list[int] = []
        # with one shared symmetric domain, exact reachability of a vertex
        # residual by j remaining edges is a precomputed set lookup
        self.reach = None
        if m > 0 and len(set(map(id, self.domains))) == 1:
            base = set(self.domains[0])
            maxdeg = max((len(i) for i in self.inc), default=0)
            zero = 0j if self.scalar else tuple([0] * d)
            reach = [{zero}, base]
            cur = base
            for _ in range(2, maxdeg + 1):
                if self.scalar:
                    cur = {a + b for a in cur for b in base}
                else:
                    cur = {tuple(x + y for x, y in zip(a, b))
                           for a in cur for b in base}
                reach.append(cur)
            self.reach = reach

    # -- scalar path (d <= 2) ------------------------------------------------

    def _try_assign_scalar(self, e0: int, vec0) -> bool:
        val = self.val
        sums = self.sums
        rem = self.rem
        cap = self.cap
        ends = self.ends
        inc = self.inc
        maxabs = self.maxabs
        trail = self.trail
        reach = self.reach
        pending = [(e0, vec0)]
        while pending:
            e, vec = pending.pop()
            cur = val[e]
            if cur is not None:
                if cur != vec:
                    return False
                continue
            val[e] = vec
            trail.append(e)
            ma = maxabs[e]
            for w, s in ends[e]:
                if s > 0:
                    sums[w] += vec
                else:
                    sums[w] -= vec
                rem[w] -= 1
                cap[w] -= ma
            for w, _ in ends[e]:
                sw = sums[w]
                rw = rem[w]
                if rw == 0:
                    if sw != 0:
                        return False
                elif reach is not None:
                    if sw not in reach[rw]:  # reach sets are symmetric
                        return False
                    if rw == 1:
                        for f, sf in inc[w]:
                            if val[f] is None:
                                break
                        else:  # pragma: no cover - rem bookkeeping guarantees a hit
                            raise AssertionError("rem count out of sync")
                        pending.append((f, -sw if sf > 0 else sw))
                else:
                    cw = cap[w]
                    a = sw.real
                    if (a if a >= 0 else -a) > cw:
                        return False
                    a = sw.imag
                    if (a if a >= 0 else -a) > cw:
                        return False
                    if rw == 1:
                        for f, sf in inc[w]:
                            if val[f] is None:
                                break
                        else:  # pragma: no cover - rem bookkeeping guarantees a hit
                            raise AssertionError("rem count out of sync")
                        k = -sw if sf > 0 else sw
                        if k not in self.domain_sets[f]:
                            return False
                        pending.append((f, k))
        return True

    def _undo_scalar(self, mark: int) -> None:
        val = self.val
        sums = self.sums
        trail = self.trail
        maxabs = self.maxabs
        while len(trail) > mark:
            e = trail.pop()
            vec = val[e]
            val[e] = None
            ma = maxabs[e]
            for w, s in self.ends[e]:
                if s > 0:
                    sums[w] -= vec
                else:
                    sums[w] += vec
                self.rem[w] += 1
                self.cap[w] += ma

    # -- generic path (d >= 3) -----------------------------------------------

    def _try_assign_vec(self, e0: int, vec0) -> bool:
        val = self.val
        sums = self.sums
        rem = self.rem
        cap = self.cap
        ends = self.ends
        inc = self.inc
        reach = self.reach
        d = self.d
        pending = [(e0, vec0)]
        while pending:
            e, vec = pending.pop()
            cur = val[e]
            if cur is not None:
                if cur != vec:
                    return False
                continue
            val[e] = vec
            self.trail.append(e)
            for w, s in ends[e]:
                sw = sums[w]
                if s > 0:
                    for i in range(d):
                        sw[i] += vec[i]
                else:
                    for i in range(d):
                        sw[i] -= vec[i]
                rem[w] -= 1
                cap[w] -= self.maxabs[e]
            for w, _ in ends[e]:
                sw = sums[w]
                rw = rem[w]
                if rw == 0:
                    for i in range(d):
                        if sw[i]:
                            return False
                else:
                    if reach is not None:
                        if tuple(sw) not in reach[rw]:
                            return False
                    else:
                        cw = cap[w]
                        for i in range(d):
                            a = sw[i]
                            if (a if a >= 0 else -a) > cw:
                                return False
                    if rw == 1:
                        for f, sf in inc[w]:
                            if val[f] is None:
                                break
                        else:  # pragma: no cover - rem bookkeeping guarantees a hit
                            raise AssertionError("rem count out of sync")
                        if sf > 0:
                            k = tuple(-x for x in sw)
                        else:
                            k = tuple(sw)
                        if k not in self.domain_sets[f]:
                            return False
                        pending.append((f, k))
        return True

    def _undo_vec(self, mark: int) -> None:
        val = self.val
        sums = self.sums
        d = self.d
        trail = self.trail
        while len(trail) > mark:
            e = trail.pop()
            vec = val[e]
            val[e] = None
            for w, s in self.ends[e]:
                sw = sums[w]
                if s > 0:
                    for i in range(d):
                        sw[i] -= vec[i]
                else:
                    for i in range(d):
                        sw[i] += vec[i]
                self.rem[w] += 1
                self.cap[w] += self.maxabs[e]

    def _pick_edge(self) -> int | None:
        """Fail-first dynamic ordering: prefer edges at nearly closed vertices.

        Assigning an edge whose endpoint has only two open edges forces the
        remaining one, so the choice keeps propagation chains firing.  Ties
        break deterministically on (touched endpoint, edge id).
        """
        val = self.val
        rem = self.rem
        best = None
        best_key = None
        for e in self.order:
            if val[e] is not None:
                continue
            u, v = self.g.edges[e]
            ru, rv = rem[u], rem[v]
            du = len(self.inc[u])
            dv = len(self.inc[v])
            touched = 0 if (ru < du or rv < dv) else 1
            key = (min(ru, rv), touched, ru + rv, e)
            if best_key is None or key < best_key:
                best_key = key
                best = e
        return best

    def _dfs(self, depth: int) -> bool:
        try_assign = (self._try_assign_scalar if self.scalar
                      else self._try_assign_vec)
        undo = self._undo_scalar if self.scalar else self._undo_vec
        e = self._pick_edge()
        if e is None:
            return True
        if depth == 0 and self.first_domain is not None:
            dom = self.first_domain
        else:
            dom = self.domains[e]
        budget = self.node_budget
        for vec in dom:
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise _BudgetHit()
            mark = len(self.trail)
            if try_assign(e, vec) and self._dfs(depth + 1):
                return True
            undo(mark)
        return False

    def run(self) -> tuple[str, list[tuple[int, ...]] | None]:
        try:
            found = self._dfs(0)
        except _BudgetHit:
            return UNKNOWN, None
        if not found:
            return INFEASIBLE, None
        if self.scalar:
            return FEASIBLE, [_dec2(c, self.d) for c in self.val]
        return FEASIBLE, list(self.val)


class _Infeasible(Exception):
    pass


def _check_flow_args(g: MultiGraph, p: int, q: int, d: int) -> tuple[int, int]:
    if not (isinstance(p, int) and isinstance(q, int) and p >= 1 and q >= 1):
        raise ContractViolation("p and q must be positive integers")
    if d < 1:
        raise ContractViolation("dimension must be at least 1")
    if Fraction(p, q) < 2:
        raise ContractViolation(f"flow value r = {p}/{q} must be at least 2")
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; no nowhere-zero flow exists")
    r = gcd(p, q)
    return p // r, q // r


_PAIR_PHASE_BUDGET = 100_000


def _pair_phase_witness(g: MultiGraph, p: int, q: int):
    """Try to build a (p/q, 2)-ChNZF witness from a flow pair (sound, not
    complete): a 2-flow on a 2-factor plus an integer flow that is large on
    the complementary perfect matching.  Cubic graphs, 2 < p/q <= 3 only.

    Returns integer normal-form vectors (multiples of 1/q) or None.
    """
    if not g.is_cubic() or p <= 2 * q or p > 3 * q:
        return None
    r = gcd(p - 2 * q, q)
    qq = q // r                      # reduced t = (p - 2q)/q = pp/qq
    big = (p - 2 * q) // r + qq      # flow values bounded by p' + q'
    scale = q // qq
    full = [(v,) for v in range(-big, big + 1)]
    full.sort(key=lambda t: (abs(t[0]), t[0]))
    lower = [t for t in full if abs(t[0]) >= qq]
    for matching in perfect_matchings(g):
        factor = [e for e in range(g.edge_count) if e not in matching]
        phi2 = orient_even_edges(g, factor)
        domains = [lower if e in matching else full
                   for e in range(g.edge_count)]
        engine = _FlowSearch(g, domains, 1, node_budget=_PAIR_PHASE_BUDGET)
        status, vals = engine.run()
        if status == FEASIBLE:
            return tuple((q * phi2.get(e, 0), vals[e][0] * scale)
                         for e in range(g.edge_count))
    return None


_decide_cache: dict[tuple, tuple[str, tuple | None]] = {}


def _decide_chnzf_status(g: MultiGraph, p: int, q: int, d: int,
                         node_budget=None, stats: SearchStats | None = None):
    """Integer normal-form decision. Returns (status, integer value tuple)."""
    p, q = _check_flow_args(g, p, q, d)
    key = (g, p, q, d)
    if key in _decide_cache:
        return _decide_cache[key]
    if d == 2:
        vals = _pair_phase_witness(g, p, q)
        if vals is not None:
            result = (FEASIBLE, vals)
            _decide_cache[key] = result
            if stats is not None:
                stats.decisions += 1
            return result
    cap = p - q
    dom = window_domain(cap, q, d)
    domains = [dom] * g.edge_count
    first = _canonical_window_domain(cap, q, d)
    try:
        engine = _FlowSearch(g, domains, d, first_domain=first,
                             node_budget=node_budget)
        status, vals = engine.run()
        if stats is not None:
            stats.nodes += engine.nodes
            stats.decisions += 1
    except _Infeasible:
        status, vals = INFEASIBLE, None
    result = (status, tuple(vals) if vals is not None else None)
    if status != UNKNOWN:
        # a definite verdict is valid regardless of the budget that found it
        _decide_cache[key] = result
    return result


def _witness_from_integers(g: MultiGraph, vals, p: int, q: int, d: int) -> FlowAssignment:
    values = tuple(tuple(Fraction(c, q) for c in vec) for vec in vals)
    fa = FlowAssignment(g, d, CHEBYSHEV, Fraction(p, q), values)
    report = verify(fa)
    if not report.valid:  # pragma: no cover - soundness guard
        raise AssertionError("search produced an invalid witness")
    return fa


def decide_chnzf(g: MultiGraph, p: int, q: int, d: int) -> FlowAssignment | None:
    """Decide whether g has a (p/q, d)-ChNZF; return a witness or None.

    The witness has coordinates that are integer multiples of 1/q.  None is
    returned only after the exhaustive normal-form search proves there is no
    such flow (the normal form is complete at every rational candidate, not
    just at the optimum).  p/q is reduced internally; the decision only
    depends on the ratio.
    """
    p2, q2 = _check_flow_args(g, p, q, d)
    status, vals = _decide_chnzf_status(g, p2, q2, d)
    if status == FEASIBLE:
        return _witness_from_integers(g, vals, p2, q2, d)
    return None


def decide_mnzf_2d(g: MultiGraph, p: int, q: int) -> FlowAssignment | None:
    """Decide (p/q, 2)-MNZF existence via the Chebyshev equivalence.

    A witness, when one exists, has coordinates that are multiples of 1/(2q).
    """
    witness = decide_chnzf(g, p, q, 2)
    if witness is None:
        return None
    return cheb_to_manh_2d(witness)


def farey_candidates(lo: Fraction, hi: Fraction, qmax: int) -> list[Fraction]:
    """All reduced fractions in [lo, hi] with denominator <= qmax, ascending."""
    if qmax < 1:
        raise ContractViolation("qmax must be at least 1")
    seen = set()
    for q in range(1, qmax + 1):
        p_lo = -((-lo.numerator * q) // lo.denominator)   # ceil(lo*q)
        p_hi = (hi.numerator * q) // hi.denominator        # floor(hi*q)
        for p in range(p_lo, p_hi + 1):
            seen.add(Fraction(p, q))
    return sorted(seen)


_CEILINGS = {1: Fraction(6), 2: Fraction(3)}


@dataclass
class FlowNumberResult:
    """Outcome of a flow-number computation.

    status "exact": value is the minimum over all candidates with denominator
    <= qmax; every strictly smaller candidate was proven infeasible.  If the
    true flow number had a denominator larger than qmax it would lie strictly
    between two adjacent candidates; that caveat is inherent to any finite
    denominator bound.

    status "interval": a node budget interrupted some infeasibility proofs;
    the value lies in (bracket[0], bracket[1]], and the witness attains the
    upper endpoint.
    """

    status: str
    value: Fraction | None
    bracket: tuple[Fraction, Fraction] | None
    witness: FlowAssignment | None
    qmax: int
    stats: SearchStats = field(default_factory=SearchStats)


_PROBE_BUDGET = 50_000


def _as_requested_norm(witness: FlowAssignment, norm_kind: str, d: int) -> FlowAssignment:
    if norm_kind != MANHATTAN:
        return witness
    if d == 2:
        return cheb_to_manh_2d(witness)
    # one dimension: the norms coincide, only the label changes
    return FlowAssignment(witness.graph, 1, MANHATTAN, witness.r, witness.values)


def flow_number(g: MultiGraph, d: int, norm_kind: str, qmax: int = 6,
                node_budget: int | None = None) -> FlowNumberResult:
    """Compute the d-dimensional flow number of g under the given norm.

    Supported: any d with the Chebyshev norm; d in {1, 2} with the Manhattan
    norm (in one dimension the norms coincide; in two they are exchanged by
    an exact linear map, so the values agree).  Candidates r = p/q with
    q <= qmax are scanned over the increasing Farey ladder up to the theorem
    ceiling for the dimension.

    The reported result equals that of a plain ascending scan, but only one
    unbounded infeasibility proof is ever run: feasibility is monotone in r,
    so infeasibility at the candidate directly below the minimal feasible one
    implies infeasibility at every smaller candidate.  Cheaply budgeted
    probes locate that boundary first.
    """
    if norm_kind not in (MANHATTAN, CHEBYSHEV):
        raise ContractViolation(f"unknown norm kind {norm_kind!r}")
    if norm_kind == MANHATTAN and d > 2:
        raise ContractViolation(
            "exact Manhattan decisions are only available for d <= 2 "
            "(no integer normal form is known in higher dimensions)")
    if d < 1:
        raise ContractViolation("dimension must be at least 1")
    if qmax < 1:
        raise ContractViolation("qmax must be at least 1")
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; no nowhere-zero flow exists")
    stats = SearchStats()
    t0 = time.perf_counter()

    def done(result):
        stats.seconds = time.perf_counter() - t0
        return result

    if g.edge_count == 0:
        witness = FlowAssignment(g, d, norm_kind, Fraction(2), ())
        return done(FlowNumberResult("exact", Fraction(2), None, witness,
                                     qmax, stats))
    cands = farey_candidates(Fraction(2), _CEILINGS.get(d, Fraction(2)), qmax)

    def decide(i, budget):
        c = cands[i]
        return _decide_chnzf_status(g, c.numerator, c.denominator, d,
                                    node_budget=budget, stats=stats)

    proven_infeasible = set()
    feasible_at = None
    witness_vals = None
    probe = _PROBE_BUDGET if node_budget is None else min(_PROBE_BUDGET, node_budget)
    for i in range(len(cands)):
        status, vals = decide(i, probe)
        if status == FEASIBLE:
            feasible_at, witness_vals = i, vals
            break
        if status == INFEASIBLE:
            proven_infeasible.add(i)
    if feasible_at is None:
        # rerun every unresolved candidate without the probe cap
        for i in range(len(cands)):
            if i in proven_infeasible:
                continue
            status, vals = decide(i, node_budget)
            if status == FEASIBLE:
                feasible_at, witness_vals = i, vals
                break
            if status == INFEASIBLE:
                proven_infeasible.add(i)
        if feasible_at is None:
            if len(proven_infeasible) == len(cands):
                raise AssertionError(
                    "no candidate feasible up to the theorem ceiling; this "
                    "contradicts the flow existence theorems and indicates a bug")
            raise SearchBudgetExceeded(
                "budget exhausted before any feasible candidate was found")
    # Walk the boundary down: infeasibility at cands[i-1] settles everything
    # below it by monotonicity (a witness at r verifies at any r' >= r).
    while feasible_at > 0 and feasible_at - 1 not in proven_infeasible:
        status, vals = decide(feasible_at - 1, node_budget)
        if status == FEASIBLE:
            feasible_at, witness_vals = feasible_at - 1, vals
        elif status == INFEASIBLE:
            proven_infeasible.add(feasible_at - 1)
        else:
            lo = max((cands[i] for i in proven_infeasible
                      if cands[i] < cands[feasible_at]), default=Fraction(1))
            witness = _witness_from_integers(
                g, witness_vals, cands[feasible_at].numerator,
                cands[feasible_at].denominator, d)
            witness = _as_requested_norm(witness, norm_kind, d)
            return done(FlowNumberResult("interval", None,
                                         (lo, cands[feasible_at]), witness,
                                         qmax, stats))
    value = cands[feasible_at]
    witness = _witness_from_integers(g, witness_vals, value.numerator,
                                     value.denominator, d)
    witness = _as_requested_norm(witness, norm_kind, d)
    return done(FlowNumberResult("exact", value, None, witness, qmax, stats))


def clear_decision_cache() -> None:
    _decide_cache.clear()
