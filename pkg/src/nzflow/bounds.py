"""Closed-form bounds, snark classification and flow-number ratio reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContractViolation
from .flows import CHEBYSHEV
from .graphs import MultiGraph, is_two_connected, three_edge_colouring
from .search import FlowNumberResult, flow_number


def is_snark(g: MultiGraph) -> bool:
    """2-connected simple cubic graph that is not 3-edge-colourable."""
    if not (g.is_simple() and g.is_cubic() and is_two_connected(g)):
        return False
    return three_edge_colouring(g) is None


def snark_lower_bound(n: int) -> Fraction:
    """Lower bound 2 + 1/floor((n-2)/4) on the 2-D Chebyshev flow number of
    a snark of order n."""
    if n < 10:
        raise ContractViolation("the smallest snark has order 10")
    return 2 + Fraction(1, (n - 2) // 4)


_ASSUMPTIONS = ("bridgeless", "5cdc", "5ocdc", "4ocdc")

# best known upper bounds on the d-dimensional Manhattan flow number,
# d = 2..7, per graph assumption
_TABLE1 = {
    "4ocdc":      [Fraction(2)] * 6,
    "5ocdc":      [Fraction(3)] + [Fraction(2)] * 5,
    "5cdc":       [Fraction(3), Fraction(5, 2)] + [Fraction(2)] * 4,
    "bridgeless": [Fraction(3), Fraction(5, 2), Fraction(5, 2), Fraction(5, 2),
                   Fraction(7, 3), Fraction(2)],
}


def table1_upper(d: int, assumption: str = "bridgeless") -> Fraction:
    """Upper bound on the d-dimensional Manhattan flow number, 2 <= d <= 7."""
    if assumption not in _ASSUMPTIONS:
        raise ContractViolation(
            f"unknown assumption {assumption!r}; supported: {_ASSUMPTIONS}")
    if not 2 <= d <= 7:
        raise ContractViolation("dimension must be between 2 and 7")
    return _TABLE1[assumption][d - 2]


@dataclass
class BoundsRecord:
    graph_key: str
    graph_hash: str
    n: int
    snark: bool
    lower_2inf: Fraction | None
    uppers: dict[str, Fraction] = field(default_factory=dict)
    phi1: FlowNumberResult | None = None
    phi2_inf: FlowNumberResult | None = None
    ratio: Fraction | None = None


def bounds_record(g: MultiGraph, compute: bool = False, qmax: int = 6) -> BoundsRecord:
    """Structural bounds for one graph; set compute=True to add the flow
    numbers and their ratio."""
    snark = is_snark(g)
    lower = snark_lower_bound(g.vertex_count) if snark else None
    uppers = {a: table1_upper(2, a) for a in _ASSUMPTIONS}
    rec = BoundsRecord(g.graph_key(), g.graph_hash()[:12], g.vertex_count,
                       snark, lower, uppers)
    if compute:
        return _add_computation(rec, g, qmax)
    return rec


def ratio_report(g: MultiGraph, qmax: int = 6) -> BoundsRecord:
    """Compute the circular flow number, the 2-D Chebyshev flow number and
    their exact ratio (when both values are exact)."""
    return bounds_record(g, compute=True, qmax=qmax)


def _add_computation(rec: BoundsRecord, g: MultiGraph, qmax: int) -> BoundsRecord:
    rec.phi1 = flow_number(g, 1, CHEBYSHEV, qmax)
    rec.phi2_inf = flow_number(g, 2, CHEBYSHEV, qmax)
    if rec.phi1.status == "exact" and rec.phi2_inf.status == "exact":
        rec.ratio = rec.phi1.value / rec.phi2_inf.value
    return rec


def _frac(x) -> str:
    if x is None:
        return ""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def bounds_csv(records) -> str:
    """One CSV row per graph: key, order, snark flag, bounds, computed values."""
    lines = ["key,n,is_snark,lower_2inf,phi1,phi1_status,phi2_inf,phi2_inf_status,ratio"]
    for rec in records:
        phi1 = rec.phi1.value if rec.phi1 else None
        st1 = rec.phi1.status if rec.phi1 else ""
        phi2 = rec.phi2_inf.value if rec.phi2_inf else None
        st2 = rec.phi2_inf.status if rec.phi2_inf else ""
        lines.append(",".join([
            rec.graph_hash, str(rec.n), str(rec.snark).lower(),
            _frac(rec.lower_2inf), _frac(phi1), st1, _frac(phi2), st2,
            _frac(rec.ratio),
        ]))
    return "\n".join(lines) + "\n"
