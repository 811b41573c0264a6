"""Mixed-integer linear program for the 2-D Chebyshev flow number, emitted
as a deterministic CPLEX-style LP file.

Per edge {i, j} (i < j, oriented i -> j) the flow value is
(xp - xm, yp - ym) with all four parts non-negative; binaries ux, uy force
the complementarity xp * xm = 0 (resp. y) through a big-M constant, and
four binaries v1..v4 with v1+v2+v3+v4 <= 3 force at least one part >= 1,
i.e. Chebyshev norm >= 1.  The objective z bounds every coordinate part sum
from above: the optimal z* is the smallest possible maximum coordinate
magnitude, and the flow number equals 1 + z*.  That affine offset is stated
in the emitted file header.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolation, GraphParseError, NoFlowPossible
from .flows import CHEBYSHEV, FlowAssignment, norm
from .graphs import MultiGraph, find_bridges

_LAMBDA_DEFAULT = Fraction(2)


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    terms: tuple[tuple[str, Fraction], ...]  # (variable, coefficient)
    sense: str                               # "<=", ">=", "="
    rhs: Fraction

    def coefficient(self, var: str) -> Fraction:
        for v, c in self.terms:
            if v == var:
                return c
        return Fraction(0)


@dataclass(frozen=True)
class MilpModel:
    objective: str
    constraints: tuple[LinearConstraint, ...]
    binaries: frozenset[str]
    header: tuple[str, ...] = ()

    def constraint(self, name: str) -> LinearConstraint:
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)


def _edge_key(g: MultiGraph, e: int) -> str:
    u, v = g.edges[e]
    return f"{u}_{v}"


def build_model(g: MultiGraph, lam: Fraction | int = _LAMBDA_DEFAULT) -> MilpModel:
    """Build the flow-number MILP for a bridgeless simple graph."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ContractViolation("the big-M constant must be positive")
    if not g.is_simple():
        raise ContractViolation(
            "the MILP encoding indexes variables by vertex pairs; "
            "parallel edges and loops are not representable")
    if find_bridges(g):
        raise NoFlowPossible("graph has a bridge; the program is infeasible")
    one = Fraction(1)
    cons: list[LinearConstraint] = []
    for e in range(g.edge_count):
        k = _edge_key(g, e)
        xp, xm, yp, ym = f"xp_{k}", f"xm_{k}", f"yp_{k}", f"ym_{k}"
        ux, uy = f"ux_{k}", f"uy_{k}"
        v1, v2, v3, v4 = (f"v{i}_{k}" for i in (1, 2, 3, 4))
        cons.append(LinearConstraint(f"bigm_xp_{k}", ((xp, one), (ux, -lam)), "<=", Fraction(0)))
        cons.append(LinearConstraint(f"bigm_xm_{k}", ((xm, one), (ux, lam)), "<=", lam))
        cons.append(LinearConstraint(f"bigm_yp_{k}", ((yp, one), (uy, -lam)), "<=", Fraction(0)))
        cons.append(LinearConstraint(f"bigm_ym_{k}", ((ym, one), (uy, lam)), "<=", lam))
        cons.append(LinearConstraint(f"cap_x_{k}", ((xp, one), (xm, one), ("z", -one)), "<=", Fraction(0)))
        cons.append(LinearConstraint(f"cap_y_{k}", ((yp, one), (ym, one), ("z", -one)), "<=", Fraction(0)))
        cons.append(LinearConstraint(f"low_xp_{k}", ((xp, one), (v1, one)), ">=", one))
        cons.append(LinearConstraint(f"low_xm_{k}", ((xm, one), (v2, one)), ">=", one))
        cons.append(LinearConstraint(f"low_yp_{k}", ((yp, one), (v3, one)), ">=", one))
        cons.append(LinearConstraint(f"low_ym_{k}", ((ym, one), (v4, one)), ">=", one))
        cons.append(LinearConstraint(
            f"vsum_{k}", ((v1, one), (v2, one), (v3, one), (v4, one)), "<=", Fraction(3)))
    for w in range(g.vertex_count):
        for coord, pos, neg in (("x", "xp", "xm"), ("y", "yp", "ym")):
            terms = []
            for e, (u, v) in enumerate(g.edges):
                k = _edge_key(g, e)
                if u == w:     # oriented away from w
                    terms.append((f"{pos}_{k}", one))
                    terms.append((f"{neg}_{k}", -one))
                elif v == w:   # oriented towards w
                    terms.append((f"{pos}_{k}", -one))
                    terms.append((f"{neg}_{k}", one))
            if terms:
                cons.append(LinearConstraint(f"consv_{coord}_{w}", tuple(terms),
                                             "=", Fraction(0)))
    binaries = []
    for e in range(g.edge_count):
        k = _edge_key(g, e)
        binaries += [f"ux_{k}", f"uy_{k}"] + [f"v{i}_{k}" for i in (1, 2, 3, 4)]
    header = (
        "nzflow MILP export",
        f"graph {g.graph_key()}",
        f"big-M Lambda = {lam}",
        "objective z = smallest possible maximum coordinate magnitude over all",
        "edges; the 2-D Chebyshev flow number equals 1 + (optimal z)",
    )
    return MilpModel("z", tuple(cons), frozenset(binaries), header)


def _num(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    val = x.numerator / x.denominator
    if Fraction(val) != x:
        raise ContractViolation(
            f"coefficient {x} has no exact decimal form for the LP file")
    return repr(val)


def render_lp(model: MilpModel) -> str:
    lines = [f"\\ {h}" for h in model.header]
    lines.append("Minimize")
    lines.append(f" obj: {model.objective}")
    lines.append("Subject To")
    for c in model.constraints:
        parts = []
        for var, coeff in c.terms:
            if coeff < 0:
                parts.append(f"- {_num(-coeff)} {var}" if -coeff != 1 else f"- {var}")
            else:
                lead = not parts
                sign = "" if lead else "+ "
                parts.append(f"{sign}{_num(coeff)} {var}" if coeff != 1 else f"{sign}{var}")
        sense = {"<=": "<=", ">=": ">=", "=": "="}[c.sense]
        lines.append(f" {c.name}: {' '.join(parts)} {sense} {_num(c.rhs)}")
    lines.append("Binaries")
    for name in sorted(model.binaries):
        lines.append(f" {name}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def emit_lp(g: MultiGraph, lam: Fraction | int = _LAMBDA_DEFAULT) -> str:
    """Emit the flow-number MILP as LP-format text (byte-stable)."""
    return render_lp(build_model(g, lam))


def parse_lp(text: str) -> MilpModel:
    """Re-parse the LP grammar emitted by render_lp into an equivalent model."""
    header = []
    objective = None
    constraints = []
    binaries = set()
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            header.append(line[1:].strip())
            continue
        low = line.lower()
        if low == "minimize":
            section = "obj"
            continue
        if low == "subject to":
            section = "cons"
            continue
        if low == "binaries":
            section = "bin"
            continue
        if low == "end":
            section = None
            continue
        if section == "obj":
            name, _, expr = line.partition(":")
            objective = expr.strip()
        elif section == "cons":
            name, _, rest = line.partition(":")
            name = name.strip()
            for sense in ("<=", ">=", "="):
                if sense in rest:
                    expr, _, rhs_text = rest.partition(sense)
                    break
            else:
                raise GraphParseError(f"constraint without sense: {line!r}")
            terms = []
            sign = Fraction(1)
            coeff = None
            for tok in expr.split():
                if tok == "+":
                    sign, coeff = Fraction(1), None
                elif tok == "-":
                    sign, coeff = Fraction(-1), None
                else:
                    try:
                        coeff = sign * Fraction(tok)
                    except ValueError:
                        terms.append((tok, sign if coeff is None else coeff))
                        sign, coeff = Fraction(1), None
            constraints.append(LinearConstraint(
                name, tuple(terms), sense, Fraction(rhs_text.strip())))
        elif section == "bin":
            binaries.update(line.split())
    if objective is None:
        raise GraphParseError("LP file has no objective")
    return MilpModel(objective, tuple(constraints), frozenset(binaries),
                     tuple(header))


def models_equivalent(a: MilpModel, b: MilpModel) -> bool:
    """Same objective, binaries, and constraints (names, normalized terms,
    senses, right-hand sides)."""
    if a.objective != b.objective or a.binaries != b.binaries:
        return False
    if len(a.constraints) != len(b.constraints):
        return False
    for ca, cb in zip(a.constraints, b.constraints):
        if (ca.name != cb.name or ca.sense != cb.sense or ca.rhs != cb.rhs
                or dict(ca.terms) != dict(cb.terms)):
            return False
    return True


def witness_point(fa: FlowAssignment) -> dict[str, Fraction]:
    """Map a 2-D Chebyshev flow onto the MILP variables (z = max norm)."""
    if fa.dim != 2 or fa.norm_kind != CHEBYSHEV:
        raise ContractViolation("witness must be a 2-D Chebyshev flow")
    g = fa.graph
    point: dict[str, Fraction] = {}
    zmax = Fraction(0)
    for e in range(g.edge_count):
        k = _edge_key(g, e)
        x, y = fa.values[e]
        point[f"xp_{k}"] = max(x, Fraction(0))
        point[f"xm_{k}"] = max(-x, Fraction(0))
        point[f"yp_{k}"] = max(y, Fraction(0))
        point[f"ym_{k}"] = max(-y, Fraction(0))
        point[f"ux_{k}"] = Fraction(1 if x > 0 else 0)
        point[f"uy_{k}"] = Fraction(1 if y > 0 else 0)
        point[f"v1_{k}"] = Fraction(0 if x >= 1 else 1)
        point[f"v2_{k}"] = Fraction(0 if -x >= 1 else 1)
        point[f"v3_{k}"] = Fraction(0 if y >= 1 else 1)
        point[f"v4_{k}"] = Fraction(0 if -y >= 1 else 1)
        zmax = max(zmax, norm((x, y), CHEBYSHEV))
    point["z"] = zmax
    return point


def check_point(model: MilpModel, point: dict[str, Fraction]) -> list[str]:
    """Names of constraints the point violates (empty = feasible).

    Missing variables count as zero; binaries must take 0/1 values.
    """
    bad = []
    for var in model.binaries:
        if point.get(var, Fraction(0)) not in (Fraction(0), Fraction(1)):
            bad.append(f"binary:{var}")
    for c in model.constraints:
        total = sum((coeff * point.get(var, Fraction(0)) for var, coeff in c.terms),
                    Fraction(0))
        ok = (total <= c.rhs if c.sense == "<=" else
              total >= c.rhs if c.sense == ">=" else total == c.rhs)
        if not ok:
            bad.append(c.name)
    return bad
