"""Exact nowhere-zero flow numbers under the Manhattan and Chebyshev norms."""

__version__ = "0.1.0"

from .errors import (ContractViolation, GraphParseError, NoFlowPossible,
                     NZFlowError, SearchBudgetExceeded)
from .graphs import (EdgeColouring3, MultiGraph, cycle_basis, find_bridges,
                     format_edge_list, girth, named_graph, named_graph_names,
                     orient_even_edges, parse_edge_list, parse_graph6,
                     perfect_matchings, three_edge_colouring)
from .flows import (CHEBYSHEV, MANHATTAN, FlowAssignment, VerificationReport,
                    cheb_to_manh_2d, format_flow, manh_to_cheb_2d, norm,
                    parse_flow, verify)
from .search import (FlowNumberResult, SearchStats, decide_chnzf,
                     decide_mnzf_2d, farey_candidates, flow_number,
                     window_domain)
from .covers import (CycleCover, HadamardMatrix, OrientedCycle, SearchOutcome,
                     find_cycle_cover, find_k_ocdc, find_z2cube_flow,
                     flow_from_3cover_q, flow_from_4ocdc, flow_from_5ocdc_3d,
                     flow_from_cdc_hadamard, flow_from_cover_basis,
                     format_cover, hadamard_sylvester, orient_even_subgraph,
                     parse_cover, validate_cover)
from .pairs import (FlowPair, check_support_two_factor, chnzf_from_pair,
                    find_t_flow_pair, format_pair, nzf1d_from_pair,
                    parse_pair, validate_pair)
from .bounds import (BoundsRecord, bounds_csv, bounds_record, is_snark,
                     ratio_report, snark_lower_bound, table1_upper)
from .milp import (MilpModel, build_model, check_point, emit_lp,
                   models_equivalent, parse_lp, render_lp, witness_point)


def corpus_path() -> str:
    """Path of the bundled corpus of cubic bridgeless graphs (graph6 lines)."""
    from pathlib import Path
    return str(Path(__file__).parent / "data" / "cubic_bridgeless_le14.g6")


def load_corpus() -> list[MultiGraph]:
    """Parse the bundled corpus."""
    from pathlib import Path
    text = Path(corpus_path()).read_text()
    return [parse_graph6(ln) for ln in text.splitlines() if ln.strip()]
