"""Tournament solutions and the 3CNF gadget machinery around them."""

from tsol._backend import backend_name, native_available
from tsol.banks import banks_member, banks_set, is_top_extendable
from tsol.core import (
    Relation,
    Tournament,
    condorcet_winner,
    dominance_relation,
    dominators,
    enumerate_tournaments,
    format_tournament,
    is_transitive,
    parse_tournament,
    random_tournament,
    restrict,
    top_cycle,
    tournament_from_bits,
    tournament_to_bits,
    tournament_to_dot,
    transitive_closure,
)
from tsol.reductions import (
    Cnf,
    GadgetLayout,
    Literal,
    banks_gadget,
    cnf,
    decision_node,
    format_dimacs,
    layout_labels,
    layout_to_dot,
    lit,
    parse_dimacs,
    teq_gadget,
    validate_layout,
)
from tsol.teq import TeqResult, TeqStats, teq_exact, teq_heuristic, teq_member, teq_trace
from tsol.verification import (
    SWEEP_CHECKS,
    ChoiceSet,
    ReductionVerdict,
    SweepReport,
    check_chain_reachability,
    check_proof_trace,
    choice_set,
    consistent_choice_set,
    iter_consistent_choice_sets,
    parse_sweep_report,
    sample_chain_reachability,
    sat_brute_force,
    sweep,
    verify_banks_reduction,
    verify_teq_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "Relation",
    "Tournament",
    "Cnf",
    "Literal",
    "GadgetLayout",
    "TeqResult",
    "TeqStats",
    "ChoiceSet",
    "ReductionVerdict",
    "SweepReport",
    "SWEEP_CHECKS",
    "backend_name",
    "banks_gadget",
    "banks_member",
    "banks_set",
    "check_chain_reachability",
    "check_proof_trace",
    "choice_set",
    "cnf",
    "condorcet_winner",
    "consistent_choice_set",
    "decision_node",
    "dominance_relation",
    "dominators",
    "enumerate_tournaments",
    "format_dimacs",
    "format_tournament",
    "is_top_extendable",
    "is_transitive",
    "iter_consistent_choice_sets",
    "layout_labels",
    "layout_to_dot",
    "lit",
    "native_available",
    "parse_dimacs",
    "parse_sweep_report",
    "parse_tournament",
    "random_tournament",
    "restrict",
    "sample_chain_reachability",
    "sat_brute_force",
    "sweep",
    "teq_exact",
    "teq_gadget",
    "teq_heuristic",
    "teq_member",
    "teq_trace",
    "top_cycle",
    "tournament_from_bits",
    "tournament_to_bits",
    "tournament_to_dot",
    "transitive_closure",
    "validate_layout",
    "verify_banks_reduction",
    "verify_teq_reduction",
]
