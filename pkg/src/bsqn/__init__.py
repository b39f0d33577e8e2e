"""Bell-sampling estimation toolkit for noisy graph states.

The package simulates noisy graph-state preparation, the two-copy Bell
measurement, and the classical post-processing that recovers graph-diagonal
elements, alongside single-copy direct-measurement baselines and a
dense-matrix oracle that validates every identity at small scale.
"""

from .graphs import (
    Graph,
    PauliString,
    anticommutation_bit,
    complete_graph,
    coset_members,
    graph_from_edgelist,
    graph_from_edges,
    graph_to_edgelist,
    path_graph,
    stabilizer_element,
    stabilizer_sign,
    bits_to_str,
    str_to_bits,
)
from .transforms import (
    a_from_w,
    error_metrics,
    hellinger_diagnostic,
    w_from_a,
    wht,
)
from .noise import (
    DiagonalState,
    PauliChannel,
    channel_to_diagonal,
    dephasing_mu_for_fidelity,
    exact_a,
    make_bimodal,
    make_dephasing_iid,
    make_depolarizing,
    make_explicit,
    sample_error,
    sample_errors,
)
from .tableau import (
    BellOutcome,
    Tableau,
    graph_state_tableau,
    run_bell_circuit,
    run_bell_circuit_batch,
)
from .bellsampler import (
    CHatVector,
    SyndromeHistogram,
    c_hat_full,
    c_hat_selected,
    read_shot_log,
    sample_syndrome_words_fast,
    sample_syndromes_circuit,
    sample_syndromes_fast,
    syndrome_from_outcome,
    syndromes_from_betas,
    write_shot_log,
)
from .estimators import (
    MeasurementPlan,
    MeasurementSetting,
    RandomElementEstimate,
    SignRule,
    bsqn_full,
    bsqn_random_element,
    dge_plan,
    dge_simulate,
)
from .harness import (
    ExperimentConfig,
    ResultRow,
    load_config,
    oracle_check,
    preset_path,
    run_experiment,
    run_to_files,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "PauliString",
    "anticommutation_bit",
    "complete_graph",
    "coset_members",
    "graph_from_edgelist",
    "graph_from_edges",
    "graph_to_edgelist",
    "path_graph",
    "stabilizer_element",
    "stabilizer_sign",
    "bits_to_str",
    "str_to_bits",
    "a_from_w",
    "error_metrics",
    "hellinger_diagnostic",
    "w_from_a",
    "wht",
    "DiagonalState",
    "PauliChannel",
    "channel_to_diagonal",
    "dephasing_mu_for_fidelity",
    "exact_a",
    "make_bimodal",
    "make_dephasing_iid",
    "make_depolarizing",
    "make_explicit",
    "sample_error",
    "sample_errors",
    "BellOutcome",
    "Tableau",
    "graph_state_tableau",
    "run_bell_circuit",
    "run_bell_circuit_batch",
    "CHatVector",
    "SyndromeHistogram",
    "c_hat_full",
    "c_hat_selected",
    "read_shot_log",
    "sample_syndrome_words_fast",
    "sample_syndromes_circuit",
    "sample_syndromes_fast",
    "syndrome_from_outcome",
    "syndromes_from_betas",
    "write_shot_log",
    "MeasurementPlan",
    "MeasurementSetting",
    "RandomElementEstimate",
    "SignRule",
    "bsqn_full",
    "bsqn_random_element",
    "dge_plan",
    "dge_simulate",
    "ExperimentConfig",
    "ResultRow",
    "load_config",
    "oracle_check",
    "preset_path",
    "run_experiment",
    "run_to_files",
]
