"""ESOP-encoded QAOA cost Hamiltonians for maximum independent set.

The package compiles the independence constraints of a graph into an
XOR-of-cubes Boolean expression, lowers it to a diagonal penalty
Hamiltonian in Pauli-Z form, simulates QAOA exactly at desk scale, and
benchmarks the encoding against the usual quadratic penalty.
"""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    Graph6Error,
    brute_force_mis,
    encode_graph6,
    is_independent,
    p4_fixture,
    parse_graph6,
    random_connected_graph,
    read_graph6_file,
)
from .esop import (
    Cube,
    CubeBudgetError,
    Esop,
    cube_and,
    esop_eval,
    format_cubes,
    minimize,
    negate_edge_cube,
    or_chain_to_esop,
    pairwise_disjoint,
    violation_sop,
)
from .hamiltonians import (
    ALTERNATING_SIGN,
    SIGN_NORMALIZED,
    DiagonalCost,
    ZPolynomial,
    cost_from_esop,
    cube_alternating_sign_zpoly,
    cube_indicator_zpoly,
    esop_cost_hamiltonian,
    esop_hamiltonian,
    format_zpoly,
    literal_zpoly,
    standard_cost_hamiltonian,
    vertex_count_zpoly,
    xor_compose,
    zpoly_to_diagonal,
)
from .simulator import (
    QaoaParams,
    apply_cost_layer,
    apply_mixer_layer,
    approximation_ratio,
    expectation,
    format_bitstring,
    initial_plus_state,
    run_qaoa,
    sample_counts,
)
from .optimizer import OptimizeConfig, OptimizeResult, local_search, optimize_angles
from .harness import (
    ExperimentConfig,
    RandomSource,
    ResultRecord,
    histogram_report,
    read_records_csv,
    run_experiment,
    summarize,
    write_records_csv,
)
