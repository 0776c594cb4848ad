"""Conditional entropy of heat and random-walk diffusion on graphs."""

from .graphs import (
    DisconnectedGraphError,
    Graph,
    StepSet,
    bfs_distances,
    connected_components,
    diameter,
    is_connected,
    make_circulant,
    make_complete,
    make_erdos_renyi,
    make_path,
    make_watts_strogatz,
    read_edge_list,
    write_edge_list,
)
from .spectral import (
    CirculantSpectrum,
    IsolatedNodeError,
    LaplacianKind,
    SpectralDecomposition,
    check_weyl_monotonicity,
    eig_symmetric,
    laplacian,
    spectral_gap,
    spectrum_circulant,
    spectrum_complete,
    spectrum_path,
)
from .diffusion import (
    Distribution,
    HeatKernel,
    MixingEstimate,
    NumericFailure,
    default_time_grid,
    expm_oracle,
    heat_kernel,
    kernel_at,
    kernel_from_decomposition,
    log_time_grid,
    mixing_estimate,
    propagate,
    stationarity_deviation,
)
from .entropy import (
    EntropyCurve,
    EntropyGapReport,
    asymptotic_value_heat,
    asymptotic_value_rw,
    conditional_entropy,
    counterexample_entropy,
    counterexample_entropy_matrix,
    counterexample_kernel,
    entropy_curve,
    kl_divergence,
    pinsker_report,
    row_entropies,
    shannon_entropy,
)
from .closed_forms import (
    circulant_entropy,
    circulant_kernel,
    circulant_kernel_row,
    complete_heat_entropy,
    complete_rw_entropy,
    giant_component_fraction,
    lambert_w_principal,
    meanfield_er_entropy,
    meanfield_er_kernel_entries,
)

__version__ = "0.1.0"
